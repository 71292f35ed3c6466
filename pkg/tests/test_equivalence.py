from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equivalence import (
    StateFamily,
    align_outcomes,
    born_rule,
    equivalence_relation_check,
    joint_distribution,
    object_pvm_on_composite,
    pointer_readout_pvm,
    product_family,
    spectrally_equivalent,
    vector_criterion_residual,
    verify_mppc,
)
from errors import DimensionMismatch, LabelMismatch, MppcFailed, NotProductFamily
from measurement import PVM, corrupted_measurement, ideal_measurement, pvm_from_observable
from numeric import random_density, random_hermitian, random_unitary, seeded_rng
from states import State, state_from_vector


def test_align_outcomes_adds_unmatched_cells(pauli):
    left = pvm_from_observable(pauli["z"])
    right = pvm_from_observable(np.diag([1.0, 2.0]))
    cells = align_outcomes(left, right)
    assert [c.value for c in cells] == pytest.approx([-1.0, 1.0, 2.0])
    assert (cells[0].left, cells[0].right) == (0, None)
    assert (cells[2].left, cells[2].right) == (None, 1)


def test_align_outcomes_rejects_ambiguous_labels():
    left = PVM(outcomes=(0.0,), projections=(np.eye(2),))
    right = PVM(outcomes=(0.0, 5e-8), projections=(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
    with pytest.raises(LabelMismatch):
        align_outcomes(left, right)


def test_same_observable_is_spectrally_equivalent(pauli, plus, up, rng):
    family = StateFamily((plus, up, State(random_density(rng, 2))))
    literal = np.array([[1, 0], [0, -1]])
    check = spectrally_equivalent(pvm_from_observable(pauli["z"]), pvm_from_observable(literal), family)
    assert check.equivalent
    assert check.violation <= 1e-12


def test_incompatible_observables_are_not_equivalent(pauli, plus):
    check = spectrally_equivalent(pvm_from_observable(pauli["z"]), pvm_from_observable(pauli["x"]), StateFamily((plus,)))
    assert not check.equivalent
    assert check.violation == pytest.approx(0.5)
    assert check.member == 0


def test_equivalence_depends_on_the_family(pauli, up):
    # Z and Z + 2|1><1| agree on every state supported on |0>
    left = pvm_from_observable(pauli["z"])
    right = PVM(outcomes=(-1.0, 1.0), projections=(np.zeros((2, 2)), np.eye(2)))
    assert spectrally_equivalent(left, right, StateFamily((up,))).equivalent
    assert not spectrally_equivalent(left, right, StateFamily((state_from_vector([0, 1]),))).equivalent


def test_family_dimension_is_checked(pauli):
    with pytest.raises(DimensionMismatch):
        spectrally_equivalent(
            pvm_from_observable(pauli["z"]), pvm_from_observable(pauli["z"]), StateFamily((State(np.eye(3) / 3),))
        )


def test_joint_distribution_of_compatible_pvms(pauli, plus):
    E = pvm_from_observable(pauli["z"])
    joint = joint_distribution(E, E, plus)
    assert joint.total == pytest.approx(1.0)
    assert joint.diagonal_support
    assert np.allclose(np.diag(joint.masses), [0.5, 0.5])


def test_joint_distribution_of_incompatible_pvms(pauli, plus):
    joint = joint_distribution(pvm_from_observable(pauli["z"]), pvm_from_observable(pauli["x"]), plus)
    assert joint.total == pytest.approx(1.0)
    assert not joint.diagonal_support
    assert joint.off_diagonal_mass == pytest.approx(0.5)


def test_vector_criterion_vanishes_for_equal_pvms(pauli, rng):
    E = pvm_from_observable(pauli["y"])
    assert vector_criterion_residual(E, E, State(random_density(rng, 2))) <= 1e-12


def test_equivalence_relation_on_overlapping_pvms(rng):
    Q = random_unitary(rng, 3)

    def rotated(diagonals):
        return PVM(
            outcomes=(0.0, 1.0),
            projections=tuple(Q @ np.diag(d).astype(np.complex128) @ Q.conj().T for d in diagonals),
        )

    pvms = [rotated([[1, 0, 0], [0, 1, 1]]), rotated([[1, 1, 0], [0, 0, 1]]), rotated([[1, 0, 1], [0, 1, 0]])]
    v = Q[:, 0]
    report = equivalence_relation_check(pvms, StateFamily((State(np.outer(v, v.conj())),)))
    assert report.passed
    assert all(all(row) for row in report.related)


def test_mppc_holds_for_ideal_process(rng):
    pvm = pvm_from_observable(random_hermitian(rng, 3))
    process = ideal_measurement(pvm)
    family = product_family(process, [State(random_density(rng, 3)) for _ in range(3)])
    check = verify_mppc(process, family)
    assert check.equivalent
    readout, obj = pointer_readout_pvm(process), object_pvm_on_composite(process)
    for member in family:
        assert joint_distribution(readout, obj, member).diagonal_support


def test_mppc_fails_for_corrupted_process(pauli, plus):
    process = corrupted_measurement(pvm_from_observable(pauli["z"]), (0, 1))
    check = verify_mppc(process, product_family(process, [plus]))
    assert not check.equivalent
    assert check.violation == pytest.approx(0.5)


def test_mppc_needs_product_states(pauli):
    process = ideal_measurement(pvm_from_observable(pauli["z"]))
    bell = state_from_vector(np.array([1, 0, 0, 1]) / np.sqrt(2))
    with pytest.raises(NotProductFamily):
        verify_mppc(process, StateFamily((bell,)))


def test_born_rule_for_qubit(pauli, plus):
    result = born_rule(ideal_measurement(pvm_from_observable(pauli["z"])), plus, [1.0])
    assert result.passed
    assert result.lhs == pytest.approx(0.5)
    assert result.rhs == pytest.approx(0.5)


def test_born_rule_refuses_corrupted_process(pauli, plus):
    process = corrupted_measurement(pvm_from_observable(pauli["z"]), (0, 1))
    with pytest.raises(MppcFailed):
        born_rule(process, plus, [1.0])


@pytest.mark.parametrize("copies", [1, 3])
def test_equivalence_relation_on_copies_of_one_pvm(pauli, plus, rng, copies):
    E = pvm_from_observable(pauli["x"])
    report = equivalence_relation_check([E] * copies, StateFamily((plus, State(random_density(rng, 2)))))
    assert report.passed
    assert report.reflexive and report.symmetric and report.transitive
    assert report.related == tuple((True,) * copies for _ in range(copies))
    assert report.counterexample is None


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), n=st.integers(min_value=2, max_value=4))
def test_born_rule_holds_on_every_outcome_subset(seed, n):
    rng = seeded_rng(seed)
    process = ideal_measurement(pvm_from_observable(random_hermitian(rng, n)))
    phi = State(random_density(rng, n))
    for size in range(len(process.outcomes) + 1):
        for outcomes in combinations(process.outcomes, size):
            result = born_rule(process, phi, outcomes)
            assert result.passed
            assert result.residual <= 1e-10
            assert result.rhs == pytest.approx(np.trace(phi.density @ process.pvm.projection(outcomes)).real, abs=1e-12)


@pytest.mark.parametrize("theta", [0.3, 0.7, 1.1])
def test_born_rule_is_sin_squared(theta):
    process = ideal_measurement(pvm_from_observable(np.diag([0.0, 1.0])))
    phi = state_from_vector([np.cos(theta), np.sin(theta)])
    result = born_rule(process, phi, [1.0])
    assert result.lhs == pytest.approx(np.sin(theta) ** 2, abs=1e-10)
    assert result.passed
