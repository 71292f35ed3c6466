from itertools import combinations

import numpy as np
import pytest

from algebra import direct_sum, full_matrix_algebra, generate, span_equal
from errors import DimensionMismatch, NotFactorState, NotSubcentral, UnknownLabel
from numeric import random_hermitian
from sectors import (
    are_disjoint,
    are_quasi_equivalent,
    center,
    central_measure,
    coarse_grain,
    commutant,
    indicator,
    instrument_functional,
    is_factor_state,
    kappa_embed,
    kappa_pairing,
    relative_center,
    scalar_subalgebra,
    sector_barycenter,
    sector_probability,
    subcentral_measure,
)
from states import State, gns, maximally_mixed, state_from_vector


def test_commutant_of_full_algebra_is_scalars():
    assert commutant(full_matrix_algebra(3)).dim == 1


def test_commutant_of_diagonal_algebra_is_itself():
    alg = direct_sum([1, 1, 1])
    assert span_equal(commutant(alg), alg) <= 1e-9


def test_double_commutant(rng):
    alg = generate([random_hermitian(rng, 3)], 3)
    assert span_equal(commutant(commutant(alg)), alg) <= 1e-8


def test_relative_center_of_block_algebra():
    z = relative_center(direct_sum([2, 3]))
    assert z.dim == 2
    assert z.is_commutative()


def test_center_of_two_block_state(two_block):
    _, _, rep = two_block
    decomposition = center(rep)
    assert decomposition.dim == 2
    assert len(decomposition.minimal_projections) == 2
    assert decomposition.invariant_residual() <= 1e-9
    assert all(label.startswith("s-") for label in decomposition.sector_labels)
    assert decomposition.sector_labels == center(rep).sector_labels


def test_central_measure_weights_and_barycenter(two_block):
    _, omega, rep = two_block
    measure = central_measure(rep, omega)
    assert measure.weights == pytest.approx((0.25, 0.75), abs=1e-10)
    assert measure.barycenter_residual(omega) <= 1e-9
    assert measure.suppressed == ()
    for component in measure.components:
        assert np.trace(component.state.density).real == pytest.approx(1.0)


def test_components_are_factor_states_and_disjoint(two_block):
    alg, omega, rep = two_block
    first, second = central_measure(rep, omega).components
    assert is_factor_state(alg, first.state)
    assert is_factor_state(alg, second.state)
    assert not is_factor_state(alg, omega)
    assert are_disjoint(alg, first.state, second.state)
    assert not are_quasi_equivalent(alg, first.state, second.state)


def test_states_in_one_block_are_quasi_equivalent():
    alg = direct_sum([2, 3])
    e0 = state_from_vector([1, 0, 0, 0, 0])
    e1 = state_from_vector([0, 1, 0, 0, 0])
    assert are_quasi_equivalent(alg, e0, e1)


def test_quasi_equivalence_needs_factor_states(two_block):
    alg, omega, _ = two_block
    with pytest.raises(NotFactorState):
        are_quasi_equivalent(alg, omega, state_from_vector([1, 0, 0, 0, 0]))


def test_pure_state_has_one_sector():
    alg = direct_sum([2, 3])
    pure = state_from_vector([0, 0, 1, 0, 0])
    rep = gns(alg, pure)
    measure = central_measure(rep, pure)
    assert rep.gns_dim == 3
    assert measure.weights == pytest.approx((1.0,))


def test_scalar_subalgebra_gives_trivial_measure(two_block):
    _, omega, rep = two_block
    measure = subcentral_measure(rep, omega, scalar_subalgebra(rep))
    (component,) = measure.components
    assert component.weight == pytest.approx(1.0)
    assert np.allclose(component.state.density, omega.density)


def test_non_central_subalgebra_is_rejected(two_block):
    _, omega, rep = two_block
    hop = np.zeros((5, 5))
    hop[0, 1] = hop[1, 0] = 1.0
    sub = generate([rep.transfer(hop)], rep.gns_dim)
    with pytest.raises(NotSubcentral):
        subcentral_measure(rep, omega, sub)
    with pytest.raises(DimensionMismatch):
        subcentral_measure(rep, omega, generate([], 4))


def test_sector_probability_and_indicator(two_block):
    _, omega, rep = two_block
    measure = central_measure(rep, omega)
    small, large = measure.labels
    assert sector_probability(measure, [small]) == pytest.approx(0.25)
    assert sector_probability(measure, measure.labels) == pytest.approx(1.0)
    assert indicator(measure, [large]) == {small: 0.0, large: 1.0}
    with pytest.raises(UnknownLabel):
        sector_probability(measure, ["s-00000000"])


def test_kappa_of_constant_one_is_identity(two_block):
    _, omega, rep = two_block
    measure = central_measure(rep, omega)
    ones = {label: 1.0 for label in measure.all_labels}
    assert np.allclose(kappa_embed(measure, ones), np.eye(rep.gns_dim))


def test_instrument_matches_kappa_pairing(two_block, rng):
    alg, omega, rep = two_block
    measure = central_measure(rep, omega)
    for _ in range(10):
        f = {label: complex(*rng.normal(size=2)) for label in measure.all_labels}
        X = alg.element(rng.normal(size=alg.dim) + 1j * rng.normal(size=alg.dim))
        assert abs(instrument_functional(measure, f, X) - kappa_pairing(measure, f, X)) <= 1e-9


def test_instrument_needs_function_on_every_sector(two_block):
    alg, omega, rep = two_block
    measure = central_measure(rep, omega)
    with pytest.raises(UnknownLabel):
        instrument_functional(measure, {measure.labels[0]: 1.0}, np.eye(5))


def test_sector_barycenter_of_one_sector(two_block):
    _, omega, rep = two_block
    measure = central_measure(rep, omega)
    small = measure.labels[0]
    barycenter = sector_barycenter(measure, [small])
    assert np.allclose(barycenter.density, measure.component(small).state.density)
    everything = sector_barycenter(measure, measure.labels)
    assert np.allclose(everything.density, omega.density)


def test_coarse_grain_to_scalars_merges_components(two_block):
    _, omega, rep = two_block
    measure = central_measure(rep, omega)
    coarse = coarse_grain(measure, scalar_subalgebra(rep))
    (component,) = coarse.components
    assert component.weight == pytest.approx(1.0)
    assert np.allclose(component.state.density, omega.density)


def test_zero_weight_sectors_are_suppressed():
    alg = direct_sum([1, 1])
    omega = maximally_mixed(2)
    rep = gns(alg, omega)
    phi = State(np.diag([1.0, 0.0]).astype(np.complex128))
    measure = central_measure(rep, phi)
    assert len(measure.components) == 1
    assert len(measure.suppressed) == 1
    assert measure.weights == pytest.approx((1.0,))


@pytest.fixture
def three_block():
    """C (+) M2 (+) C with sector weights 0.2, 0.3 and 0.5."""
    alg = direct_sum([1, 2, 1])
    omega = State(np.diag([0.2, 0.15, 0.15, 0.5]).astype(np.complex128))
    rep = gns(alg, omega)
    return alg, omega, rep, central_measure(rep, omega)


def test_barycenters_of_complementary_sector_sets_are_disjoint(three_block):
    alg, _, _, measure = three_block
    labels = measure.labels
    assert len(labels) == 3
    for r in (1, 2):
        for chosen in combinations(labels, r):
            rest = [label for label in labels if label not in chosen]
            assert are_disjoint(alg, sector_barycenter(measure, chosen), sector_barycenter(measure, rest))


def test_coarse_grain_matches_direct_decomposition(three_block):
    _, omega, rep, measure = three_block
    first, second, third = measure.labels
    merged = measure.projections[first] + measure.projections[second]
    coarser = generate([merged], rep.gns_dim)
    assert coarser.dim == 2

    coarse = coarse_grain(measure, coarser)
    direct = subcentral_measure(rep, omega, coarser)
    assert coarse.labels == direct.labels
    for label in coarse.labels:
        assert coarse.component(label).weight == pytest.approx(direct.component(label).weight, abs=1e-10)
        assert np.allclose(coarse.component(label).state.density, direct.component(label).state.density, atol=1e-9)
    merged_weight = measure.component(first).weight + measure.component(second).weight
    assert sorted(coarse.weights) == pytest.approx(sorted([merged_weight, measure.component(third).weight]))


def test_coarse_grain_rejects_algebra_outside_the_finer_one(two_block):
    _, omega, rep = two_block
    fine = central_measure(rep, omega)
    trivial = coarse_grain(fine, scalar_subalgebra(rep))
    with pytest.raises(NotSubcentral):
        coarse_grain(trivial, center(rep).center)


def test_factor_states_are_either_disjoint_or_quasi_equivalent():
    alg = direct_sum([2, 3])
    first_block = [
        state_from_vector([1, 0, 0, 0, 0]),
        state_from_vector(np.array([1, 1, 0, 0, 0]) / np.sqrt(2)),
        State(np.diag([0.5, 0.5, 0, 0, 0]).astype(np.complex128)),
    ]
    second_block = [
        state_from_vector([0, 0, 1, 0, 0]),
        State(np.diag([0, 0, 0.2, 0.3, 0.5]).astype(np.complex128)),
    ]
    factors = [(0, s) for s in first_block] + [(1, s) for s in second_block]
    for block_a, a in factors:
        for block_b, b in factors:
            disjoint = are_disjoint(alg, a, b)
            assert disjoint != are_quasi_equivalent(alg, a, b)
            assert disjoint == (block_a != block_b)


def test_vector_states_on_full_matrix_algebra_are_quasi_equivalent():
    alg = full_matrix_algebra(2)
    assert are_quasi_equivalent(alg, state_from_vector([1, 0]), state_from_vector([0, 1]))
