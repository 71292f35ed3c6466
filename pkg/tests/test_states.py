import numpy as np
import pytest

from algebra import direct_sum, full_matrix_algebra, generate
from errors import DimensionMismatch, NotAState, NotInAlgebra, NotNormalized, NotPiNormal
from numeric import random_density
from states import (
    State,
    expectation,
    gns,
    is_state,
    maximally_mixed,
    mixture,
    normal_lift,
    restrict,
    state_from_functional,
    state_from_vector,
)


def test_state_rejects_bad_densities():
    with pytest.raises(NotAState):
        State(np.diag([0.5, 0.6]))
    with pytest.raises(NotAState):
        State(np.diag([1.5, -0.5]))
    with pytest.raises(NotAState):
        State(np.array([[0.5, 0.5], [0.0, 0.5]]))


def test_vector_state_needs_unit_norm():
    with pytest.raises(NotNormalized):
        state_from_vector([1, 1])


def test_expectation_of_pauli(plus, pauli):
    assert expectation(plus, pauli["x"]) == pytest.approx(1.0)
    assert plus(pauli["z"]) == pytest.approx(0.0)


def test_mixture_weights_are_checked(up, plus):
    mixed = mixture([0.25, 0.75], [up, plus])
    assert np.trace(mixed.density).real == pytest.approx(1.0)
    with pytest.raises(NotAState):
        mixture([0.5, 0.6], [up, plus])


def test_is_state_detects_negative_functional():
    alg = full_matrix_algebra(2)
    assert is_state(alg, maximally_mixed(2))
    assert not is_state(alg, np.diag([1.5, -0.5]))


def test_state_from_functional_inverts_restrict(rng):
    alg = full_matrix_algebra(3)
    omega = State(random_density(rng, 3))
    rebuilt = state_from_functional(alg, restrict(omega, alg))
    assert np.allclose(rebuilt.density, omega.density)


def test_gns_of_pure_state_on_m2(up):
    rep = gns(full_matrix_algebra(2), up)
    assert rep.gns_dim == 2
    assert rep.reproduction_residual() <= 1e-10
    assert rep.morphism_residual() <= 1e-9
    assert rep.cyclic_rank() == 2


def test_gns_of_faithful_state_has_algebra_dimension(two_block):
    alg, _, rep = two_block
    assert rep.gns_dim == alg.dim == 13
    assert rep.reproduction_residual() <= 1e-10


def test_transfer_rejects_operators_outside_algebra(pauli):
    alg = generate([pauli["z"]], 2)
    rep = gns(alg, maximally_mixed(2))
    assert np.allclose(rep.transfer(pauli["z"]) @ rep.transfer(pauli["z"]), np.eye(rep.gns_dim))
    with pytest.raises(NotInAlgebra):
        rep.transfer(pauli["x"])


def test_normal_lift_reproduces_state(two_block, rng):
    alg, _, rep = two_block
    phi = State(random_density(rng, 5))
    lifted = normal_lift(rep, phi)
    for b in alg.basis:
        assert abs(np.trace(lifted.density @ rep.transfer(b)) - phi(b)) <= 1e-9


def test_normal_lift_of_defining_state_is_vector_state(two_block):
    _, omega, rep = two_block
    lifted = normal_lift(rep, omega)
    assert np.allclose(lifted.density, rep.vector_state().density)


def test_normal_lift_rejects_state_outside_folium(up):
    alg = direct_sum([1, 1])
    rep = gns(alg, up)
    assert rep.gns_dim == 1
    with pytest.raises(NotPiNormal):
        normal_lift(rep, state_from_vector([0, 1]))


@pytest.mark.parametrize("pure", [True, False])
def test_gns_is_unique_up_to_a_unitary(pauli, rng, pure):
    omega = state_from_vector([1, 0]) if pure else State(random_density(rng, 2))
    first = gns(full_matrix_algebra(2), omega)
    second = gns(generate([pauli["x"], pauli["z"]], 2), omega)
    assert first.gns_dim == second.gns_dim
    U, residual = first.intertwiner(second)
    assert residual <= 1e-9
    assert np.allclose(U.conj().T @ U, np.eye(first.gns_dim), atol=1e-9)


def test_intertwiner_needs_equal_gns_dimensions(up):
    with pytest.raises(DimensionMismatch):
        gns(full_matrix_algebra(2), up).intertwiner(gns(full_matrix_algebra(2), maximally_mixed(2)))
