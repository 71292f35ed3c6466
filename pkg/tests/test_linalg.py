import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import NoConvergence, NotHermitian, ShapeMismatch
from numeric import (
    cluster_spectrum,
    frobenius,
    hermitian_eig,
    hs_inner,
    kron,
    nullspace,
    orthonormalize,
    partial_trace,
    purify,
    random_density,
    random_hermitian,
    seeded_rng,
)

SEEDS = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=25, deadline=None)
@given(seed=SEEDS, n=st.integers(min_value=1, max_value=6))
def test_hermitian_eig_reconstructs(seed, n):
    M = random_hermitian(seeded_rng(seed), n)
    decomposition = hermitian_eig(M)
    V = decomposition.eigenvectors

    assert decomposition.residual(M) <= 1e-10 * max(1.0, frobenius(M))
    assert frobenius(V.conj().T @ V - np.eye(n)) <= 1e-10
    assert np.all(np.diff(decomposition.eigenvalues) >= 0)


def test_hermitian_eig_degenerate_spectrum():
    decomposition = hermitian_eig(np.diag([2.0, 1.0, 2.0]))
    assert np.allclose(decomposition.eigenvalues, [1.0, 2.0, 2.0])


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_hermitian_eig_rejects_rectangular():
    with pytest.raises(ShapeMismatch):
        hermitian_eig(np.zeros((2, 3)))


def test_hermitian_eig_gives_up_after_sweep_budget(rng):
    with pytest.raises(NoConvergence):
        hermitian_eig(random_hermitian(rng, 4), max_sweeps=0)


def test_nullspace_of_rank_one_map():
    L = np.array([[1.0, 1.0, 0.0]])
    kernel = nullspace(L)
    assert len(kernel) == 2
    for v in kernel:
        assert frobenius(L @ v) <= 1e-12


def test_nullspace_of_zero_map_is_everything():
    assert len(nullspace(np.zeros((2, 3)))) == 3


def commutation_map(*operators):
    """Stacked X -> [A, X] on row-major vectorized n x n operators."""
    n = operators[0].shape[0]
    return np.vstack([np.kron(A, np.eye(n)) - np.kron(np.eye(n), A.T) for A in operators])


@pytest.mark.parametrize(
    "operators, dimension",
    [
        ([np.diag([1.0, 2.0])], 2),
        ([np.eye(2)], 4),
        ([np.array([[0, 1], [1, 0]]), np.diag([1.0, -1.0])], 1),
    ],
)
def test_nullspace_of_commutation_maps(operators, dimension):
    L = commutation_map(*[np.asarray(A, dtype=np.complex128) for A in operators])
    kernel = nullspace(L, tol=1e-9)
    assert len(kernel) == dimension
    for v in kernel:
        assert frobenius(L @ v) <= 1e-9 * max(frobenius(L), 1.0)
    gram = np.array([[np.vdot(a, b) for b in kernel] for a in kernel])
    assert np.allclose(gram, np.eye(dimension))


def test_nullspace_excludes_small_but_nonzero_directions():
    L = np.diag([1.0, 1e-6])
    assert nullspace(L, tol=1e-9) == []
    kernel = nullspace(np.diag([1.0, 1e-6, 0.0]), tol=1e-9)
    assert len(kernel) == 1
    assert frobenius(np.diag([1.0, 1e-6, 0.0]) @ kernel[0]) <= 1e-9


@settings(max_examples=20, deadline=None)
@given(seed=SEEDS, n=st.integers(min_value=2, max_value=5), rank=st.integers(min_value=1, max_value=4))
def test_nullspace_vectors_are_annihilated(seed, n, rank):
    rng = seeded_rng(seed)
    L = random_hermitian(rng, n)[: min(rank, n - 1)]
    kernel = nullspace(L)
    assert len(kernel) == n - L.shape[0]
    for v in kernel:
        assert frobenius(L @ v) <= 1e-9 * frobenius(L)


def test_hs_inner_examples(pauli, rng):
    assert hs_inner(np.eye(2), np.eye(2)) == pytest.approx(2.0)
    assert hs_inner(pauli["x"], pauli["z"]) == pytest.approx(0.0)
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert abs(hs_inner(A, A) - np.sum(np.abs(A) ** 2)) <= 1e-12
    B = random_hermitian(rng, 3)
    assert hs_inner(A, B) == pytest.approx(np.conj(hs_inner(B, A)))
    with pytest.raises(ShapeMismatch):
        hs_inner(np.eye(2), np.eye(3))


def test_kron_mixed_product_and_associativity(rng):
    A, C = random_hermitian(rng, 2), random_hermitian(rng, 2)
    B, D = random_hermitian(rng, 3), random_hermitian(rng, 3)
    assert frobenius(kron(A, B) @ kron(C, D) - kron(A @ C, B @ D)) <= 1e-12
    assert frobenius(kron(kron(A, B), C) - kron(A, kron(B, C))) <= 1e-12
    assert kron(np.eye(2), np.eye(3)).shape == (6, 6)
    assert np.array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))


def test_orthonormalize_drops_dependent_candidates():
    a = np.eye(2)
    accepted = orthonormalize([a, 2 * a, np.diag([1.0, 0.0])])
    assert len(accepted) == 2


def test_cluster_spectrum_splits_on_gaps():
    assert cluster_spectrum([0.0, 1e-12, 1.0, 1.0], rel_gap=1e-9) == [[0, 1], [2, 3]]
    assert cluster_spectrum([3.0, 3.0], rel_gap=1e-9) == [[0, 1]]
    assert cluster_spectrum([], rel_gap=1e-9) == []


@settings(max_examples=20, deadline=None)
@given(seed=SEEDS, n=st.integers(min_value=1, max_value=4))
def test_purification_reproduces_expectations(seed, n):
    rng = seeded_rng(seed)
    rho = random_density(rng, n, rank=1 + seed % n)
    X = random_hermitian(rng, n)
    xi = purify(rho)

    lhs = np.vdot(xi, kron(X, np.eye(n)) @ xi)
    assert abs(lhs - np.trace(rho @ X)) <= 1e-10


def test_partial_trace_of_product():
    a = np.diag([0.25, 0.75]).astype(np.complex128)
    b = np.diag([0.5, 0.3, 0.2]).astype(np.complex128)
    rho = kron(a, b)
    assert np.allclose(partial_trace(rho, (2, 3), keep=0), a)
    assert np.allclose(partial_trace(rho, (2, 3), keep=1), b)
