"""States as density operators: omega(X) = trace(density X)."""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

import toolkit_config
from algebra import StarAlgebra
from errors import DimensionMismatch, NotAState, NotNormalized
from numeric import CMatrix, adjoint, as_cmatrix, frobenius, hermitian_eig

logger = logging.getLogger(__name__)

STATE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class State:
    density: CMatrix

    def __post_init__(self):
        rho = as_cmatrix(self.density)
        n = rho.shape[0]
        if rho.shape != (n, n):
            raise NotAState(f"density must be square, got {rho.shape}")
        scale = max(1.0, frobenius(rho))
        if frobenius(rho - adjoint(rho)) > STATE_TOL * scale:
            raise NotAState("density is not Hermitian")
        rho = 0.5 * (rho + adjoint(rho))
        if abs(np.trace(rho).real - 1.0) > STATE_TOL * max(1, n):
            raise NotAState(f"density has trace {np.trace(rho).real!r}, expected 1")
        try:
            np.linalg.cholesky(rho + STATE_TOL * scale * np.eye(n))
        except np.linalg.LinAlgError:
            raise NotAState("density is not positive semidefinite") from None
        object.__setattr__(self, "density", rho)

    @property
    def ambient_dim(self) -> int:
        return self.density.shape[0]

    def __call__(self, X) -> complex:
        return expectation(self, X)


def expectation(omega: State, X) -> complex:
    X = as_cmatrix(X)
    if X.shape != omega.density.shape:
        raise DimensionMismatch(f"operator shape {X.shape} vs state dimension {omega.ambient_dim}")
    return complex(np.einsum("ij,ji->", omega.density, X))


def state_from_vector(v) -> State:
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > STATE_TOL:
        raise NotNormalized(f"vector has norm {norm!r}, expected 1")
    return State(np.outer(v, v.conj()))


def state_from_density(rho) -> State:
    return State(as_cmatrix(rho))


def maximally_mixed(n: int) -> State:
    return State(np.eye(n, dtype=np.complex128) / n)


def mixture(weights: Sequence[float], states: Sequence[State]) -> State:
    weights = np.asarray(weights, dtype=float)
    if len(weights) != len(states) or not len(states):
        raise NotAState("mixture needs one weight per state")
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > STATE_TOL * len(weights):
        raise NotAState(f"mixture weights {weights.tolist()} are not a probability vector")
    dims = {s.ambient_dim for s in states}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixture of states on different dimensions {sorted(dims)}")
    return State(sum(w * s.density for w, s in zip(weights, states)))


def restrict(omega: State, alg: StarAlgebra) -> np.ndarray:
    """Values omega(b_i) on the algebra basis."""
    if omega.ambient_dim != alg.ambient_dim:
        raise DimensionMismatch(f"state on {omega.ambient_dim} dims, algebra on {alg.ambient_dim}")
    return np.einsum("ij,kji->k", omega.density, alg.stacked)


def state_from_functional(alg: StarAlgebra, values) -> State:
    """The density inside the algebra whose pairing with b_i gives values[i].

    With an orthonormal basis this is sum_i values[i] b_i*; it is positive
    exactly when the functional is positive on the algebra.
    """
    values = np.asarray(values, dtype=np.complex128)
    density = np.tensordot(values, np.conjugate(np.transpose(alg.stacked, (0, 2, 1))), axes=1)
    return State(density)


def gram_matrix(alg: StarAlgebra, rho: CMatrix) -> np.ndarray:
    """G[i, j] = trace(rho b_i* b_j)."""
    B = alg.stacked
    G = np.einsum("xy,izy,jzx->ij", rho, B.conj(), B, optimize=True)
    return 0.5 * (G + G.conj().T)


def is_state(alg: StarAlgebra, omega, tol: float = toolkit_config.rank_tol) -> bool:
    """True iff the Gram matrix omega(b_i* b_j) is PSD and omega(1) = 1.

    ``omega`` may be a State or a bare (possibly non-positive) density.
    """
    rho = omega.density if isinstance(omega, State) else as_cmatrix(omega)
    if rho.shape != (alg.ambient_dim, alg.ambient_dim):
        raise DimensionMismatch(f"functional on {rho.shape[0]} dims, algebra on {alg.ambient_dim}")
    if abs(np.trace(rho) - 1.0) > 1e-10:
        return False
    G = gram_matrix(alg, rho)
    smallest = hermitian_eig(G, hermitian_tol=1e-9).eigenvalues[0]
    logger.debug("is_state: smallest Gram eigenvalue %.3e", smallest)
    return bool(smallest >= -tol)
