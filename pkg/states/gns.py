"""GNS construction (pi_omega, H_omega, Omega_omega) by quotienting the
algebra by the null space of the Gram form, plus lifts of pi-normal states."""
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

import toolkit_config
from algebra import StarAlgebra, contains, from_span
from errors import DimensionMismatch, NotAState, NotInAlgebra, NotPiNormal
from numeric import CMatrix, adjoint, frobenius, hermitian_eig
from states.state import State, gram_matrix, is_state, restrict

logger = logging.getLogger(__name__)

LIFT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GNSRepresentation:
    algebra: StarAlgebra
    state: State
    rep_matrices: tuple[CMatrix, ...]
    cyclic_vector: np.ndarray
    isometry: np.ndarray  # W: algebra coordinates -> H_omega

    @property
    def source_dim(self) -> int:
        return self.algebra.dim

    @property
    def gns_dim(self) -> int:
        return self.cyclic_vector.size

    @cached_property
    def stacked(self) -> np.ndarray:
        return np.stack(self.rep_matrices)

    @cached_property
    def image_algebra(self) -> StarAlgebra:
        """pi_omega(A) as a *-algebra on H_omega (equal to its double commutant)."""
        return from_span(self.rep_matrices, self.gns_dim, label=f"pi({self.algebra.label})")

    def transfer(self, X, tol: float = toolkit_config.rank_tol) -> CMatrix:
        """pi_omega(X) for an ambient operator X in the algebra."""
        membership = contains(self.algebra, X, tol=tol)
        if not membership:
            raise NotInAlgebra(f"operator is not in the algebra (residual {membership.residual:.3e})")
        return np.tensordot(self.algebra.coordinates(X), self.stacked, axes=1)

    def vector_state(self) -> State:
        return State(np.outer(self.cyclic_vector, self.cyclic_vector.conj()))

    def reproduction_residual(self) -> float:
        omega = self.cyclic_vector
        values = np.einsum("a,kab,b->k", omega.conj(), self.stacked, omega)
        return float(np.max(np.abs(values - restrict(self.state, self.algebra))))

    def morphism_residual(self) -> float:
        P = self.stacked
        C = self.algebra.structure_constants
        products = np.einsum("iab,jbc->ijac", P, P)
        expected = np.einsum("ijk,kac->ijac", C, P)
        worst = float(np.max(np.abs(products - expected)))
        adjoints = np.conjugate(np.transpose(P, (0, 2, 1)))
        expected_adj = np.einsum("ik,kac->iac", self.algebra.adjoint_constants, P)
        return max(worst, float(np.max(np.abs(adjoints - expected_adj))))

    def intertwiner(self, other: "GNSRepresentation") -> tuple[CMatrix, float]:
        """Unitary U with U pi(a) Omega = pi'(a) Omega' between two GNS
        representations of the same state on the same span.

        Returns U and the worst of its unitarity, cyclic-vector and
        representation residuals.
        """
        if self.algebra.ambient_dim != other.algebra.ambient_dim or self.gns_dim != other.gns_dim:
            raise DimensionMismatch(
                f"GNS spaces of dimension {self.gns_dim} and {other.gns_dim} cannot be intertwined"
            )
        # columns: coordinates of this basis in the other algebra
        C = np.stack([other.algebra.coordinates(b) for b in self.algebra.basis], axis=1)
        U = other.isometry @ C @ np.linalg.pinv(self.isometry)
        images = np.einsum("lk,lab->kab", C, other.stacked)
        moved = np.einsum("ab,kbc,dc->kad", U, self.stacked, U.conj())
        residual = max(
            frobenius(adjoint(U) @ U - np.eye(self.gns_dim)),
            frobenius(U @ self.cyclic_vector - other.cyclic_vector),
            float(np.max(np.abs(moved - images))),
        )
        return U, residual

    def cyclic_rank(self, tol: float = toolkit_config.rank_tol) -> int:
        vectors = self.stacked @ self.cyclic_vector  # rows pi(b_k) Omega
        gram = vectors.conj() @ vectors.T
        eigenvalues = hermitian_eig(0.5 * (gram + adjoint(gram)), hermitian_tol=1e-9).eigenvalues
        return int(np.sum(eigenvalues > tol * max(eigenvalues[-1], 1e-300)))


def gns(alg: StarAlgebra, omega: State, tol: float = toolkit_config.rank_tol) -> GNSRepresentation:
    if not is_state(alg, omega, tol=tol):
        raise NotAState("functional is not a state on the algebra")
    G = gram_matrix(alg, omega.density)
    decomposition = hermitian_eig(G, hermitian_tol=1e-9)
    top = decomposition.eigenvalues[-1]
    kept = [j for j, lam in enumerate(decomposition.eigenvalues) if lam > tol * top]
    V = decomposition.eigenvectors[:, kept]
    roots = np.sqrt(decomposition.eigenvalues[kept])
    W = V.conj().T * roots[:, None]
    W_pinv = V / roots[None, :]

    C = alg.structure_constants
    # pi(b_i) eta(b_j) = eta(b_i b_j) = sum_k C[i, j, k] eta(b_k)
    rep = np.einsum("rk,ijk,js->irs", W, C, W_pinv, optimize=True)
    cyclic = W @ alg.identity_coordinates

    logger.debug("gns: algebra dim %d -> H_omega dim %d", alg.dim, len(kept))
    return GNSRepresentation(
        algebra=alg,
        state=omega,
        rep_matrices=tuple(rep),
        cyclic_vector=cyclic,
        isometry=W,
    )


def _hermitian_basis(n: int) -> list[np.ndarray]:
    basis = []
    for a in range(n):
        e = np.zeros((n, n), dtype=np.complex128)
        e[a, a] = 1.0
        basis.append(e)
    for a in range(n):
        for b in range(a + 1, n):
            sym = np.zeros((n, n), dtype=np.complex128)
            sym[a, b] = sym[b, a] = 1 / np.sqrt(2)
            asym = np.zeros((n, n), dtype=np.complex128)
            asym[a, b] = -1j / np.sqrt(2)
            asym[b, a] = 1j / np.sqrt(2)
            basis.extend([sym, asym])
    return basis


def normal_lift(rep: GNSRepresentation, phi: State, tol: float = LIFT_TOL) -> State:
    """Density phi~ on H_omega with phi~(pi(b)) = phi(b) for every basis b.

    Minimum-norm least squares over Hermitian densities; the minimum-norm
    solution lies in pi(A), so it is positive whenever any positive
    solution exists.
    """
    if phi.ambient_dim != rep.algebra.ambient_dim:
        raise DimensionMismatch(
            f"state on {phi.ambient_dim} dims, representation source on {rep.algebra.ambient_dim}"
        )
    target = restrict(phi, rep.algebra)
    if np.max(np.abs(target - restrict(rep.state, rep.algebra))) <= tol:
        return rep.vector_state()

    herm = np.stack(_hermitian_basis(rep.gns_dim))
    M = np.einsum("aij,kji->ka", herm, rep.stacked)
    system = np.vstack([M.real, M.imag])
    rhs = np.concatenate([target.real, target.imag])
    x, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    residual = float(np.max(np.abs(M @ x - target)))
    if residual > tol * max(1.0, float(np.max(np.abs(target)))):
        raise NotPiNormal(f"no density on H_omega reproduces the state (residual {residual:.3e})")

    density = np.tensordot(x, herm, axes=1)
    decomposition = hermitian_eig(density, hermitian_tol=1e-9)
    if decomposition.eigenvalues[0] < -tol:
        raise NotPiNormal(
            f"moment solution is not positive (smallest eigenvalue {decomposition.eigenvalues[0]:.3e})"
        )
    if decomposition.eigenvalues[0] < 0:
        clipped = np.clip(decomposition.eigenvalues, 0.0, None)
        V = decomposition.eigenvectors
        density = (V * (clipped / clipped.sum())) @ adjoint(V)
    logger.debug("normal_lift: residual %.3e, gns dim %d", residual, rep.gns_dim)
    return State(density)
