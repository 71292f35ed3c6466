"""Dense complex linear algebra shared by every other package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Nothing here
mutates its arguments.
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import numpy.typing as npt

import toolkit_config
from errors import NoConvergence, NotHermitian, ShapeMismatch
from observability import metrics

logger = logging.getLogger(__name__)

CMatrix = npt.NDArray[np.complex128]


def as_cmatrix(M) -> CMatrix:
    arr = np.asarray(M, dtype=np.complex128)
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got array of shape {arr.shape}")
    return arr


def adjoint(M: CMatrix) -> CMatrix:
    return np.conjugate(M).T


def frobenius(M) -> float:
    return float(np.linalg.norm(M))


def is_hermitian(M: CMatrix, tol: float = 1e-12) -> bool:
    M = as_cmatrix(M)
    if M.shape[0] != M.shape[1]:
        return False
    return frobenius(M - adjoint(M)) <= tol * max(1.0, frobenius(M))


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending real eigenvalues and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: CMatrix
    sweeps: int = 0

    def reconstruct(self) -> CMatrix:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ adjoint(V)

    def residual(self, M: CMatrix) -> float:
        return frobenius(as_cmatrix(M) - self.reconstruct())

    def projection(self, indices: Iterable[int]) -> CMatrix:
        cols = self.eigenvectors[:, list(indices)]
        return cols @ adjoint(cols)


def _off_diagonal(A: CMatrix) -> float:
    return frobenius(A - np.diag(np.diag(A)))


def hermitian_eig(
    M,
    *,
    max_sweeps: int = toolkit_config.jacobi_max_sweeps,
    rel_tol: float = toolkit_config.jacobi_rel_tol,
    hermitian_tol: float = 1e-12,
) -> EigenDecomposition:
    """Cyclic Jacobi eigensolver for complex Hermitian matrices.

    Converges when the off-diagonal Frobenius mass drops to
    ``rel_tol * ||M||``; raises ``NoConvergence`` after ``max_sweeps``.
    """
    A = as_cmatrix(M).copy()
    n, m = A.shape
    if n != m:
        raise ShapeMismatch(f"eigenproblem needs a square matrix, got {A.shape}")
    norm = frobenius(A)
    if not is_hermitian(A, tol=hermitian_tol):
        raise NotHermitian(
            f"matrix is not Hermitian (residual {frobenius(A - adjoint(A)):.3e})"
        )
    A = 0.5 * (A + adjoint(A))
    V = np.eye(n, dtype=np.complex128)

    threshold = rel_tol * norm
    # rotations below this size cannot push the off-diagonal mass over threshold
    skip = threshold / max(n, 1)
    sweeps = 0
    while _off_diagonal(A) > threshold:
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal mass {_off_diagonal(A):.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= skip:
                    continue
                phase = np.conjugate(apq / mag)
                theta = 0.5 * math.atan2(2.0 * mag, (A[q, q] - A[p, p]).real)
                c, s = math.cos(theta), math.sin(theta)
                jpp, jpq, jqp, jqq = c, s, -s * phase, c * phase

                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = col_p * jpp + col_q * jqp
                A[:, q] = col_p * jpq + col_q * jqq
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = np.conjugate(jpp) * row_p + np.conjugate(jqp) * row_q
                A[q, :] = np.conjugate(jpq) * row_p + np.conjugate(jqq) * row_q
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real

                vec_p, vec_q = V[:, p].copy(), V[:, q].copy()
                V[:, p] = vec_p * jpp + vec_q * jqp
                V[:, q] = vec_p * jpq + vec_q * jqq
        sweeps += 1

    eigenvalues = np.real(np.diag(A)).copy()
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    V = V[:, order]
    # fix the phase: largest component of each column real positive
    for j in range(n):
        k = int(np.argmax(np.abs(V[:, j])))
        if abs(V[k, j]) > 0:
            V[:, j] *= np.conjugate(V[k, j]) / abs(V[k, j])

    metrics.record_sweeps(sweeps)
    logger.debug("hermitian_eig: n=%d converged after %d sweeps", n, sweeps)
    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=V, sweeps=sweeps)


def nullspace(
    L,
    tol: float = toolkit_config.rank_tol,
    shape: tuple[int, int] | None = None,
) -> list[CMatrix]:
    """Orthonormal basis of ker L, read off the eigendecomposition of L*L.

    Each returned vector is reshaped to ``shape`` when given (row-major
    vectorization of operators).
    """
    if tol <= 0:
        raise ValueError("nullspace tolerance must be positive")
    L = as_cmatrix(L)
    cols = L.shape[1]
    norm = frobenius(L)
    if norm == 0.0:
        vectors = list(np.eye(cols, dtype=np.complex128))
    else:
        decomposition = hermitian_eig(adjoint(L) @ L)
        top = max(decomposition.eigenvalues[-1], 0.0)
        # squared singular values, floored at the eigensolver's accuracy on L*L
        cutoff = max((tol * norm) ** 2, toolkit_config.jacobi_rel_tol * top)
        candidates = [
            decomposition.eigenvectors[:, j].copy()
            for j, lam in enumerate(decomposition.eigenvalues)
            if lam <= cutoff
        ]
        residuals = [frobenius(L @ v) for v in candidates]
        vectors = [v for v, r in zip(candidates, residuals) if r <= tol * norm]
        worst = max((r for r in residuals if r <= tol * norm), default=0.0)
        logger.debug(
            "nullspace: %d of %d directions (%d candidates), worst |Lv|/|L| = %.3e",
            len(vectors), cols, len(candidates), worst / norm,
        )
    if shape is not None:
        vectors = [v.reshape(shape) for v in vectors]
    return vectors


def kron(A, B) -> CMatrix:
    return np.kron(as_cmatrix(A), as_cmatrix(B))


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product trace(A* B)."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        raise ShapeMismatch(f"hs_inner shapes differ: {A.shape} vs {B.shape}")
    return complex(np.vdot(A, B))


def project_coefficients(basis: Sequence[CMatrix], X) -> tuple[np.ndarray, float]:
    """Coordinates of X on an orthonormal basis and the HS distance to its span."""
    X = np.asarray(X, dtype=np.complex128)
    if not len(basis):
        return np.zeros(0, dtype=np.complex128), frobenius(X)
    stacked = np.stack(basis).reshape(len(basis), -1)
    coords = np.conjugate(stacked) @ X.reshape(-1)
    residual = X.reshape(-1) - coords @ stacked
    return coords, frobenius(residual)


def orthonormalize(
    candidates: Iterable[CMatrix],
    basis: Sequence[CMatrix] = (),
    tol: float = toolkit_config.rank_tol,
) -> list[CMatrix]:
    """Gram-Schmidt (with one re-orthogonalization pass) in the HS inner
    product. Returns only the newly accepted elements."""
    accepted: list[CMatrix] = []
    current = list(basis)
    for candidate in candidates:
        c = np.asarray(candidate, dtype=np.complex128)
        size = frobenius(c)
        if size == 0.0:
            continue
        v = c
        for _ in range(2):
            coords, _ = project_coefficients(current, v)
            if len(current):
                v = v - np.tensordot(coords, np.stack(current), axes=1)
        rest = frobenius(v)
        if rest > tol * size:
            v = v / rest
            accepted.append(v)
            current.append(v)
    return accepted


def cluster_spectrum(
    values: Sequence[float],
    rel_gap: float,
    width: float | None = None,
) -> list[list[int]]:
    """Split ascending eigenvalues where consecutive gaps exceed
    ``rel_gap * width`` (width defaults to the spread of ``values``).

    Spreads below 1e-12 of the spectral scale count as one degenerate
    eigenvalue.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return []
    if width is None:
        width = float(values[-1] - values[0])
    scale = max(1.0, float(np.max(np.abs(values))))
    if width <= 1e-12 * scale:
        return [list(range(values.size))]
    groups = [[0]]
    for j in range(1, values.size):
        if values[j] - values[j - 1] > rel_gap * width:
            groups.append([j])
        else:
            groups[-1].append(j)
    return groups


def purify(density) -> np.ndarray:
    """Vector xi on H (x) H with <xi, (X (x) 1) xi> = trace(density X)."""
    decomposition = hermitian_eig(density)
    eigenvalues = decomposition.eigenvalues
    # eigenvalues at round-off level count as zero
    eigenvalues = np.where(eigenvalues > 1e-13 * max(eigenvalues[-1], 1.0), eigenvalues, 0.0)
    weights = np.sqrt(eigenvalues)
    return (decomposition.eigenvectors * weights).reshape(-1)


def partial_trace(density, dims: tuple[int, int], keep: int) -> CMatrix:
    d1, d2 = dims
    rho = as_cmatrix(density).reshape(d1, d2, d1, d2)
    if keep == 0:
        return np.einsum("ijkj->ik", rho)
    return np.einsum("ijil->jl", rho)
