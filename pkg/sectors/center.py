"""Commutants, centers and minimal central projections."""
import hashlib
import logging
from dataclasses import dataclass

import numpy as np

import toolkit_config
from algebra import StarAlgebra, from_span
from numeric import CMatrix, adjoint, cluster_spectrum, frobenius, hermitian_eig, kron, nullspace
from states import GNSRepresentation

logger = logging.getLogger(__name__)

REFINEMENT_GAP = 1e-7
SIGNATURE_DIGITS = 6


@dataclass(frozen=True, eq=False)
class CenterDecomposition:
    center: StarAlgebra
    minimal_projections: tuple[CMatrix, ...]
    sector_labels: tuple[str, ...]
    signatures: tuple[tuple[float, ...], ...]
    representation: GNSRepresentation | None = None

    @property
    def center_basis(self) -> tuple[CMatrix, ...]:
        return self.center.basis

    @property
    def dim(self) -> int:
        return self.center.dim

    def projection(self, label: str) -> CMatrix:
        return self.minimal_projections[self.sector_labels.index(label)]

    def invariant_residual(self) -> float:
        """Worst violation of idempotence, orthogonality, completeness and
        centrality of the minimal projections."""
        zs = self.minimal_projections
        n = zs[0].shape[0]
        worst = frobenius(sum(zs) - np.eye(n))
        for j, z in enumerate(zs):
            worst = max(worst, frobenius(z @ z - z), frobenius(z - adjoint(z)))
            for w in zs[j + 1:]:
                worst = max(worst, frobenius(z @ w))
            if self.representation is not None:
                for p in self.representation.rep_matrices:
                    worst = max(worst, frobenius(z @ p - p @ z))
        return worst


def commutant(alg: StarAlgebra, tol: float = toolkit_config.rank_tol) -> StarAlgebra:
    """S' = {X : X b = b X for every basis element b}."""
    n = alg.ambient_dim
    eye = np.eye(n)
    # row-major vectorization: vec(bX - Xb) = (b (x) 1 - 1 (x) b^T) vec(X)
    L = np.vstack([kron(b, eye) - kron(eye, b.T) for b in alg.basis[1:]] or [np.zeros((1, n * n))])
    kernel = nullspace(L, tol=tol, shape=(n, n))
    result = from_span(kernel, n, tol=tol, label=f"({alg.label})'")
    logger.debug("commutant: dim %d -> dim %d", alg.dim, result.dim)
    return result


def relative_center(alg: StarAlgebra, tol: float = toolkit_config.rank_tol) -> StarAlgebra:
    """A intersected with A', solved inside the span of A."""
    a = alg.stacked
    m, r = alg.dim, alg.ambient_dim
    if m == 1:
        return alg
    # comm[i, k] = a_k a_i - a_i a_k, one column per coefficient k
    comm = np.einsum("kab,ibc->ikac", a, a) - np.einsum("iab,kbc->ikac", a, a)
    L = np.transpose(comm, (0, 2, 3, 1)).reshape(m * r * r, m)
    coefficients = nullspace(L, tol=tol)
    elements = [np.tensordot(c, a, axes=1) for c in coefficients]
    return from_span(elements, r, tol=tol, label=f"Z({alg.label})")


def minimal_projections(alg: StarAlgebra, rel_gap: float = REFINEMENT_GAP) -> list[CMatrix]:
    """Minimal projections of a commutative *-algebra by partition refinement.

    Every block is split along the eigenvalue clusters of each self-adjoint
    basis part until no split happens in a full pass.
    """
    n = alg.ambient_dim
    hermitians = []
    for b in alg.basis[1:]:
        for h in (0.5 * (b + adjoint(b)), -0.5j * (b - adjoint(b))):
            if frobenius(h) > 1e-12:
                spectrum = hermitian_eig(h, hermitian_tol=1e-9).eigenvalues
                hermitians.append((h, float(spectrum[-1] - spectrum[0])))

    blocks = [np.eye(n, dtype=np.complex128)]
    while True:
        changed = False
        for h, width in hermitians:
            refined = []
            for Q in blocks:
                decomposition = hermitian_eig(adjoint(Q) @ h @ Q, hermitian_tol=1e-9)
                for group in cluster_spectrum(decomposition.eigenvalues, rel_gap, width=width):
                    refined.append(Q @ decomposition.eigenvectors[:, group])
            changed = changed or len(refined) != len(blocks)
            blocks = refined
        if not changed:
            break
    logger.debug("minimal_projections: %d blocks for algebra of dim %d", len(blocks), alg.dim)
    return [Q @ adjoint(Q) for Q in blocks]


def _signature(z: CMatrix, alg: StarAlgebra) -> tuple[float, ...]:
    rank = max(round(np.trace(z).real), 1)
    values = [float(rank)]
    for b in alg.basis[1:]:
        value = np.trace(z @ b) / rank
        values.extend([round(value.real, SIGNATURE_DIGITS) + 0.0, round(value.imag, SIGNATURE_DIGITS) + 0.0])
    return tuple(values)


def _label(signature: tuple[float, ...]) -> str:
    text = ",".join(f"{v:+.{SIGNATURE_DIGITS}f}".replace("-0.000000", "+0.000000") for v in signature)
    return "s-" + hashlib.sha1(text.encode("utf-8")).hexdigest()[:8]


def labelled_projections(alg: StarAlgebra) -> tuple[list[CMatrix], list[str], list[tuple[float, ...]]]:
    """Minimal projections ordered by (rank, signature) with content-derived labels."""
    projections = minimal_projections(alg)
    signatures = [_signature(z, alg) for z in projections]
    order = sorted(range(len(projections)), key=lambda j: signatures[j])
    return (
        [projections[j] for j in order],
        [_label(signatures[j]) for j in order],
        [signatures[j] for j in order],
    )


def center(rep: GNSRepresentation, tol: float = toolkit_config.rank_tol) -> CenterDecomposition:
    """Z_omega(A) = pi(A)'' cap pi(A)' and its minimal projections."""
    z_alg = relative_center(rep.image_algebra, tol=tol)
    projections, labels, signatures = labelled_projections(z_alg)
    if len(projections) != z_alg.dim:
        logger.warning(
            "center: %d minimal projections for a center of dimension %d", len(projections), z_alg.dim
        )
    return CenterDecomposition(
        center=z_alg,
        minimal_projections=tuple(projections),
        sector_labels=tuple(labels),
        signatures=tuple(signatures),
        representation=rep,
    )
