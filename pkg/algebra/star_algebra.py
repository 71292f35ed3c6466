"""Finite-dimensional unital *-algebras realized inside M_n(C).

An algebra is stored as a Hilbert-Schmidt orthonormal basis whose first
element is the normalized identity.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

import toolkit_config
from errors import DimensionMismatch
from numeric import CMatrix, adjoint, as_cmatrix, frobenius, kron, orthonormalize, project_coefficients

logger = logging.getLogger(__name__)


class Membership(NamedTuple):
    contained: bool
    residual: float

    def __bool__(self) -> bool:
        return self.contained


@dataclass(frozen=True, eq=False)
class StarAlgebra:
    ambient_dim: int
    basis: tuple[CMatrix, ...]
    label: str = ""
    contains_identity: bool = field(default=True, init=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def stacked(self) -> np.ndarray:
        return np.stack(self.basis)

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """C[i, j, k] = <b_k, b_i b_j>; computed once per algebra."""
        B = self.stacked
        products = np.einsum("iab,jbc->ijac", B, B)
        return np.einsum("kac,ijac->ijk", B.conj(), products)

    @cached_property
    def adjoint_constants(self) -> np.ndarray:
        """A[i, k] = <b_k, b_i*>."""
        B = self.stacked
        return np.einsum("kab,iba->ik", B.conj(), B.conj())

    @cached_property
    def identity_coordinates(self) -> np.ndarray:
        return self.coordinates(np.eye(self.ambient_dim))

    def coordinates(self, X) -> np.ndarray:
        return np.einsum("kab,ab->k", self.stacked.conj(), np.asarray(X, dtype=np.complex128))

    def element(self, coords) -> CMatrix:
        return np.tensordot(np.asarray(coords, dtype=np.complex128), self.stacked, axes=1)

    def closure_residual(self) -> float:
        """Worst HS distance of a basis product or adjoint from the span."""
        worst = 0.0
        for b in self.basis:
            worst = max(worst, project_coefficients(self.basis, adjoint(b))[1])
            for c in self.basis:
                worst = max(worst, project_coefficients(self.basis, b @ c)[1])
        return worst

    def is_commutative(self, tol: float = 1e-9) -> bool:
        return all(
            frobenius(b @ c - c @ b) <= tol for b in self.basis for c in self.basis
        )


def _check_square(X, n: int, what: str) -> CMatrix:
    X = as_cmatrix(X)
    if X.shape != (n, n):
        raise DimensionMismatch(f"{what} has shape {X.shape}, expected ({n}, {n})")
    return X


def generate(
    generators: Sequence[CMatrix],
    ambient_dim: int,
    tol: float = toolkit_config.rank_tol,
    label: str = "",
) -> StarAlgebra:
    """Smallest unital *-algebra containing the generators.

    Worklist closure: every accepted element queues its adjoint and its
    products with all current basis elements. Terminates because the
    dimension is bounded by ambient_dim**2.
    """
    gens = [_check_square(g, ambient_dim, "generator") for g in generators]
    basis: list[CMatrix] = [np.eye(ambient_dim, dtype=np.complex128) / np.sqrt(ambient_dim)]
    pending = deque()
    for g in gens:
        pending.append(g)
        pending.append(adjoint(g))

    while pending:
        candidate = pending.popleft()
        accepted = orthonormalize([candidate], basis, tol=tol)
        if not accepted:
            continue
        e = accepted[0]
        basis.append(e)
        pending.append(adjoint(e))
        for b in basis:
            pending.append(e @ b)
            pending.append(b @ e)

    logger.debug("generate: %d generators -> dimension %d", len(gens), len(basis))
    return StarAlgebra(ambient_dim=ambient_dim, basis=tuple(basis), label=label)


def from_span(
    elements: Sequence[CMatrix],
    ambient_dim: int,
    tol: float = toolkit_config.rank_tol,
    label: str = "",
) -> StarAlgebra:
    """Wrap a span already known to be a unital *-algebra (no closure pass)."""
    identity = np.eye(ambient_dim, dtype=np.complex128) / np.sqrt(ambient_dim)
    rest = orthonormalize([_check_square(e, ambient_dim, "element") for e in elements], [identity], tol=tol)
    return StarAlgebra(ambient_dim=ambient_dim, basis=(identity, *rest), label=label)


def contains(alg: StarAlgebra, X, tol: float = toolkit_config.rank_tol) -> Membership:
    X = _check_square(X, alg.ambient_dim, "operator")
    _, residual = project_coefficients(alg.basis, X)
    return Membership(residual <= tol * max(1.0, frobenius(X)), residual)


def span_equal(A: StarAlgebra, B: StarAlgebra) -> float:
    """Worst mutual-containment residual of the two spans."""
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch("algebras live in different ambient spaces")
    worst = max((contains(B, a).residual for a in A.basis), default=0.0)
    return max(worst, max((contains(A, b).residual for b in B.basis), default=0.0))


def tensor(A: StarAlgebra, B: StarAlgebra) -> StarAlgebra:
    # products of orthonormal bases are orthonormal; identity stays first
    basis = tuple(kron(a, b) for a in A.basis for b in B.basis)
    label = f"{A.label or 'A'} (x) {B.label or 'B'}"
    return StarAlgebra(ambient_dim=A.ambient_dim * B.ambient_dim, basis=basis, label=label)


def direct_sum(blocks: Sequence[int]) -> StarAlgebra:
    """Block-diagonal M_{n1} (+) ... (+) M_{nk}."""
    if not blocks or any(int(n) < 1 for n in blocks):
        raise DimensionMismatch(f"block sizes must be >= 1, got {list(blocks)}")
    total = sum(int(n) for n in blocks)
    units = []
    offset = 0
    for n in blocks:
        for i in range(n):
            for j in range(n):
                unit = np.zeros((total, total), dtype=np.complex128)
                unit[offset + i, offset + j] = 1.0
                units.append(unit)
        offset += n
    label = "+".join(f"M{n}" for n in blocks)
    return from_span(units, total, label=label)


def full_matrix_algebra(n: int) -> StarAlgebra:
    return direct_sum([n])
