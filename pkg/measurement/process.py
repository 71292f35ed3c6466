"""Measurement processes (Ad U, psi) with a finite cyclic pointer.

The pointer space is l^2 of the dual of Z_n, n the number of outcomes; the
regular representation of the dual group is the cyclic shift S.
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from algebra import StarAlgebra, contains, from_span, full_matrix_algebra, tensor
from errors import DimensionMismatch, NotUnitary
from measurement.pvm import PVM
from numeric import CMatrix, adjoint, frobenius, kron
from states import State

logger = logging.getLogger(__name__)

UNITARY_TOL = 1e-10


def pointer_algebra(n: int) -> StarAlgebra:
    """Diagonal algebra C(Z_n) on the n-point pointer space."""
    if n < 1:
        raise DimensionMismatch(f"pointer needs at least one position, got {n}")
    units = []
    for k in range(n):
        e = np.zeros((n, n), dtype=np.complex128)
        e[k, k] = 1.0
        units.append(e)
    return from_span(units, n, label=f"C(Z{n})")


def cyclic_shift(n: int) -> CMatrix:
    """S e_k = e_{k+1 mod n}."""
    return np.roll(np.eye(n, dtype=np.complex128), 1, axis=0)


def pointer_position(n: int, k: int) -> CMatrix:
    e = np.zeros((n, n), dtype=np.complex128)
    e[k, k] = 1.0
    return e


def pointer_state(n: int, position: int = 0) -> State:
    """Point mass at one pointer position."""
    if not 0 <= position < n:
        raise DimensionMismatch(f"pointer position {position} outside 0..{n - 1}")
    return State(pointer_position(n, position))


def coupling_unitary(pvm: PVM, shifts: Sequence[int]) -> CMatrix:
    """sum_j E_j (x) S^shifts[j]."""
    n = len(pvm)
    if len(shifts) != n:
        raise DimensionMismatch(f"{len(shifts)} shifts for {n} outcomes")
    S = cyclic_shift(n)
    return sum(kron(E, np.linalg.matrix_power(S, int(s) % n)) for E, s in zip(pvm.projections, shifts))


def kac_takesaki_unitary(pvm: PVM) -> CMatrix:
    return coupling_unitary(pvm, range(len(pvm)))


@dataclass(frozen=True, eq=False)
class MeasurementProcess:
    unitary: CMatrix
    apparatus: State
    pvm: PVM
    shifts: tuple[int, ...]

    def __post_init__(self):
        expected = self.object_dim * self.pointer_dim
        if self.unitary.shape != (expected, expected):
            raise DimensionMismatch(
                f"interaction unitary has shape {self.unitary.shape}, composite space has dim {expected}"
            )
        if self.pointer_dim != len(self.pvm):
            raise DimensionMismatch(
                f"pointer of dim {self.pointer_dim} for a PVM with {len(self.pvm)} outcomes"
            )
        residual = self.unitarity_residual()
        if residual > UNITARY_TOL:
            raise NotUnitary(f"interaction is not unitary (residual {residual:.3e})")

    @property
    def object_dim(self) -> int:
        return self.pvm.dim

    @property
    def pointer_dim(self) -> int:
        return self.apparatus.ambient_dim

    @property
    def outcomes(self) -> tuple[float, ...]:
        return self.pvm.outcomes

    @property
    def composite_dim(self) -> int:
        return self.object_dim * self.pointer_dim

    def unitarity_residual(self) -> float:
        U = self.unitary
        return frobenius(adjoint(U) @ U - np.eye(U.shape[0]))

    def heisenberg(self, X) -> CMatrix:
        """alpha_m(X) = U* X U."""
        return adjoint(self.unitary) @ X @ self.unitary

    def pointer_indicator(self, indices: Sequence[int]) -> CMatrix:
        """1 (x) chi_Delta for a set of pointer positions."""
        chi = sum((pointer_position(self.pointer_dim, k) for k in indices), np.zeros((self.pointer_dim,) * 2))
        return kron(np.eye(self.object_dim), chi)

    def automorphism_residual(self, object_algebra: StarAlgebra | None = None) -> float:
        """Worst distance of Ad U and Ad U* images from object (x) pointer algebra.

        Checked on the pointer projections 1 (x) e_kk and on the object
        elements commuting with the measured PVM; a generic X (x) 1 moves the
        pointer and leaves the diagonal pointer algebra.
        """
        obj = object_algebra or full_matrix_algebra(self.object_dim)
        composite = tensor(obj, pointer_algebra(self.pointer_dim))
        generators = [self.pointer_indicator([k]) for k in range(self.pointer_dim)]
        for b in obj.basis:
            pinched = sum(E @ b @ E for E in self.pvm.projections)
            generators.append(kron(pinched, np.eye(self.pointer_dim)))
        U = self.unitary
        worst = 0.0
        for g in generators:
            worst = max(worst, contains(composite, self.heisenberg(g)).residual)
            worst = max(worst, contains(composite, U @ g @ adjoint(U)).residual)
        return worst


def coupled_measurement(pvm: PVM, shifts: Sequence[int], apparatus: State | None = None) -> MeasurementProcess:
    """Process coupling E_j to the pointer shift S^shifts[j]."""
    n = len(pvm)
    apparatus = apparatus or pointer_state(n, 0)
    shifts = tuple(int(s) % n for s in shifts)
    process = MeasurementProcess(
        unitary=coupling_unitary(pvm, shifts),
        apparatus=apparatus,
        pvm=pvm,
        shifts=shifts,
    )
    logger.debug("coupled_measurement: %d outcomes, shifts %s", n, shifts)
    return process


def ideal_measurement(pvm: PVM, apparatus: State | None = None) -> MeasurementProcess:
    return coupled_measurement(pvm, range(len(pvm)), apparatus)


def corrupted_measurement(
    pvm: PVM,
    swap: tuple[int, int] = (0, 1),
    apparatus: State | None = None,
) -> MeasurementProcess:
    """Ideal coupling with the pointer shifts of two outcomes exchanged."""
    n = len(pvm)
    i, j = swap
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise DimensionMismatch(f"cannot swap couplings {swap} of a {n}-outcome PVM")
    shifts = list(range(n))
    shifts[i], shifts[j] = shifts[j], shifts[i]
    return coupled_measurement(pvm, shifts, apparatus)
