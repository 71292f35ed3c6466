"""Spectral equivalence of PVMs on families of states."""
import logging
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

import numpy as np

import toolkit_config
from errors import DimensionMismatch, LabelMismatch
from measurement import PVM
from numeric import frobenius, purify
from states import State

logger = logging.getLogger(__name__)

ALIGN_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class StateFamily:
    members: tuple[State, ...]
    description: str = ""

    def __post_init__(self):
        dims = {s.ambient_dim for s in self.members}
        if len(dims) > 1:
            raise DimensionMismatch(f"family mixes states on dimensions {sorted(dims)}")

    @property
    def dim(self) -> int | None:
        return self.members[0].ambient_dim if self.members else None

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class AlignedOutcome:
    value: float
    left: int | None
    right: int | None


def align_outcomes(E1: PVM, E2: PVM, tol: float = ALIGN_TOL) -> list[AlignedOutcome]:
    """Match outcome labels of two PVMs by value; unmatched labels become
    singleton cells whose projection on the other side is zero."""
    if E1.dim != E2.dim:
        raise DimensionMismatch(f"PVMs act on dimensions {E1.dim} and {E2.dim}")
    used = set()
    aligned = []
    for i, a in enumerate(E1.outcomes):
        close = [j for j, b in enumerate(E2.outcomes) if abs(a - b) <= tol * max(1.0, abs(a))]
        if len(close) > 1:
            raise LabelMismatch(f"outcome {a!r} matches several labels {[E2.outcomes[j] for j in close]}")
        if close and close[0] in used:
            raise LabelMismatch(f"outcome {E2.outcomes[close[0]]!r} matched twice")
        if close:
            used.add(close[0])
            aligned.append(AlignedOutcome(a, i, close[0]))
        else:
            aligned.append(AlignedOutcome(a, i, None))
    aligned.extend(AlignedOutcome(b, None, j) for j, b in enumerate(E2.outcomes) if j not in used)
    return sorted(aligned, key=lambda cell: cell.value)


def _aligned_projections(E1: PVM, E2: PVM) -> tuple[list[AlignedOutcome], np.ndarray, np.ndarray]:
    aligned = align_outcomes(E1, E2)
    zero = np.zeros((E1.dim, E1.dim), dtype=np.complex128)
    left = np.stack([E1.projections[c.left] if c.left is not None else zero for c in aligned])
    right = np.stack([E2.projections[c.right] if c.right is not None else zero for c in aligned])
    return aligned, left, right


def _pair_values(rho: np.ndarray, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """V[i, j] = trace(rho E1(i) E2(j))."""
    return np.einsum("ab,ibc,jca->ij", rho, left, right, optimize=True)


@dataclass(frozen=True)
class SpectralCheck:
    equivalent: bool
    violation: float
    tol: float
    member: int | None = None
    pair: tuple[float, float] | None = None


def spectrally_equivalent(
    E1: PVM,
    E2: PVM,
    family: StateFamily,
    tol: float = toolkit_config.default_tol,
) -> SpectralCheck:
    """max |phi(E1(Delta) E2(Gamma))| over members and disjoint atomic outcome pairs."""
    aligned, left, right = _aligned_projections(E1, E2)
    if family.dim is not None and family.dim != E1.dim:
        raise DimensionMismatch(f"family on {family.dim} dims, PVMs on {E1.dim}")
    worst, member, pair = 0.0, None, None
    off_diagonal = ~np.eye(len(aligned), dtype=bool)
    for index, phi in enumerate(family):
        values = np.abs(_pair_values(phi.density, left, right))
        values[~off_diagonal] = 0.0
        i, j = np.unravel_index(int(np.argmax(values)), values.shape)
        if values[i, j] > worst:
            worst, member, pair = float(values[i, j]), index, (aligned[i].value, aligned[j].value)
    logger.debug("spectrally_equivalent: worst violation %.3e over %d states", worst, len(family))
    return SpectralCheck(equivalent=worst <= tol, violation=worst, tol=tol, member=member, pair=pair)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    labels: tuple[float, ...]
    masses: np.ndarray
    imaginary_residual: float
    tol: float

    @property
    def total(self) -> float:
        return float(self.masses.sum())

    @property
    def off_diagonal_mass(self) -> float:
        return float(np.abs(self.masses - np.diag(np.diag(self.masses))).sum())

    @property
    def min_mass(self) -> float:
        return float(self.masses.min())

    @property
    def diagonal_support(self) -> bool:
        return self.off_diagonal_mass <= self.tol


def joint_distribution(
    E1: PVM,
    E2: PVM,
    phi: State,
    tol: float = toolkit_config.default_tol,
) -> JointDistribution:
    """p(Delta_i, Gamma_j) = Re phi(E1(Delta_i) E2(Gamma_j)) on the aligned grid."""
    if phi.ambient_dim != E1.dim:
        raise DimensionMismatch(f"state on {phi.ambient_dim} dims, PVMs on {E1.dim}")
    aligned, left, right = _aligned_projections(E1, E2)
    values = _pair_values(phi.density, left, right)
    return JointDistribution(
        labels=tuple(c.value for c in aligned),
        masses=values.real.copy(),
        imaginary_residual=float(np.max(np.abs(values.imag))),
        tol=tol,
    )


def vector_criterion_residual(E1: PVM, E2: PVM, phi: State) -> float:
    """max over outcomes of ||((E1(Delta) - E2(Delta)) (x) 1) xi_phi||."""
    _, left, right = _aligned_projections(E1, E2)
    d = phi.ambient_dim
    if d != E1.dim:
        raise DimensionMismatch(f"state on {d} dims, PVMs on {E1.dim}")
    # (X (x) 1) xi is X @ M for the row-major reshape M of xi
    M = purify(phi.density).reshape(d, d)
    return max(frobenius((l - r) @ M) for l, r in zip(left, right))


@dataclass(frozen=True)
class RelationCheck:
    reflexive: bool
    symmetric: bool
    transitive: bool
    agrees_with_definition: bool
    worst_residual: float
    tol: float
    counterexample: tuple[int, ...] | None = None
    related: tuple[tuple[bool, ...], ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive and self.agrees_with_definition


def equivalence_relation_check(
    pvms: Sequence[PVM],
    family: StateFamily,
    tol: float = toolkit_config.default_tol,
) -> RelationCheck:
    """Reflexivity, symmetry and transitivity of =_S on a list of PVMs.

    Relations use the vector criterion on purifications; each pair is also
    compared with the defining condition on disjoint outcome pairs.
    """
    m = len(pvms)
    residual = np.zeros((m, m))
    agrees = True
    counterexample = None
    for i in range(m):
        for j in range(m):
            residual[i, j] = max((vector_criterion_residual(pvms[i], pvms[j], phi) for phi in family), default=0.0)
            by_definition = spectrally_equivalent(pvms[i], pvms[j], family, tol=tol).equivalent
            if by_definition != (residual[i, j] <= tol) and agrees:
                agrees = False
                counterexample = (i, j)
    related = residual <= tol

    reflexive = bool(np.all(np.diag(related)))
    if not reflexive and counterexample is None:
        k = int(np.argmin(np.diag(related)))
        counterexample = (k,)
    symmetric = bool(np.all(related == related.T))
    if not symmetric and counterexample is None:
        i, j = map(int, np.argwhere(related != related.T)[0])
        counterexample = (i, j)
    transitive = True
    for i, j, k in permutations(range(m), 3):
        if related[i, j] and related[j, k] and not related[i, k]:
            transitive = False
            counterexample = counterexample or (i, j, k)
            break
    worst = float(residual[related].max()) if related.any() else 0.0
    return RelationCheck(
        reflexive=reflexive,
        symmetric=symmetric,
        transitive=transitive,
        agrees_with_definition=agrees,
        worst_residual=worst,
        tol=tol,
        counterexample=counterexample,
        related=tuple(tuple(bool(x) for x in row) for row in related),
    )
