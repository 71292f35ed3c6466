"""Projection-valued measures of Hermitian observables."""
import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from errors import DimensionMismatch, UnknownOutcome
from numeric import CMatrix, adjoint, cluster_spectrum, frobenius, hermitian_eig

logger = logging.getLogger(__name__)

OUTCOME_MATCH_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class PVM:
    outcomes: tuple[float, ...]
    projections: tuple[CMatrix, ...]

    def __post_init__(self):
        if len(self.outcomes) != len(self.projections) or not self.outcomes:
            raise DimensionMismatch("a PVM needs one projection per outcome")
        shapes = {p.shape for p in self.projections}
        if len(shapes) != 1:
            raise DimensionMismatch(f"PVM projections have different shapes {sorted(shapes)}")

    @property
    def dim(self) -> int:
        return self.projections[0].shape[0]

    def __len__(self) -> int:
        return len(self.outcomes)

    def index_of(self, outcome: float) -> int:
        for j, a in enumerate(self.outcomes):
            if abs(a - outcome) <= OUTCOME_MATCH_TOL * max(1.0, abs(a)):
                return j
        raise UnknownOutcome(f"{outcome!r} is not an outcome of {list(self.outcomes)}")

    def indices(self, outcomes: Iterable[float]) -> list[int]:
        return sorted({self.index_of(a) for a in outcomes})

    def projection(self, outcomes: Iterable[float]) -> CMatrix:
        """E(Delta) for a set of outcome values."""
        total = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for j in self.indices(outcomes):
            total = total + self.projections[j]
        return total

    def observable(self) -> CMatrix:
        return sum(a * p for a, p in zip(self.outcomes, self.projections))

    def residual(self) -> float:
        """Worst violation of idempotence, self-adjointness, orthogonality and completeness."""
        worst = frobenius(sum(self.projections) - np.eye(self.dim))
        for j, p in enumerate(self.projections):
            worst = max(worst, frobenius(p @ p - p), frobenius(p - adjoint(p)))
            for q in self.projections[j + 1:]:
                worst = max(worst, frobenius(p @ q))
        return worst


def pvm_from_observable(A, cluster_tol: float = 1e-9) -> PVM:
    """Spectral projections of A, eigenvalues merged where consecutive gaps
    are at most cluster_tol times the spectral width."""
    decomposition = hermitian_eig(A)
    groups = cluster_spectrum(decomposition.eigenvalues, cluster_tol)
    outcomes = tuple(float(np.mean(decomposition.eigenvalues[g])) for g in groups)
    projections = tuple(decomposition.projection(g) for g in groups)
    logger.debug("pvm_from_observable: %d eigenvalues -> %d outcomes", len(decomposition.eigenvalues), len(groups))
    return PVM(outcomes=outcomes, projections=projections)
