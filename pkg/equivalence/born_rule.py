"""The measurement-process condition and the classical Born rule."""
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

import toolkit_config
from errors import MppcFailed, NotProductFamily
from equivalence.spectral import SpectralCheck, StateFamily, spectrally_equivalent
from measurement import PVM, MeasurementProcess, generalized_born, initial_state
from numeric import frobenius, kron, partial_trace
from states import State

logger = logging.getLogger(__name__)

PRODUCT_TOL = 1e-9


def product_family(process: MeasurementProcess, object_states: Sequence[State]) -> StateFamily:
    """Members phi (x) psi_m."""
    return StateFamily(
        members=tuple(initial_state(process, phi) for phi in object_states),
        description="product states phi (x) psi_m",
    )


def pointer_readout_pvm(process: MeasurementProcess) -> PVM:
    """Delta -> U* (1 (x) chi_Delta) U, pointer position k read as outcome a_k."""
    return PVM(
        outcomes=process.outcomes,
        projections=tuple(process.heisenberg(process.pointer_indicator([k])) for k in range(process.pointer_dim)),
    )


def object_pvm_on_composite(process: MeasurementProcess) -> PVM:
    """Delta -> E^A(Delta) (x) 1."""
    eye = np.eye(process.pointer_dim)
    return PVM(outcomes=process.outcomes, projections=tuple(kron(E, eye) for E in process.pvm.projections))


def _check_product(process: MeasurementProcess, family: StateFamily) -> None:
    dims = (process.object_dim, process.pointer_dim)
    for index, member in enumerate(family):
        if member.ambient_dim != process.composite_dim:
            raise NotProductFamily(f"member {index} lives on {member.ambient_dim} dims")
        obj = partial_trace(member.density, dims, keep=0)
        pointer = partial_trace(member.density, dims, keep=1)
        residual = max(
            frobenius(member.density - kron(obj, pointer)),
            frobenius(pointer - process.apparatus.density),
        )
        if residual > PRODUCT_TOL:
            raise NotProductFamily(f"member {index} is not of the form phi (x) psi_m (residual {residual:.3e})")


def verify_mppc(
    process: MeasurementProcess,
    family: StateFamily,
    tol: float = toolkit_config.default_tol,
) -> SpectralCheck:
    """alpha_m(1 (x) chi) =_S E^A (x) 1 on a family of product states."""
    _check_product(process, family)
    check = spectrally_equivalent(pointer_readout_pvm(process), object_pvm_on_composite(process), family, tol=tol)
    logger.debug("verify_mppc: holds=%s violation=%.3e", check.equivalent, check.violation)
    return check


@dataclass(frozen=True)
class BornRuleResult:
    lhs: float
    rhs: float
    residual: float
    tol: float
    mppc_violation: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def born_rule(
    process: MeasurementProcess,
    phi: State,
    outcomes: Iterable[float],
    tol: float = toolkit_config.default_tol,
) -> BornRuleResult:
    """Generalized Born probability against phi(E^A(Delta)), valid once the
    measurement-process condition holds for phi (x) psi_m."""
    outcomes = list(outcomes)
    check = verify_mppc(process, product_family(process, [phi]), tol=tol)
    if not check.equivalent:
        raise MppcFailed(f"measurement-process condition fails (violation {check.violation:.3e})")
    lhs = generalized_born(process, phi, outcomes)
    rhs = float(phi(process.pvm.projection(outcomes)).real)
    return BornRuleResult(lhs=lhs, rhs=rhs, residual=abs(lhs - rhs), tol=tol, mppc_violation=check.violation)
