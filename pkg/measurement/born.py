"""Post-measurement states, generalized Born probabilities and the sector
structure of the composite after measurement."""
import logging
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from algebra import StarAlgebra, from_span, full_matrix_algebra, tensor
from errors import DimensionMismatch, UnknownOutcome
from measurement.process import MeasurementProcess, coupling_unitary, pointer_algebra, pointer_position
from numeric import CMatrix, adjoint, kron, partial_trace
from sectors import SubcentralMeasure, sector_probability, subcentral_measure
from states import GNSRepresentation, State, gns

logger = logging.getLogger(__name__)


def _check_object_state(process: MeasurementProcess, phi: State) -> None:
    if phi.ambient_dim != process.object_dim:
        raise DimensionMismatch(
            f"state on {phi.ambient_dim} dims, measured system has {process.object_dim}"
        )


def initial_state(process: MeasurementProcess, phi: State) -> State:
    """phi (x) psi_m."""
    _check_object_state(process, phi)
    return State(kron(phi.density, process.apparatus.density))


def post_state(process: MeasurementProcess, phi: State) -> State:
    """phi_m(X) = (phi (x) psi)(U* X U), i.e. density U (rho (x) psi) U*."""
    U = process.unitary
    return State(U @ initial_state(process, phi).density @ adjoint(U))


def generalized_born(process: MeasurementProcess, phi: State, outcomes: Iterable[float]) -> float:
    """(phi (x) psi_m)(U* (1 (x) chi_Delta) U)."""
    indices = process.pvm.indices(outcomes)
    rho = initial_state(process, phi).density
    value = np.trace(rho @ process.heisenberg(process.pointer_indicator(indices)))
    return float(value.real)


def _outcome_function(process: MeasurementProcess, f: Mapping[float, complex]) -> np.ndarray:
    values = np.zeros(len(process.pvm), dtype=np.complex128)
    seen = set()
    for outcome, value in f.items():
        j = process.pvm.index_of(outcome)
        values[j] = value
        seen.add(j)
    missing = [process.outcomes[j] for j in range(len(process.pvm)) if j not in seen]
    if missing:
        raise UnknownOutcome(f"function is undefined on outcomes {missing}")
    return values


def instrument_functional_composite(
    process: MeasurementProcess,
    phi: State,
    f: Mapping[float, complex],
    X,
) -> complex:
    """(phi (x) psi_m)(U* (X (x) f(pointer)) U) for an object observable X."""
    values = _outcome_function(process, f)
    X = np.asarray(X, dtype=np.complex128)
    if X.shape != (process.object_dim, process.object_dim):
        raise DimensionMismatch(f"observable of shape {X.shape} on a {process.object_dim}-dim system")
    pointer = np.diag(values)
    rho = initial_state(process, phi).density
    return complex(np.trace(rho @ process.heisenberg(kron(X, pointer))))


def pointer_marginal(process: MeasurementProcess, state: State) -> CMatrix:
    return partial_trace(state.density, (process.object_dim, process.pointer_dim), keep=1)


def object_marginal(process: MeasurementProcess, state: State) -> CMatrix:
    return partial_trace(state.density, (process.object_dim, process.pointer_dim), keep=0)


@dataclass(frozen=True, eq=False)
class CompositeSectors:
    """Decomposition of the post-measurement state over 1 (x) pointer algebra."""

    process: MeasurementProcess
    post: State
    representation: GNSRepresentation
    measure: SubcentralMeasure
    outcome_of: Mapping[str, float]
    purity_residuals: Mapping[str, float]

    def outcome_probability(self, outcomes: Iterable[float]) -> float:
        selected = {self.process.outcomes[j] for j in self.process.pvm.indices(outcomes)}
        labels = [label for label, a in self.outcome_of.items() if a in selected]
        return sector_probability(self.measure, labels)

    def consistency_residual(self, phi: State) -> float:
        """max over outcomes of |sector probability - generalized Born probability|."""
        return max(
            abs(self.outcome_probability([a]) - generalized_born(self.process, phi, [a]))
            for a in self.process.outcomes
        )

    def worst_purity_residual(self) -> float:
        return max(self.purity_residuals.values(), default=0.0)


def composite_sector_measure(
    process: MeasurementProcess,
    phi: State,
    object_algebra: StarAlgebra | None = None,
) -> CompositeSectors:
    """Subcentral measure of phi_m over B = pi(1 (x) pointer algebra).

    Each component is read as a pointer outcome; its pointer marginal should
    be a point mass.
    """
    post = post_state(process, phi)
    obj = object_algebra or full_matrix_algebra(process.object_dim)
    n, d = process.pointer_dim, process.object_dim
    composite = tensor(obj, pointer_algebra(n))
    rep = gns(composite, post)
    pointer_images = [rep.transfer(kron(np.eye(d), pointer_position(n, k))) for k in range(n)]
    subalgebra = from_span(pointer_images, rep.gns_dim, label="1 (x) pointer")
    measure = subcentral_measure(rep, post, subalgebra)

    outcome_of = {}
    purity = {}
    for label, z in measure.projections.items():
        k = int(np.argmax([np.trace(z @ P).real for P in pointer_images]))
        outcome_of[label] = process.outcomes[k]
    for component in measure.components:
        marginal = partial_trace(component.state.density, (d, n), keep=1)
        k = process.outcomes.index(outcome_of[component.label])
        purity[component.label] = float(1.0 - marginal[k, k].real)
    logger.debug(
        "composite_sector_measure: %d sectors on a %d-dim GNS space", len(measure.components), rep.gns_dim
    )
    return CompositeSectors(
        process=process,
        post=post,
        representation=rep,
        measure=measure,
        outcome_of=outcome_of,
        purity_residuals=purity,
    )


def sequential_pointer_distribution(process: MeasurementProcess, phi: State) -> np.ndarray:
    """Joint distribution of two pointers after coupling the same PVM twice,
    the second time to a fresh copy of the apparatus."""
    _check_object_state(process, phi)
    d, n = process.object_dim, process.pointer_dim
    eye_n = np.eye(n)
    first = kron(process.unitary, eye_n)
    # second coupling acts on object and second pointer
    second = _lift_second(coupling_unitary(process.pvm, process.shifts).reshape(d, n, d, n), d, n)
    rho = kron(kron(phi.density, process.apparatus.density), process.apparatus.density)
    total = second @ first
    final = total @ rho @ adjoint(total)
    joint = np.einsum("akbakb->kb", final.reshape(d, n, n, d, n, n)).real
    return joint


def _lift_second(second: np.ndarray, d: int, n: int) -> CMatrix:
    """Embed an operator on object (x) pointer2 into object (x) pointer1 (x) pointer2."""
    full = np.einsum("aibj,kl->akiblj", second, np.eye(n))
    return full.reshape(d * n * n, d * n * n)
