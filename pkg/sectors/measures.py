"""Central and subcentral measures, kappa embedding and instrument functionals."""
import logging
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

import toolkit_config
from algebra import StarAlgebra, contains, generate
from errors import DimensionMismatch, NotAState, NotInAlgebra, NotSubcentral, UnknownLabel
from numeric import CMatrix, frobenius
from sectors.center import center, labelled_projections
from states import GNSRepresentation, State, mixture, normal_lift, state_from_functional

logger = logging.getLogger(__name__)

ZERO_WEIGHT = 1e-12
SUBCENTRAL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SectorComponent:
    label: str
    weight: float
    state: State  # rho_k on the source algebra
    projection: CMatrix  # z_k on H_omega
    lifted: State  # z_k phi~ z_k / mu_k on H_omega


@dataclass(frozen=True, eq=False)
class SubcentralMeasure:
    components: tuple[SectorComponent, ...]
    subalgebra: StarAlgebra
    representation: GNSRepresentation
    lifted: State
    projections: Mapping[str, CMatrix]
    suppressed: tuple[str, ...] = ()

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.components)

    @property
    def all_labels(self) -> tuple[str, ...]:
        return tuple(self.projections)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(c.weight for c in self.components)

    def component(self, label: str) -> SectorComponent:
        for c in self.components:
            if c.label == label:
                return c
        raise UnknownLabel(f"no sector component labelled {label!r}")

    def barycenter_residual(self, omega: State) -> float:
        """max_b |sum_k mu_k rho_k(b) - omega(b)| over the algebra basis."""
        alg = self.representation.algebra
        total = sum(c.weight * c.state.density for c in self.components)
        return float(np.max(np.abs(np.einsum("ij,kji->k", total - omega.density, alg.stacked))))


def scalar_subalgebra(rep: GNSRepresentation) -> StarAlgebra:
    return generate([], rep.gns_dim, label="C1")


def check_subcentral(rep: GNSRepresentation, subalgebra: StarAlgebra, tol: float = SUBCENTRAL_TOL) -> float:
    """Worst violation of subalgebra being inside pi(A)'' and commuting with pi(A)."""
    if subalgebra.ambient_dim != rep.gns_dim:
        raise DimensionMismatch(
            f"subalgebra acts on {subalgebra.ambient_dim} dims, H_omega has {rep.gns_dim}"
        )
    image = rep.image_algebra
    worst = 0.0
    for b in subalgebra.basis:
        worst = max(worst, contains(image, b).residual)
        for p in rep.rep_matrices:
            worst = max(worst, frobenius(b @ p - p @ b))
    if worst > tol:
        raise NotSubcentral(f"subalgebra is not inside the center (residual {worst:.3e})")
    return worst


def subcentral_measure(
    rep: GNSRepresentation,
    omega: State,
    subalgebra: StarAlgebra | None = None,
    tol: float = toolkit_config.rank_tol,
) -> SubcentralMeasure:
    """Decompose omega over the minimal projections z_k of a subalgebra of the center.

    mu_k = phi~(z_k) and rho_k(b) = phi~(z_k pi(b)) / mu_k, where phi~ is the
    normal lift of omega to H_omega.
    """
    if subalgebra is None:
        subalgebra = center(rep, tol=tol).center
    check_subcentral(rep, subalgebra)
    lifted = normal_lift(rep, omega)
    projections, labels, _ = labelled_projections(subalgebra)

    alg = rep.algebra
    components = []
    suppressed = []
    for z, label in zip(projections, labels):
        weighted = lifted.density @ z
        mu = float(np.trace(weighted).real)
        if mu <= ZERO_WEIGHT:
            suppressed.append(label)
            continue
        values = np.einsum("ab,kba->k", weighted, rep.stacked) / mu
        components.append(
            SectorComponent(
                label=label,
                weight=mu,
                state=state_from_functional(alg, values),
                projection=z,
                lifted=State(z @ lifted.density @ z / mu),
            )
        )
    if suppressed:
        logger.debug("subcentral_measure: suppressed zero-weight sectors %s", suppressed)
    logger.debug(
        "subcentral_measure: %d components over subalgebra of dim %d", len(components), subalgebra.dim
    )
    return SubcentralMeasure(
        components=tuple(components),
        subalgebra=subalgebra,
        representation=rep,
        lifted=lifted,
        projections=dict(zip(labels, projections)),
        suppressed=tuple(suppressed),
    )


def central_measure(rep: GNSRepresentation, omega: State, tol: float = toolkit_config.rank_tol) -> SubcentralMeasure:
    return subcentral_measure(rep, omega, None, tol=tol)


def _check_labels(measure: SubcentralMeasure, labels: Iterable[str]) -> list[str]:
    labels = list(labels)
    unknown = [label for label in labels if label not in measure.projections]
    if unknown:
        raise UnknownLabel(f"unknown sector labels {unknown}")
    return labels


def _check_function(measure: SubcentralMeasure, f: Mapping[str, complex]) -> None:
    _check_labels(measure, f)
    missing = [label for label in measure.all_labels if label not in f]
    if missing:
        raise UnknownLabel(f"function is undefined on sectors {missing}")


def indicator(measure: SubcentralMeasure, labels: Iterable[str]) -> dict[str, complex]:
    selected = set(_check_labels(measure, labels))
    return {label: 1.0 if label in selected else 0.0 for label in measure.all_labels}


def sector_probability(measure: SubcentralMeasure, labels: Iterable[str]) -> float:
    selected = set(_check_labels(measure, labels))
    return float(sum(c.weight for c in measure.components if c.label in selected))


def kappa_embed(measure: SubcentralMeasure, f: Mapping[str, complex]) -> CMatrix:
    """kappa(f) = sum_k f(k) z_k."""
    _check_function(measure, f)
    return sum(complex(f[label]) * z for label, z in measure.projections.items())


def kappa_pairing(measure: SubcentralMeasure, f: Mapping[str, complex], X) -> complex:
    """phi~(kappa(f) pi(X)); equals <Omega, kappa(f) pi(X) Omega> when the
    measure decomposes the GNS-defining state."""
    rep = measure.representation
    piX = rep.transfer(X)
    return complex(np.trace(measure.lifted.density @ kappa_embed(measure, f) @ piX))


def instrument_functional(measure: SubcentralMeasure, f: Mapping[str, complex], X) -> complex:
    """I(f; d^B omega)(X) = sum_k mu_k f(k) rho_k(X)."""
    _check_function(measure, f)
    membership = contains(measure.representation.algebra, X)
    if not membership:
        raise NotInAlgebra(f"observable is not in the algebra (residual {membership.residual:.3e})")
    return complex(sum(c.weight * complex(f[c.label]) * c.state(X) for c in measure.components))


def sector_barycenter(measure: SubcentralMeasure, labels: Iterable[str]) -> State:
    """Normalized barycenter of the components whose labels lie in the set."""
    selected = set(_check_labels(measure, labels))
    chosen = [c for c in measure.components if c.label in selected]
    mass = sum(c.weight for c in chosen)
    if mass <= ZERO_WEIGHT:
        raise NotAState(f"sector set {sorted(selected)} carries no weight")
    return mixture([c.weight / mass for c in chosen], [c.state for c in chosen])


def coarse_grain(measure: SubcentralMeasure, coarser: StarAlgebra) -> SubcentralMeasure:
    """Merge the components of a finer measure along the minimal projections
    of a subalgebra B1 of its subalgebra B2."""
    for b in coarser.basis:
        membership = contains(measure.subalgebra, b)
        if not membership:
            raise NotSubcentral(
                f"coarser algebra is not inside the finer one (residual {membership.residual:.3e})"
            )
    projections, labels, _ = labelled_projections(coarser)
    components = []
    suppressed = []
    for Z, label in zip(projections, labels):
        # a fine z_k lies under Z iff trace(Z z_k) = rank z_k
        inside = [c for c in measure.components if abs(np.trace(Z @ c.projection).real - np.trace(c.projection).real) < 0.5]
        mass = sum(c.weight for c in inside)
        if mass <= ZERO_WEIGHT:
            suppressed.append(label)
            continue
        components.append(
            SectorComponent(
                label=label,
                weight=mass,
                state=mixture([c.weight / mass for c in inside], [c.state for c in inside]),
                projection=Z,
                lifted=mixture([c.weight / mass for c in inside], [c.lifted for c in inside]),
            )
        )
    return SubcentralMeasure(
        components=tuple(components),
        subalgebra=coarser,
        representation=measure.representation,
        lifted=measure.lifted,
        projections=dict(zip(labels, projections)),
        suppressed=tuple(suppressed),
    )
