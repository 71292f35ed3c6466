"""Factor states, disjointness and quasi-equivalence of states."""
import logging

import numpy as np

import toolkit_config
from algebra import StarAlgebra
from errors import NotFactorState
from sectors.center import center
from states import State, gns, mixture, normal_lift

logger = logging.getLogger(__name__)

SEPARATION_TOL = 1e-9


def is_factor_state(alg: StarAlgebra, omega: State, tol: float = toolkit_config.rank_tol) -> bool:
    return center(gns(alg, omega, tol=tol), tol=tol).dim == 1


def separation(alg: StarAlgebra, omega1: State, omega2: State) -> tuple[float, float]:
    """(omega1~(z), omega2~(z)) for the largest central projection z of the
    joint GNS space on which omega2 vanishes."""
    rep = gns(alg, mixture([0.5, 0.5], [omega1, omega2]))
    decomposition = center(rep)
    lifted1 = normal_lift(rep, omega1)
    lifted2 = normal_lift(rep, omega2)
    z = np.zeros((rep.gns_dim, rep.gns_dim), dtype=np.complex128)
    budget = SEPARATION_TOL / max(1, len(decomposition.minimal_projections))
    for zk in decomposition.minimal_projections:
        if np.trace(lifted2.density @ zk).real <= budget:
            z = z + zk
    return float(np.trace(lifted1.density @ z).real), float(np.trace(lifted2.density @ z).real)


def are_disjoint(alg: StarAlgebra, omega1: State, omega2: State) -> bool:
    weight1, weight2 = separation(alg, omega1, omega2)
    logger.debug("are_disjoint: separating projection carries (%.3e, %.3e)", weight1, weight2)
    return weight1 >= 1.0 - SEPARATION_TOL and weight2 <= SEPARATION_TOL


def are_quasi_equivalent(alg: StarAlgebra, omega1: State, omega2: State) -> bool:
    """For factor states: quasi-equivalent iff not disjoint."""
    for name, omega in (("first", omega1), ("second", omega2)):
        if not is_factor_state(alg, omega):
            raise NotFactorState(f"{name} state is not a factor state")
    return not are_disjoint(alg, omega1, omega2)
