from states.gns import GNSRepresentation, gns, normal_lift
from states.state import (
    State,
    expectation,
    is_state,
    maximally_mixed,
    mixture,
    restrict,
    state_from_density,
    state_from_functional,
    state_from_vector,
)

__all__ = [
    "GNSRepresentation",
    "State",
    "expectation",
    "gns",
    "is_state",
    "maximally_mixed",
    "mixture",
    "normal_lift",
    "restrict",
    "state_from_density",
    "state_from_functional",
    "state_from_vector",
]
