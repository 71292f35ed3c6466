from measurement.born import (
    CompositeSectors,
    composite_sector_measure,
    generalized_born,
    initial_state,
    instrument_functional_composite,
    object_marginal,
    pointer_marginal,
    post_state,
    sequential_pointer_distribution,
)
from measurement.process import (
    MeasurementProcess,
    corrupted_measurement,
    coupled_measurement,
    coupling_unitary,
    cyclic_shift,
    ideal_measurement,
    kac_takesaki_unitary,
    pointer_algebra,
    pointer_position,
    pointer_state,
)
from measurement.pvm import PVM, pvm_from_observable

__all__ = [
    "CompositeSectors",
    "MeasurementProcess",
    "PVM",
    "composite_sector_measure",
    "corrupted_measurement",
    "coupled_measurement",
    "coupling_unitary",
    "cyclic_shift",
    "generalized_born",
    "ideal_measurement",
    "initial_state",
    "instrument_functional_composite",
    "kac_takesaki_unitary",
    "object_marginal",
    "pointer_algebra",
    "pointer_marginal",
    "pointer_position",
    "pointer_state",
    "post_state",
    "pvm_from_observable",
    "sequential_pointer_distribution",
]
