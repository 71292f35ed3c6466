from sectors.center import (
    CenterDecomposition,
    center,
    commutant,
    labelled_projections,
    minimal_projections,
    relative_center,
)
from sectors.disjointness import are_disjoint, are_quasi_equivalent, is_factor_state, separation
from sectors.measures import (
    SectorComponent,
    SubcentralMeasure,
    central_measure,
    check_subcentral,
    coarse_grain,
    indicator,
    instrument_functional,
    kappa_embed,
    kappa_pairing,
    scalar_subalgebra,
    sector_barycenter,
    sector_probability,
    subcentral_measure,
)

__all__ = [
    "CenterDecomposition",
    "SectorComponent",
    "SubcentralMeasure",
    "are_disjoint",
    "are_quasi_equivalent",
    "center",
    "central_measure",
    "check_subcentral",
    "coarse_grain",
    "commutant",
    "indicator",
    "instrument_functional",
    "is_factor_state",
    "kappa_embed",
    "kappa_pairing",
    "labelled_projections",
    "minimal_projections",
    "relative_center",
    "scalar_subalgebra",
    "sector_barycenter",
    "sector_probability",
    "separation",
    "subcentral_measure",
]
