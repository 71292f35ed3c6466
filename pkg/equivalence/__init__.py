from equivalence.born_rule import (
    BornRuleResult,
    born_rule,
    object_pvm_on_composite,
    pointer_readout_pvm,
    product_family,
    verify_mppc,
)
from equivalence.spectral import (
    AlignedOutcome,
    JointDistribution,
    RelationCheck,
    SpectralCheck,
    StateFamily,
    align_outcomes,
    equivalence_relation_check,
    joint_distribution,
    spectrally_equivalent,
    vector_criterion_residual,
)

__all__ = [
    "AlignedOutcome",
    "BornRuleResult",
    "JointDistribution",
    "RelationCheck",
    "SpectralCheck",
    "StateFamily",
    "align_outcomes",
    "born_rule",
    "equivalence_relation_check",
    "joint_distribution",
    "object_pvm_on_composite",
    "pointer_readout_pvm",
    "product_family",
    "spectrally_equivalent",
    "vector_criterion_residual",
    "verify_mppc",
]
