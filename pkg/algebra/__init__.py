from algebra.star_algebra import (
    Membership,
    StarAlgebra,
    contains,
    direct_sum,
    from_span,
    full_matrix_algebra,
    generate,
    span_equal,
    tensor,
)

__all__ = [
    "Membership",
    "StarAlgebra",
    "contains",
    "direct_sum",
    "from_span",
    "full_matrix_algebra",
    "generate",
    "span_equal",
    "tensor",
]
