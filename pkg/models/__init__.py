"""Domain types.

Groups and generating sets (`group`), polynomial-growth candidate functions
(`polynomial`) and word-metric balls (`ball`), re-exported for convenient imports
elsewhere in the package.
"""

from .group import (
    AbelianGroup,
    GroupElement,
    GeneratingSet,
    ValidationReport,
    make_group,
    canonical_generating_set,
    validate_generating_set,
    require_valid,
    project_to_free_part,
    drop_first_coordinate,
)
from .polynomial import (
    MonomialBasis,
    PolyTorsionFunction,
    enumerate_basis,
    shift,
    partial_difference,
    evaluate,
    dim_reference,
)
from .ball import Ball, BallFunction
