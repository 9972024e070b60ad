"""Exact-arithmetic cover certificates over compact subsets of [0,1]^n.

Everything a verdict depends on is a rational number; irrational
quantities appear only as directed enclosures whose direction is stated
in the operation's name.  The package builds corner-dust trees whose
cover budgets can be refuted by survivor certificates, verifies and
searches budgeted covers, brackets Hausdorff distances, and samples
random digital sets reproducibly.
"""

from .baire import (
    SampleSpec,
    SplitMix64,
    TypicalityReport,
    finite_skeleton,
    sample_compact,
    typicality_report,
)
from .covers import (
    BallSpec,
    CoverReport,
    CoverSeq,
    GreedyFailure,
    ball_membership,
    ball_stability_radius,
    cover_measure_upper,
    greedy_strong_cover,
    merge_covers,
    side_budget_sum,
    strong_cover_witness,
    verify_cover,
)
from .dust import (
    BucketTable,
    DustSpec,
    DustTree,
    GapTable,
    HitTable,
    RefuterFailure,
    SurvivorCertificate,
    adversary_random,
    adversary_swallow,
    gap_table,
    generate,
    hausdorff_measure_upper,
    hit_recursion_table,
    intersect_count,
    level_buckets,
    refutation_budget_lower,
    revalidate_survivor,
    survivor_refute,
    validate,
)
from .geometry import (
    Box,
    Cube,
    DigitalSet,
    HBracket,
    Point,
    covers_box,
    diam_sq,
    dist_sq,
    hausdorff_bracket,
    min_side,
    volume,
)
from .rational import (
    DEFAULT_PRECISION,
    Scalar,
    format_scalar,
    parse_scalar,
    pow_lower,
    pow_upper,
    root_lower,
    root_upper,
    sqrt_lower,
    sqrt_upper,
)

__version__ = "0.1.0"

__all__ = [
    "BallSpec",
    "Box",
    "BucketTable",
    "CoverReport",
    "CoverSeq",
    "Cube",
    "DEFAULT_PRECISION",
    "DigitalSet",
    "DustSpec",
    "DustTree",
    "GapTable",
    "GreedyFailure",
    "HBracket",
    "HitTable",
    "Point",
    "RefuterFailure",
    "SampleSpec",
    "Scalar",
    "SplitMix64",
    "SurvivorCertificate",
    "TypicalityReport",
    "adversary_random",
    "adversary_swallow",
    "ball_membership",
    "ball_stability_radius",
    "cover_measure_upper",
    "covers_box",
    "diam_sq",
    "dist_sq",
    "finite_skeleton",
    "format_scalar",
    "gap_table",
    "generate",
    "greedy_strong_cover",
    "hausdorff_bracket",
    "hausdorff_measure_upper",
    "hit_recursion_table",
    "intersect_count",
    "level_buckets",
    "merge_covers",
    "min_side",
    "parse_scalar",
    "pow_lower",
    "pow_upper",
    "refutation_budget_lower",
    "revalidate_survivor",
    "root_lower",
    "root_upper",
    "sample_compact",
    "side_budget_sum",
    "sqrt_lower",
    "sqrt_upper",
    "strong_cover_witness",
    "survivor_refute",
    "typicality_report",
    "validate",
    "verify_cover",
    "volume",
]
