"""Exact series, enumeration oracles, and saddle-point asymptotics for
Fishburn-style triangular matrix counting."""

from .series import TruncatedSeries, BivariateSeries, exp_linear, sum_product
from .families import (
    ALL,
    FAMILIES,
    NAMED_IDS,
    PRIMITIVE,
    STATS,
    LambdaSpec,
    family_gf,
    family_series,
    fishburn_gf,
    fishburn_numbers,
    labeled_numbers,
    labeled_profile,
    lambda_series,
    named_gf,
    named_sequence,
    recursive_gf,
    row_fishburn_gf,
    self_dual_gf,
    stat_gf,
    stat_jet,
    stat_profile,
    variant_gf,
)
from .families import canonical_family
from .identities import (
    GlaisherPair,
    IdentityReport,
    identity_suite,
    verify_a035378_pairing,
    verify_a158690_forms,
    verify_andrews_jelinek,
    verify_glaisher,
)
from .oracle import OracleMatrix, enumerate_matrices, histogram, persymmetry, total_weight
from .oeis import (
    CrossCheckReport,
    OeisSequence,
    cross_check,
    fetch,
    fixture_ids,
    format_bfile,
    parse_bfile,
)
from .asymptotics import (
    AsymptoticForm,
    ConvergenceReport,
    RefinedExpansion,
    TABLE_IDS,
    a158690_expansion,
    blr_expansion,
    constants_ext,
    constants_fishburn,
    constants_fractional,
    constants_general,
    constants_proto,
    constants_row_fishburn,
    constants_self_dual,
    constants_small2,
    named_form,
    ratio_sequence,
    refined_a158690,
    refined_blr,
)
from .saddle import (
    CentralConstants,
    SaddleState,
    an_approx,
    ank_approx,
    check_bounds,
    llt_distance,
    optimum,
    phi_surface,
    profile_csv,
    solve_saddle,
    window_tail,
)
from .distributions import (
    ComparisonReport,
    DistributionTable,
    LimitLaw,
    ParityEntry,
    ParityReport,
    compare,
    distribution,
    histogram_csv,
    histogram_rows,
    limit_law_for,
    parity_report,
    report_json,
    stat_mean_variance,
)

__version__ = "0.1.0"

__all__ = [
    "TruncatedSeries",
    "BivariateSeries",
    "exp_linear",
    "sum_product",
    "LambdaSpec",
    "ALL",
    "PRIMITIVE",
    "FAMILIES",
    "STATS",
    "NAMED_IDS",
    "lambda_series",
    "family_gf",
    "family_series",
    "fishburn_gf",
    "row_fishburn_gf",
    "self_dual_gf",
    "stat_gf",
    "stat_profile",
    "stat_jet",
    "recursive_gf",
    "variant_gf",
    "named_gf",
    "named_sequence",
    "fishburn_numbers",
    "labeled_numbers",
    "labeled_profile",
    "IdentityReport",
    "GlaisherPair",
    "identity_suite",
    "verify_andrews_jelinek",
    "verify_glaisher",
    "verify_a158690_forms",
    "verify_a035378_pairing",
    "canonical_family",
    "OracleMatrix",
    "enumerate_matrices",
    "histogram",
    "persymmetry",
    "total_weight",
    "OeisSequence",
    "CrossCheckReport",
    "fetch",
    "cross_check",
    "fixture_ids",
    "parse_bfile",
    "format_bfile",
    "AsymptoticForm",
    "ConvergenceReport",
    "RefinedExpansion",
    "TABLE_IDS",
    "named_form",
    "ratio_sequence",
    "constants_proto",
    "constants_general",
    "constants_row_fishburn",
    "constants_fishburn",
    "constants_fractional",
    "constants_ext",
    "constants_self_dual",
    "constants_small2",
    "a158690_expansion",
    "refined_a158690",
    "blr_expansion",
    "refined_blr",
    "CentralConstants",
    "SaddleState",
    "optimum",
    "solve_saddle",
    "an_approx",
    "ank_approx",
    "llt_distance",
    "window_tail",
    "profile_csv",
    "check_bounds",
    "phi_surface",
    "DistributionTable",
    "LimitLaw",
    "ComparisonReport",
    "ParityEntry",
    "ParityReport",
    "distribution",
    "stat_mean_variance",
    "limit_law_for",
    "compare",
    "parity_report",
    "histogram_rows",
    "histogram_csv",
    "report_json",
    "__version__",
]
