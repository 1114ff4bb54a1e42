"""Exact-arithmetic construction and E(s^2) certification of two-level
supersaturated designs built from orthogonal arrays and their two-column
interactions."""

from .builder import (
    FULL,
    INTERACTIONS_ONLY,
    MINUS_ONE,
    SINGLE_PARENT,
    SsdBuild,
    SsdFamily,
    build_full,
    build_interactions_only,
    build_minus_one,
    build_single_parent,
)
from .core import (
    DEFAULT_MAX_ORDER,
    AliasedPair,
    ColumnLabel,
    SignMatrix,
    aliasing_report,
    drop_columns,
    hadamard_design,
    hadamard_matrix,
    interaction_column,
    normalize,
    paley_hadamard,
    sylvester_hadamard,
    to_hadamard_design,
    verify_oa_strength2,
)
from .designio import (
    CsvFormatError,
    decimal_str,
    design_csv_text,
    dump_json,
    evaluate_report,
    fraction_json,
    parse_design_csv,
    read_design_csv,
    report_json,
    sidecar_json,
    write_design_csv,
)
from .es2 import (
    D_of,
    Decomposition,
    OptimalityReport,
    bound_details,
    decompose_m,
    es2_closed_form,
    es2_direct,
    es2_via_j,
    lower_bound,
    verdict,
)
from .spectral import (
    DistanceDistribution,
    GwpVector,
    JSummary,
    d_parameter,
    distance_distribution,
    gwp_via_krawtchouk,
    j_characteristic,
    j_summary,
    krawtchouk,
    sum_j_squared,
    sum_j_squared_filtered,
    verify_recursions,
)
from .verify import (
    CheckResult,
    expected_gap,
    expected_lower_bound,
    verify_lemma1,
    verify_lemma2,
    verify_theorems,
)

__version__ = "0.1.0"

__all__ = [
    "AliasedPair",
    "CheckResult",
    "ColumnLabel",
    "CsvFormatError",
    "D_of",
    "DEFAULT_MAX_ORDER",
    "Decomposition",
    "DistanceDistribution",
    "FULL",
    "GwpVector",
    "INTERACTIONS_ONLY",
    "JSummary",
    "MINUS_ONE",
    "OptimalityReport",
    "SINGLE_PARENT",
    "SignMatrix",
    "SsdBuild",
    "SsdFamily",
    "aliasing_report",
    "bound_details",
    "build_full",
    "build_interactions_only",
    "build_minus_one",
    "build_single_parent",
    "d_parameter",
    "decimal_str",
    "decompose_m",
    "design_csv_text",
    "distance_distribution",
    "drop_columns",
    "dump_json",
    "es2_closed_form",
    "es2_direct",
    "es2_via_j",
    "evaluate_report",
    "expected_gap",
    "expected_lower_bound",
    "fraction_json",
    "gwp_via_krawtchouk",
    "hadamard_design",
    "hadamard_matrix",
    "interaction_column",
    "j_characteristic",
    "j_summary",
    "krawtchouk",
    "lower_bound",
    "normalize",
    "paley_hadamard",
    "parse_design_csv",
    "read_design_csv",
    "report_json",
    "sidecar_json",
    "sum_j_squared",
    "sum_j_squared_filtered",
    "sylvester_hadamard",
    "to_hadamard_design",
    "verdict",
    "verify_lemma1",
    "verify_lemma2",
    "verify_oa_strength2",
    "verify_recursions",
    "verify_theorems",
    "write_design_csv",
]
