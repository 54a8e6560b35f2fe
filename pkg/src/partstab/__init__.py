"""Partition stability indices with newcomer and outgoer handling.

Compare two clusterings of a unit population, including snapshots whose
unit sets drift apart over time, correct raw agreement for chance, and
study expected index values over factorial designs.
"""

from .adjustment import (
    AdjustmentConfig,
    ExpectedValueEstimate,
    adjust,
    adjusted_rand_analytic,
    adjusted_wallace_analytic,
    expected_rand,
    expected_sum_squares,
    permutation_expectation,
    permute_within,
    simpson_diversity,
)
from .errors import (
    DegenerateAdjustment,
    DegenerateIndex,
    DuplicateUnit,
    EmptyInput,
    EstimateUnreliable,
    InvalidDesign,
    MalformedRecord,
    NonOverlappingSets,
    PartstabError,
    ScopeViolation,
    TooFewUnits,
    UnitSetMismatch,
)
from .indices import (
    CANONICAL_ORDER,
    MNEMONICS,
    IndexKind,
    classic_pair_counts,
    fowlkes_mallows,
    index_value,
    modified_rand,
    modified_wallace,
    rand_index,
    value_from_counts,
    wallace,
)
from .cli import IndexReport, build_report, emit_transitions
from .pairs import PairCounts, pair_counts, pair_counts_oracle
from .partitions import (
    NEWCOMER_LABEL,
    OUTGOER_LABEL,
    AlignedPair,
    ContingencyTable,
    Partition,
    align,
    contingency,
    parse_partition,
)
from .simulation import (
    GridCell,
    SimulationDesign,
    expected_value_grid,
    random_balanced_partition,
)

__version__ = "0.1.0"

__all__ = [
    "AdjustmentConfig",
    "AlignedPair",
    "CANONICAL_ORDER",
    "ContingencyTable",
    "DegenerateAdjustment",
    "DegenerateIndex",
    "DuplicateUnit",
    "EmptyInput",
    "EstimateUnreliable",
    "ExpectedValueEstimate",
    "GridCell",
    "IndexKind",
    "IndexReport",
    "InvalidDesign",
    "MNEMONICS",
    "MalformedRecord",
    "NEWCOMER_LABEL",
    "NonOverlappingSets",
    "OUTGOER_LABEL",
    "PairCounts",
    "Partition",
    "PartstabError",
    "ScopeViolation",
    "SimulationDesign",
    "TooFewUnits",
    "UnitSetMismatch",
    "adjust",
    "adjusted_rand_analytic",
    "adjusted_wallace_analytic",
    "align",
    "build_report",
    "classic_pair_counts",
    "contingency",
    "emit_transitions",
    "expected_rand",
    "expected_sum_squares",
    "expected_value_grid",
    "fowlkes_mallows",
    "index_value",
    "modified_rand",
    "modified_wallace",
    "pair_counts",
    "pair_counts_oracle",
    "parse_partition",
    "permutation_expectation",
    "permute_within",
    "rand_index",
    "random_balanced_partition",
    "simpson_diversity",
    "value_from_counts",
    "wallace",
]
