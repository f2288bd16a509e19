"""Dependency-propagated maintenance-impact analysis for package ecosystems."""

from __future__ import annotations

__version__ = "0.1.0"

from .analytics import (
    ExclusionReport,
    StrategyEvaluation,
    SupportSet,
    evaluate_support_set,
    exclusion_analysis,
    load_external_set,
    maintainer_reach,
    metadata_accessibility,
    resolve_support_set,
)
from .bundle import AnalysisBundle
from .centrality import (
    ComparisonReport,
    PageRankScores,
    budget_matched_compare,
    jaccard,
    pagerank,
    pearson,
    spearman,
    top_k,
)
from .errors import (
    AmbiguousNameError,
    DegenerateScenarioError,
    DomainError,
    EcoImpactError,
    InvalidNameError,
    RequirementParseError,
    SnapshotFormatError,
    UndefinedCorrelationError,
    UnknownPackageError,
)
from .graph import (
    CondensedDag,
    DependencyGraph,
    ReachTable,
    build_graph,
    closure,
    condense,
    reach_counts,
)
from .impact import (
    BaselineResult,
    ImpactReport,
    Scenario,
    SelectionResult,
    ecosystem_state,
    impact,
    improvement_scenario,
    normalize,
    random_baseline,
    regression_scenario,
    select_to_threshold,
    union_selection,
)
from .names import normalize_name
from .requirements import RequirementSpec, parse_requirement
from .snapshot import (
    EcosystemSnapshot,
    FilterStats,
    OwnerRef,
    PackageRecord,
    build_snapshot,
    read_records_ndjson,
    record_from_dict,
)

__all__ = [
    "AmbiguousNameError",
    "AnalysisBundle",
    "BaselineResult",
    "ComparisonReport",
    "CondensedDag",
    "DegenerateScenarioError",
    "DependencyGraph",
    "DomainError",
    "EcoImpactError",
    "EcosystemSnapshot",
    "ExclusionReport",
    "FilterStats",
    "ImpactReport",
    "InvalidNameError",
    "OwnerRef",
    "PackageRecord",
    "PageRankScores",
    "ReachTable",
    "RequirementParseError",
    "RequirementSpec",
    "Scenario",
    "SelectionResult",
    "SnapshotFormatError",
    "StrategyEvaluation",
    "SupportSet",
    "UndefinedCorrelationError",
    "UnknownPackageError",
    "budget_matched_compare",
    "build_graph",
    "build_snapshot",
    "closure",
    "condense",
    "ecosystem_state",
    "evaluate_support_set",
    "exclusion_analysis",
    "impact",
    "improvement_scenario",
    "jaccard",
    "load_external_set",
    "maintainer_reach",
    "metadata_accessibility",
    "normalize",
    "normalize_name",
    "pagerank",
    "parse_requirement",
    "pearson",
    "random_baseline",
    "reach_counts",
    "read_records_ndjson",
    "record_from_dict",
    "regression_scenario",
    "resolve_support_set",
    "select_to_threshold",
    "spearman",
    "top_k",
    "union_selection",
]
