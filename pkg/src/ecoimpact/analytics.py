"""Support-set scorecards: impact shares, maintainer reach, metadata access.

Any support set, whether produced by threshold selection or loaded from
an external mechanism's package list, is evaluated along the same
dimensions so strategies stay comparable row by row: cumulative impact
shares against the global scenario totals, reached maintainers,
contact/donation metadata coverage, and repository-link exclusions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Collection, Iterable, Mapping

from .errors import EcoImpactError, InvalidNameError
from .graph import ReachTable
from .impact import IMPROVEMENT, REGRESSION, ImpactReport
from .names import normalize_name
from .snapshot import EcosystemSnapshot

IMPACT_SELECTION = "impact-selection"
EXTERNAL_LIST = "external-list"

STRATEGY_CSV_COLUMNS = (
    "label",
    "package_count",
    "ecosystem_fraction",
    "improvement_share",
    "regression_share",
    "total_individuals",
    "distinct_maintainers",
    "single_maintainer_count",
    "single_maintainer_fraction",
    "contact_count",
    "contact_fraction",
    "donation_count",
    "donation_fraction",
    "contact_and_donation_count",
    "contact_and_donation_fraction",
    "excluded_count",
    "excluded_fraction",
    "unresolved_count",
)


@dataclass(frozen=True)
class SupportSet:
    """A labeled set of snapshot packages to evaluate as one strategy.

    ``unresolved`` carries external entries that did not resolve against
    the snapshot; they never abort evaluation and surface as a quality
    signal in the scorecard.
    """

    label: str
    members: frozenset[str]
    source: str
    unresolved: tuple[str, ...] = ()


@dataclass(frozen=True)
class MaintainerReach:
    total_individuals: int
    distinct_maintainers: int
    single_maintainer_count: int
    single_maintainer_fraction: float


@dataclass(frozen=True)
class MetadataAccessibility:
    contact_count: int
    donation_count: int
    contact_and_donation_count: int
    neither_count: int
    contact_fraction: float
    donation_fraction: float
    contact_and_donation_fraction: float
    is_empty: bool


@dataclass(frozen=True)
class ExclusionReport:
    """Packages unassessable for lack of a repository link.

    For impact selections this is the comparable-reach frontier: every
    non-member package without a repository link whose reach is at least
    the smallest reach inside the selection. For external lists it is
    simply the members without repository links.
    """

    mode: str
    packages: tuple[str, ...]
    reach_of: Mapping[str, int]
    min_reach: int | None

    @property
    def count(self) -> int:
        return len(self.packages)


@dataclass(frozen=True)
class StrategyEvaluation:
    """One strategy's full scorecard row."""

    label: str
    package_count: int
    ecosystem_fraction: float
    improvement_share: float
    regression_share: float
    total_individuals: int
    distinct_maintainers: int
    single_maintainer_count: int
    single_maintainer_fraction: float
    contact_count: int
    contact_fraction: float
    donation_count: int
    donation_fraction: float
    contact_and_donation_count: int
    contact_and_donation_fraction: float
    excluded_count: int
    excluded_fraction: float
    unresolved_count: int

    def to_dict(self) -> dict[str, Any]:
        return {column: getattr(self, column) for column in STRATEGY_CSV_COLUMNS}


def resolve_support_set(
    names: Iterable[str],
    snapshot: EcosystemSnapshot,
    *,
    label: str,
    source: str = EXTERNAL_LIST,
) -> SupportSet:
    """Normalize, deduplicate, and split names into members and unresolved."""
    members: set[str] = set()
    unresolved: set[str] = set()
    for raw in names:
        try:
            name = normalize_name(raw)
        except InvalidNameError:
            continue
        if name in snapshot.packages:
            members.add(name)
        else:
            unresolved.add(name)
    return SupportSet(
        label=label,
        members=frozenset(members),
        source=source,
        unresolved=tuple(sorted(unresolved)),
    )


def load_external_set(
    path: str | Path, snapshot: EcosystemSnapshot, *, label: str | None = None
) -> SupportSet:
    """Read a newline-delimited package-name file into a SupportSet."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise EcoImpactError(f"cannot read support-set file {path}: {exc}") from exc
    names = [line.strip() for line in lines if line.strip()]
    return resolve_support_set(
        names, snapshot, label=label or path.stem, source=EXTERNAL_LIST
    )


def maintainer_reach(support_set: SupportSet, snapshot: EcosystemSnapshot) -> MaintainerReach:
    """Count reached individuals via repository ownership.

    Individually owned packages count one maintainer each; organization
    owned packages count every associated member. ``total_individuals``
    sums members per package occurrence, ``distinct_maintainers`` counts
    the union. Packages without an owner contribute nothing.
    """
    total = 0
    distinct: set[str] = set()
    single = 0
    for name in support_set.members:
        owner = snapshot.packages[name].repository_owner
        if owner is None:
            continue
        total += len(owner.member_ids)
        distinct.update(owner.member_ids)
        if len(owner.member_ids) == 1:
            single += 1
    count = len(support_set.members)
    return MaintainerReach(
        total_individuals=total,
        distinct_maintainers=len(distinct),
        single_maintainer_count=single,
        single_maintainer_fraction=single / count if count else 0.0,
    )


def metadata_accessibility(
    support_set: SupportSet, snapshot: EcosystemSnapshot
) -> MetadataAccessibility:
    """Contact and donation metadata coverage over the set's members."""
    contact = donation = both = neither = 0
    for name in support_set.members:
        rec = snapshot.packages[name]
        if rec.has_contact_info:
            contact += 1
        if rec.has_donation_link:
            donation += 1
        if rec.has_contact_info and rec.has_donation_link:
            both += 1
        if not rec.has_contact_info and not rec.has_donation_link:
            neither += 1
    count = len(support_set.members)
    denom = count if count else 1
    return MetadataAccessibility(
        contact_count=contact,
        donation_count=donation,
        contact_and_donation_count=both,
        neither_count=neither,
        contact_fraction=contact / denom if count else 0.0,
        donation_fraction=donation / denom if count else 0.0,
        contact_and_donation_fraction=both / denom if count else 0.0,
        is_empty=count == 0,
    )


def exclusion_analysis(
    support_set: SupportSet,
    snapshot: EcosystemSnapshot,
    reach: ReachTable,
    *,
    min_reach: int | None = None,
) -> ExclusionReport:
    """Repository-link exclusion effects for one support set.

    ``min_reach`` overrides the comparable-reach threshold, which
    otherwise defaults to the smallest reach inside the selection.
    """
    if support_set.source == IMPACT_SELECTION:
        if min_reach is None:
            min_reach = min(
                (reach[name] for name in support_set.members), default=None
            )
        if min_reach is None:
            return ExclusionReport(mode="frontier", packages=(), reach_of={}, min_reach=None)
        hits = [
            name
            for name, rec in snapshot.packages.items()
            if not rec.has_repository_link
            and name not in support_set.members
            and reach[name] >= min_reach
        ]
        mode = "frontier"
    else:
        hits = [
            name
            for name in sorted(support_set.members)
            if not snapshot.packages[name].has_repository_link
        ]
        mode = "members"
    hits.sort(key=lambda name: (-reach[name], name))
    return ExclusionReport(
        mode=mode,
        packages=tuple(hits),
        reach_of={name: reach[name] for name in hits},
        min_reach=min_reach if mode == "frontier" else None,
    )


def cumulative_share(report: ImpactReport, members: Collection[str]) -> float:
    """Sum of the members' global normalized shares (zero when unscored)."""
    shares = report.require_normalized()
    return math.fsum(shares.get(name, 0.0) for name in sorted(set(members)))


def evaluate_support_set(
    support_set: SupportSet,
    snapshot: EcosystemSnapshot,
    reach: ReachTable,
    global_reports: Mapping[str, ImpactReport],
    *,
    min_reach: int | None = None,
) -> StrategyEvaluation:
    """Aggregate one support set's full scorecard row.

    Impact shares are the set's cumulative normalized shares measured
    against the whole-ecosystem scenario totals, so rows from different
    strategies are directly comparable.
    """
    reach_fields = maintainer_reach(support_set, snapshot)
    access = metadata_accessibility(support_set, snapshot)
    exclusions = exclusion_analysis(support_set, snapshot, reach, min_reach=min_reach)
    count = len(support_set.members)
    return StrategyEvaluation(
        label=support_set.label,
        package_count=count,
        ecosystem_fraction=count / snapshot.n_packages if snapshot.n_packages else 0.0,
        improvement_share=cumulative_share(global_reports[IMPROVEMENT], support_set.members),
        regression_share=cumulative_share(global_reports[REGRESSION], support_set.members),
        total_individuals=reach_fields.total_individuals,
        distinct_maintainers=reach_fields.distinct_maintainers,
        single_maintainer_count=reach_fields.single_maintainer_count,
        single_maintainer_fraction=reach_fields.single_maintainer_fraction,
        contact_count=access.contact_count,
        contact_fraction=access.contact_fraction,
        donation_count=access.donation_count,
        donation_fraction=access.donation_fraction,
        contact_and_donation_count=access.contact_and_donation_count,
        contact_and_donation_fraction=access.contact_and_donation_fraction,
        excluded_count=exclusions.count,
        excluded_fraction=exclusions.count / count if count else 0.0,
        unresolved_count=len(support_set.unresolved),
    )


def strategies_to_csv(rows: Iterable[StrategyEvaluation]) -> str:
    """CSV rows in the documented scorecard column order."""
    lines = [",".join(STRATEGY_CSV_COLUMNS)]
    for row in rows:
        data = row.to_dict()
        rendered = []
        for column in STRATEGY_CSV_COLUMNS:
            value = data[column]
            rendered.append(repr(value) if isinstance(value, float) else str(value))
        lines.append(",".join(rendered))
    return "\n".join(lines) + "\n"
