"""Precomputed analysis bundle shared by the CLI and the HTTP service.

Bundles a snapshot with everything derivable from it once: the graph,
reach table, PageRank scores, normalized improvement/regression reports,
the threshold selections and their union. All members are immutable, so
a bundle can be shared freely across threads and requests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .analytics import IMPACT_SELECTION, SupportSet
from .centrality import PageRankScores, pagerank
from .graph import DependencyGraph, ReachTable, build_graph, reach_counts
from .impact import (
    IMPROVEMENT,
    REGRESSION,
    ImpactReport,
    SelectionResult,
    impact,
    normalize,
    preset_scenario,
    select_to_threshold,
    union_selection,
)
from .snapshot import EcosystemSnapshot


@dataclass(frozen=True)
class AnalysisBundle:
    snapshot: EcosystemSnapshot
    graph: DependencyGraph
    reach: ReachTable
    pagerank_scores: PageRankScores
    reports: Mapping[str, ImpactReport]
    selections: Mapping[str, SelectionResult]
    union_set: frozenset[str]
    tau: float
    damping: float
    snapshot_hash: str

    @classmethod
    def from_snapshot(
        cls,
        snapshot: EcosystemSnapshot,
        *,
        tau: float = 0.80,
        damping: float = 0.85,
        pagerank_tol: float = 1e-10,
        pagerank_max_iter: int = 200,
    ) -> "AnalysisBundle":
        graph = build_graph(snapshot)
        reach = reach_counts(graph)
        scores = pagerank(graph, damping=damping, tol=pagerank_tol, max_iter=pagerank_max_iter)
        reports = {
            label: normalize(impact(snapshot, reach, preset_scenario(snapshot, label)))
            for label in (IMPROVEMENT, REGRESSION)
        }
        selections = {
            label: select_to_threshold(report, tau) for label, report in reports.items()
        }
        union = union_selection(*selections.values())
        return cls(
            snapshot=snapshot,
            graph=graph,
            reach=reach,
            pagerank_scores=scores,
            reports=reports,
            selections=selections,
            union_set=union,
            tau=tau,
            damping=damping,
            snapshot_hash=snapshot.content_hash(),
        )

    def impact_support_set(self, label: str = "impact-driven") -> SupportSet:
        return SupportSet(
            label=label, members=self.union_set, source=IMPACT_SELECTION, unresolved=()
        )
