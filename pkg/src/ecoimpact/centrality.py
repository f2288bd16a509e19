"""PageRank structural importance and its comparison against impact rankings.

PageRank runs on edges oriented dependent -> dependency, so score
accumulates at the packages others rely on. Dangling nodes redistribute
their mass uniformly, keeping the score vector stochastic. Comparisons
cover top-k overlap, budget-matched cumulative impact shares, and
Spearman/Pearson correlations between PageRank and impact shares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Collection, Mapping, Sequence

import numpy as np
from scipy import sparse

from .errors import DomainError, UndefinedCorrelationError
from .graph import DependencyGraph, ReachTable
from .impact import ImpactReport
from .snapshot import EcosystemSnapshot


@dataclass(frozen=True)
class PageRankScores:
    """Converged (or best-effort) PageRank vector over package names."""

    scores: Mapping[str, float]
    damping: float
    tol: float
    iterations_used: int
    residual: float
    converged: bool

    def __getitem__(self, name: str) -> float:
        return self.scores[name]

    def to_csv(self) -> str:
        lines = ["package,score"]
        lines.extend(f"{name},{self.scores[name]!r}" for name in sorted(self.scores))
        return "\n".join(lines) + "\n"

    def save_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")


@dataclass(frozen=True)
class ComparisonReport:
    """Budget-matched comparison of impact-driven and PageRank top-k sets."""

    k: int
    jaccard: float
    only_in_impact: tuple[str, ...]
    only_in_pagerank: tuple[str, ...]
    impact_set_share: Mapping[str, float]
    pagerank_topk_share: Mapping[str, float]
    spearman: Mapping[str, float]
    pearson: Mapping[str, float]
    correlation_excluded_count: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "jaccard": self.jaccard,
            "only_in_impact": list(self.only_in_impact),
            "only_in_pagerank": list(self.only_in_pagerank),
            "impact_set_share": dict(self.impact_set_share),
            "pagerank_topk_share": dict(self.pagerank_topk_share),
            "spearman": dict(self.spearman),
            "pearson": dict(self.pearson),
            "correlation_excluded_count": self.correlation_excluded_count,
        }

    def to_table(self) -> str:
        rows = [
            ("k", str(self.k)),
            ("jaccard", f"{self.jaccard:.4f}"),
            ("exclusive to impact set", str(len(self.only_in_impact))),
            ("exclusive to pagerank set", str(len(self.only_in_pagerank))),
        ]
        for label in sorted(self.impact_set_share):
            rows.append(
                (f"{label} share (impact set)", f"{self.impact_set_share[label]:.4f}")
            )
            rows.append(
                (f"{label} share (pagerank set)", f"{self.pagerank_topk_share[label]:.4f}")
            )
        for label in sorted(self.spearman):
            rows.append((f"{label} spearman", f"{self.spearman[label]:.4f}"))
            rows.append((f"{label} pearson", f"{self.pearson[label]:.4f}"))
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows) + "\n"


def pagerank(
    graph: DependencyGraph,
    damping: float = 0.85,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> PageRankScores:
    """Power iteration until the L1 residual drops below ``tol``.

    Non-convergence within ``max_iter`` is reported through the
    ``converged`` flag and final residual, not raised.
    """
    n = graph.n_nodes
    if n == 0:
        raise DomainError("pagerank requires a non-empty graph")
    if not (0.0 < damping < 1.0):
        raise DomainError(f"damping must lie in (0, 1), got {damping!r}")

    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    outdeg = np.zeros(n, dtype=np.float64)
    for u in range(n):
        deps = graph.forward[u]
        outdeg[u] = len(deps)
        if deps:
            w = 1.0 / len(deps)
            for v in deps:
                rows.append(v)
                cols.append(u)
                data.append(w)
    matrix = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    dangling = outdeg == 0.0

    rank = np.full(n, 1.0 / n, dtype=np.float64)
    base = (1.0 - damping) / n
    iterations = 0
    residual = math.inf
    for iterations in range(1, max_iter + 1):
        spread = matrix @ rank
        spread += rank[dangling].sum() / n
        new_rank = damping * spread + base
        residual = float(np.abs(new_rank - rank).sum())
        rank = new_rank
        if residual < tol:
            break

    return PageRankScores(
        scores={name: float(rank[i]) for i, name in enumerate(graph.names)},
        damping=damping,
        tol=tol,
        iterations_used=iterations,
        residual=residual,
        converged=residual < tol,
    )


def top_k(scores: PageRankScores | Mapping[str, float], k: int) -> tuple[str, ...]:
    """The k highest-scoring packages, ties broken lexicographically."""
    table = scores.scores if isinstance(scores, PageRankScores) else scores
    if not (0 <= k <= len(table)):
        raise DomainError(f"k must lie in 0..{len(table)}, got {k}")
    ranked = sorted(table, key=lambda name: (-table[name], name))
    return tuple(ranked[:k])


def jaccard(a: Collection[str], b: Collection[str]) -> float:
    """|a n b| / |a u b|; defined as 1 when both sets are empty."""
    set_a, set_b = set(a), set(b)
    union = set_a | set_b
    if not union:
        return 1.0
    return len(set_a & set_b) / len(union)


def _as_float_array(values: Sequence[float], label: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DomainError(f"{label} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{label} contains non-finite values")
    return arr


def _check_pairs(x: np.ndarray, y: np.ndarray) -> None:
    if len(x) != len(y):
        raise DomainError("correlation inputs must have equal length")
    if len(x) < 3:
        raise DomainError("correlation requires at least 3 pairs")


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation coefficient."""
    ax = _as_float_array(x, "x")
    ay = _as_float_array(y, "y")
    _check_pairs(ax, ay)
    dx = ax - ax.mean()
    dy = ay - ay.mean()
    ssx = float(dx @ dx)
    ssy = float(dy @ dy)
    if ssx == 0.0 or ssy == 0.0:
        raise UndefinedCorrelationError("correlation undefined for zero-variance input")
    return float((dx @ dy) / math.sqrt(ssx * ssy))


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks; tied values receive the mean of their positions."""
    arr = np.asarray(values, dtype=np.float64)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(len(arr), dtype=np.float64)
    i = 0
    while i < len(arr):
        j = i
        while j + 1 < len(arr) and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        mean_rank = (i + j) / 2.0 + 1.0
        ranks[order[i : j + 1]] = mean_rank
        i = j + 1
    return ranks


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Rank correlation using average ranks for ties."""
    ax = _as_float_array(x, "x")
    ay = _as_float_array(y, "y")
    _check_pairs(ax, ay)
    return pearson(average_ranks(ax), average_ranks(ay))


def budget_matched_compare(
    snapshot: EcosystemSnapshot,
    reach: ReachTable,
    reports: Mapping[str, ImpactReport],
    pagerank_scores: PageRankScores,
    impact_set: Collection[str],
) -> ComparisonReport:
    """Compare an impact-driven set against the PageRank top-k at equal budget.

    ``reports`` maps scenario labels to normalized impact reports. The
    cumulative share of each compared set is evaluated per scenario, and
    correlations are computed over the packages with defined shares (the
    scored ones); the rest are surfaced as a count.
    """
    members = frozenset(impact_set)
    k = len(members)
    pagerank_set = frozenset(top_k(pagerank_scores, k))

    impact_share: dict[str, float] = {}
    pagerank_share: dict[str, float] = {}
    spearman_by_label: dict[str, float] = {}
    pearson_by_label: dict[str, float] = {}
    excluded_count = 0
    for label in sorted(reports):
        shares = reports[label].require_normalized()
        impact_share[label] = math.fsum(shares.get(name, 0.0) for name in sorted(members))
        pagerank_share[label] = math.fsum(
            shares.get(name, 0.0) for name in sorted(pagerank_set)
        )
        scored = sorted(shares)
        excluded_count = snapshot.n_packages - len(scored)
        pr_vector = [pagerank_scores.scores[name] for name in scored]
        share_vector = [shares[name] for name in scored]
        spearman_by_label[label] = spearman(pr_vector, share_vector)
        pearson_by_label[label] = pearson(pr_vector, share_vector)

    return ComparisonReport(
        k=k,
        jaccard=jaccard(members, pagerank_set),
        only_in_impact=tuple(sorted(members - pagerank_set)),
        only_in_pagerank=tuple(sorted(pagerank_set - members)),
        impact_set_share=impact_share,
        pagerank_topk_share=pagerank_share,
        spearman=spearman_by_label,
        pearson=pearson_by_label,
        correlation_excluded_count=excluded_count,
    )
