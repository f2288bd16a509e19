"""Maintenance-impact model: ecosystem state, scenarios, ranking, baselines.

The model is linear and version-unaware: a maintenance change of delta at
package p affects every package whose transitive dependency closure
contains p, so its ecosystem impact is delta times p's reach. Positive
values are improvements, negative values regressions. Shares are impacts
normalized by the scenario's total induced impact; for single-sign
scenarios every share lies in [0, 1] and the shares sum to one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Collection, Mapping

import numpy as np

from .errors import DegenerateScenarioError, DomainError, UnknownPackageError
from .graph import ReachTable
from .snapshot import EcosystemSnapshot

IMPROVEMENT = "improvement"
REGRESSION = "regression"
PRESETS = (IMPROVEMENT, REGRESSION)


@dataclass(frozen=True)
class Scenario:
    """A labeled specification of per-package maintenance deltas.

    Packages absent from ``deltas`` are unchanged (delta zero). Deltas
    must keep each package's score inside [0, 10], which is validated
    against the snapshot when the scenario is applied.
    """

    label: str
    deltas: Mapping[str, float]


@dataclass(frozen=True)
class ImpactReport:
    """Per-package ecosystem impacts of one scenario.

    ``raw_impact`` maps each package with a delta to delta * reach;
    ``total`` is their sum. ``normalized`` is filled by :func:`normalize`
    and holds each package's share of the total. ``excluded`` lists the
    snapshot packages without a maintained score, which cannot take part
    in scenarios.
    """

    scenario_label: str
    deltas: Mapping[str, float]
    reach: Mapping[str, int]
    raw_impact: Mapping[str, float]
    total: float
    excluded: frozenset[str]
    normalized: Mapping[str, float] | None = None

    def require_normalized(self) -> Mapping[str, float]:
        if self.normalized is None:
            raise ValueError("impact report has not been normalized")
        return self.normalized

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario_label,
            "total": self.total,
            "impacts": dict(self.raw_impact),
            "shares": dict(self.normalized) if self.normalized is not None else None,
            "excluded": sorted(self.excluded),
        }

    def to_csv(self) -> str:
        """Rows ``package,reach,delta,impact,share`` in descending share order."""
        shares = self.require_normalized()
        lines = ["package,reach,delta,impact,share"]
        for name in rank_packages(shares):
            lines.append(
                f"{name},{self.reach[name]},{self.deltas[name]!r},"
                f"{self.raw_impact[name]!r},{shares[name]!r}"
            )
        return "\n".join(lines) + "\n"

    def save_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")


@dataclass(frozen=True)
class SelectionResult:
    """Threshold selection over a normalized impact report.

    ``ranked`` is the full descending-share order (ties broken by name);
    ``selected`` is the shortest prefix whose cumulative share meets tau.
    When no prefix reaches tau (threshold starved by rounding, or tau = 1
    with a zero-share tail) the selection falls back to the shortest
    prefix of maximal cumulative share, i.e. all nonzero-share packages
    for single-sign scenarios.
    """

    scenario_label: str
    tau: float
    ranked: tuple[str, ...]
    shares: Mapping[str, float]
    selected: tuple[str, ...]
    achieved_share: float

    @property
    def selected_set(self) -> frozenset[str]:
        return frozenset(self.selected)

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario_label,
            "tau": self.tau,
            "selected": list(self.selected),
            "achieved_share": self.achieved_share,
            "rows": self.rows(),
        }

    def rows(self) -> list[dict[str, Any]]:
        out = []
        cumulative = 0.0
        for rank, name in enumerate(self.ranked, start=1):
            cumulative += self.shares[name]
            out.append(
                {
                    "rank": rank,
                    "package": name,
                    "share": self.shares[name],
                    "cumulative": cumulative,
                }
            )
        return out

    def to_csv(self) -> str:
        lines = ["rank,package,share,cumulative"]
        for row in self.rows():
            lines.append(
                f"{row['rank']},{row['package']},{row['share']!r},{row['cumulative']!r}"
            )
        return "\n".join(lines) + "\n"

    def save_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")


@dataclass(frozen=True)
class BaselineResult:
    """Size-matched Monte Carlo baseline for an observed support set.

    The per-trial statistic is the magnitude of the aggregated impact of
    a uniformly drawn set of scored packages, so improvement and
    regression presets are both compared on "amount of induced change".
    ``p_upper_bound`` is the empirical fraction of trials at or above the
    observed statistic; when no trial reaches it the bound is reported as
    "< 1/n_trials".
    """

    preset: str
    n_trials: int
    seed: int
    set_size: int
    observed_impact: float
    trial_mean: float
    trial_std: float
    z_score: float
    std_is_zero: bool
    exceed_count: int
    p_upper_bound: float

    @property
    def p_display(self) -> str:
        if self.exceed_count == 0:
            return f"< {1.0 / self.n_trials:g}"
        return f"{self.p_upper_bound:g}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "preset": self.preset,
            "n_trials": self.n_trials,
            "seed": self.seed,
            "set_size": self.set_size,
            "observed_impact": self.observed_impact,
            "trial_mean": self.trial_mean,
            "trial_std": self.trial_std,
            "z_score": self.z_score,
            "std_is_zero": self.std_is_zero,
            "exceed_count": self.exceed_count,
            "p_upper_bound": self.p_upper_bound,
            "p_display": self.p_display,
        }


def _validate_scores(snapshot: EcosystemSnapshot, scores: Mapping[str, float]) -> None:
    for name, value in scores.items():
        if name not in snapshot.packages:
            raise UnknownPackageError(f"unknown package {name!r}")
        if not (0.0 <= value <= 10.0):
            raise DomainError(f"score {value!r} of {name!r} outside [0, 10]")


def ecosystem_state(
    snapshot: EcosystemSnapshot,
    scores: Mapping[str, float],
    reach: ReachTable,
) -> float:
    """Dependency-propagated ecosystem maintenance state.

    Equals the double sum over packages q of the scores of everything in
    q's closure, reordered as sum(reach(p) * score(p)). Packages without
    a score contribute zero.
    """
    _validate_scores(snapshot, scores)
    return math.fsum(reach[name] * value for name, value in scores.items())


def improvement_scenario(snapshot: EcosystemSnapshot) -> Scenario:
    """Raise every maintained score to 10; deltas are 10 - m, all >= 0."""
    deltas = {
        name: 10.0 - rec.maintained_score
        for name, rec in snapshot.packages.items()
        if rec.maintained_score is not None
    }
    return Scenario(label=IMPROVEMENT, deltas=deltas)


def regression_scenario(snapshot: EcosystemSnapshot) -> Scenario:
    """Drop every maintained score to 0; deltas are -m, all <= 0."""
    deltas = {
        name: 0.0 - rec.maintained_score
        for name, rec in snapshot.packages.items()
        if rec.maintained_score is not None
    }
    return Scenario(label=REGRESSION, deltas=deltas)


def preset_scenario(snapshot: EcosystemSnapshot, preset: str) -> Scenario:
    if preset == IMPROVEMENT:
        return improvement_scenario(snapshot)
    if preset == REGRESSION:
        return regression_scenario(snapshot)
    raise DomainError(f"unknown preset {preset!r}; expected one of {PRESETS}")


def restricted_scenario(
    snapshot: EcosystemSnapshot, preset: str, members: Collection[str]
) -> Scenario:
    """Preset deltas limited to the scored packages of ``members``."""
    base = preset_scenario(snapshot, preset)
    deltas = {name: base.deltas[name] for name in sorted(members) if name in base.deltas}
    return Scenario(label=base.label, deltas=deltas)


def impact(
    snapshot: EcosystemSnapshot, reach: ReachTable, scenario: Scenario
) -> ImpactReport:
    """Per-package ecosystem impact delta * reach under one scenario."""
    raw: dict[str, float] = {}
    reach_of: dict[str, int] = {}
    for name in sorted(scenario.deltas):
        delta = scenario.deltas[name]
        rec = snapshot.packages.get(name)
        if rec is None:
            raise UnknownPackageError(f"scenario references unknown package {name!r}")
        score = rec.maintained_score
        if score is None:
            raise DomainError(
                f"package {name!r} has no maintained score; its delta is undefined"
            )
        if not (-score <= delta <= 10.0 - score):
            raise DomainError(
                f"delta {delta!r} moves {name!r} (score {score!r}) outside [0, 10]"
            )
        raw[name] = delta * reach[name]
        reach_of[name] = reach[name]
    excluded = frozenset(
        name for name, rec in snapshot.packages.items() if rec.maintained_score is None
    )
    return ImpactReport(
        scenario_label=scenario.label,
        deltas=dict(sorted(scenario.deltas.items())),
        reach=reach_of,
        raw_impact=raw,
        total=math.fsum(raw.values()),
        excluded=excluded,
    )


def normalize(report: ImpactReport) -> ImpactReport:
    """Fill per-package shares impact / total; undefined for zero totals."""
    if report.total == 0.0:
        raise DegenerateScenarioError(
            f"scenario {report.scenario_label!r} induced zero total impact"
        )
    shares = {name: value / report.total for name, value in report.raw_impact.items()}
    return replace(report, normalized=shares)


def rank_packages(shares: Mapping[str, float]) -> list[str]:
    """Descending by share, ties broken lexicographically by name."""
    return sorted(shares, key=lambda name: (-shares[name], name))


def select_to_threshold(report: ImpactReport, tau: float) -> SelectionResult:
    """Shortest descending-share prefix whose cumulative share meets tau."""
    if not (0.0 < tau <= 1.0):
        raise DomainError(f"tau must lie in (0, 1], got {tau!r}")
    shares = report.require_normalized()
    ranked = rank_packages(shares)

    cumulative = 0.0
    best = -math.inf
    best_end = 0
    chosen_end = 0
    achieved = 0.0
    for i, name in enumerate(ranked):
        cumulative += shares[name]
        if cumulative > best:
            best = cumulative
            best_end = i + 1
        if cumulative >= tau:
            chosen_end = i + 1
            achieved = cumulative
            break
    else:
        # Threshold unreachable: fall back to the maximal-share prefix.
        chosen_end = best_end
        achieved = best if best_end else 0.0

    return SelectionResult(
        scenario_label=report.scenario_label,
        tau=tau,
        ranked=tuple(ranked),
        shares=dict(shares),
        selected=tuple(ranked[:chosen_end]),
        achieved_share=achieved,
    )


def union_selection(*selections: SelectionResult) -> frozenset[str]:
    """Deduplicated union of the selected sets."""
    members: set[str] = set()
    for selection in selections:
        members.update(selection.selected)
    return frozenset(members)


def random_baseline(
    snapshot: EcosystemSnapshot,
    reach: ReachTable,
    observed: Collection[str],
    preset: str,
    *,
    n_trials: int = 10_000,
    seed: int = 42,
    set_size: int | None = None,
) -> BaselineResult:
    """Compare an observed set against size-matched uniform random draws.

    Each trial draws ``set_size`` distinct scored packages without
    replacement (PCG64 generator seeded with ``seed``; fixed inputs give
    bit-identical results) and aggregates their preset impact. Unscored
    observed members contribute zero to the observed statistic.
    """
    if n_trials < 1:
        raise DomainError(f"n_trials must be >= 1, got {n_trials}")
    scenario = preset_scenario(snapshot, preset)
    scored = sorted(scenario.deltas)
    for name in observed:
        if name not in snapshot.packages:
            raise UnknownPackageError(f"unknown package {name!r} in observed set")
    if set_size is None:
        set_size = len(set(observed))
    if not (0 < set_size <= len(scored)):
        raise DomainError(
            f"set_size {set_size} outside 1..{len(scored)} (scored population)"
        )

    impacts = np.array(
        [scenario.deltas[name] * reach[name] for name in scored], dtype=np.float64
    )
    observed_stat = abs(
        math.fsum(
            scenario.deltas[name] * reach[name] for name in set(observed) if name in scenario.deltas
        )
    )

    rng = np.random.default_rng(seed)
    trial_stats = np.empty(n_trials, dtype=np.float64)
    population = len(scored)
    for t in range(n_trials):
        chosen = rng.choice(population, size=set_size, replace=False, shuffle=False)
        trial_stats[t] = impacts[chosen].sum()
    np.abs(trial_stats, out=trial_stats)

    mean = float(trial_stats.mean())
    std = float(trial_stats.std())
    std_is_zero = std == 0.0
    z_score = 0.0 if std_is_zero else (observed_stat - mean) / std
    exceed = int(np.count_nonzero(trial_stats >= observed_stat))
    return BaselineResult(
        preset=preset,
        n_trials=n_trials,
        seed=seed,
        set_size=set_size,
        observed_impact=observed_stat,
        trial_mean=mean,
        trial_std=std,
        z_score=z_score,
        std_is_zero=std_is_zero,
        exceed_count=exceed,
        p_upper_bound=exceed / n_trials,
    )


def scores_of(snapshot: EcosystemSnapshot) -> dict[str, float]:
    """Maintained scores of all scored packages, in name order."""
    return {
        name: rec.maintained_score
        for name, rec in snapshot.packages.items()
        if rec.maintained_score is not None
    }


def scenario_from_json(path: str | Path) -> Scenario:
    """Load a scenario file: a JSON object {label, deltas: {package: delta}}."""
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(obj, Mapping) and "deltas" in obj:
        label = str(obj.get("label", "custom"))
        deltas = obj["deltas"]
    else:
        label, deltas = "custom", obj
    if not isinstance(deltas, Mapping):
        raise DomainError("scenario file must map package names to deltas")
    return Scenario(label=label, deltas={str(k): float(v) for k, v in deltas.items()})
