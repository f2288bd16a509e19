"""HTTP API over a loaded snapshot, for the decision dashboard.

The snapshot, reach table, PageRank scores, and global scenario reports
are computed once at startup; every request is served from those
immutable structures, so handling is stateless and identical requests
produce identical responses. Endpoints live under /v1 and speak JSON.

Pin/exclude semantics extend threshold selection conservatively: with no
pins and no exclusions the selection endpoint reduces exactly to the
plain descending-share prefix selection.
"""

from __future__ import annotations

import math
from contextlib import asynccontextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import __version__
from .analytics import (
    EXTERNAL_LIST,
    IMPACT_SELECTION,
    SupportSet,
    evaluate_support_set,
    resolve_support_set,
    strategies_to_csv,
)
from .bundle import AnalysisBundle
from .errors import (
    DegenerateScenarioError,
    DomainError,
    InvalidNameError,
    UnknownPackageError,
)
from .impact import (
    PRESETS,
    ImpactReport,
    Scenario,
    impact,
    normalize,
    preset_scenario,
    rank_packages,
)
from .names import normalize_name
from .snapshot import EcosystemSnapshot


@dataclass
class ServiceConfig:
    tau: float = 0.80
    damping: float = 0.85
    max_sets: int = 20
    max_names_per_set: int = 50_000
    top_reach: int = 10


class SelectionRequest(BaseModel):
    preset: str | None = None
    deltas: dict[str, float] | None = None
    pinned: list[str] = Field(default_factory=list)
    excluded: list[str] = Field(default_factory=list)
    tau: float | None = None


class CompareSet(BaseModel):
    label: str
    packages: list[str]


class CompareRequest(BaseModel):
    sets: list[CompareSet]


def _error(status: int, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail=message)


def _normalize_names(names: list[str], snapshot: EcosystemSnapshot, what: str) -> list[str]:
    out = []
    for raw in names:
        try:
            name = normalize_name(raw)
        except InvalidNameError as exc:
            raise _error(422, f"invalid name in {what}: {exc}") from exc
        if name not in snapshot.packages:
            raise _error(422, f"unknown package {name!r} in {what}")
        out.append(name)
    return out


def _selection_payload(
    bundle: AnalysisBundle,
    report: ImpactReport,
    tau: float,
    pinned: list[str],
    excluded: list[str],
    limit: int | None,
    offset: int,
) -> dict[str, Any]:
    """Rank, cut at tau, and wrap the response.

    ``report`` is already restricted to the non-excluded packages and
    renormalized, so the remaining shares sum to one and tau stays
    reachable. Pinned packages head the ranking (in share order) and are
    always part of the selected prefix.
    """
    shares = report.require_normalized()
    pinned_set = set(pinned)
    excluded_set = set(excluded)

    pinned_ranked = sorted(pinned_set, key=lambda name: (-shares.get(name, 0.0), name))
    ranked_rest = [name for name in rank_packages(shares) if name not in pinned_set]
    order = pinned_ranked + ranked_rest
    min_end = len(pinned_ranked)

    cumulative = 0.0
    best = -math.inf
    best_end = min_end
    chosen_end = 0
    achieved = 0.0
    rows: list[dict[str, Any]] = []
    for i, name in enumerate(order):
        share = shares.get(name, 0.0)
        cumulative += share
        rows.append(
            {
                "rank": i + 1,
                "package": name,
                "share": share,
                "cumulative": cumulative,
                "reach": bundle.reach[name],
                "pinned": name in pinned_set,
            }
        )
        if i + 1 >= min_end:
            if cumulative > best:
                best = cumulative
                best_end = i + 1
            if chosen_end == 0 and cumulative >= tau:
                chosen_end = i + 1
                achieved = cumulative
    if chosen_end == 0:
        # Threshold starved by rounding (tau = 1.0): take the maximal prefix.
        chosen_end = best_end
        achieved = best if rows else 0.0

    selected = [row["package"] for row in rows[:chosen_end]]
    for row in rows:
        row["selected"] = row["rank"] <= chosen_end

    support = SupportSet(
        label="selection", members=frozenset(selected), source=IMPACT_SELECTION
    )
    evaluation = evaluate_support_set(
        support, bundle.snapshot, bundle.reach, bundle.reports
    )

    end = offset + limit if limit is not None else None
    return {
        "snapshot_hash": bundle.snapshot_hash,
        "scenario": report.scenario_label,
        "tau": tau,
        "achieved_share": achieved,
        "selected": selected,
        "pinned": sorted(pinned_set),
        "excluded": sorted(excluded_set),
        "rows": rows[offset:end],
        "total_rows": len(rows),
        "offset": offset,
        "limit": limit,
        "evaluation": evaluation.to_dict(),
    }


def create_app(
    snapshot_path: str | Path | None = None,
    *,
    tau: float = 0.80,
    damping: float = 0.85,
    config: ServiceConfig | None = None,
) -> FastAPI:
    """Build the service; the snapshot loads when the app starts up."""
    cfg = config or ServiceConfig(tau=tau, damping=damping)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if snapshot_path is not None and app.state.bundle is None:
            snapshot = EcosystemSnapshot.load(snapshot_path)
            app.state.bundle = AnalysisBundle.from_snapshot(
                snapshot, tau=cfg.tau, damping=cfg.damping
            )
        yield

    app = FastAPI(title="ecoimpact", version=__version__, lifespan=lifespan)
    app.state.bundle = None
    app.state.config = cfg

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": "malformed request body"})

    def bundle_or_503() -> AnalysisBundle:
        bundle = app.state.bundle
        if bundle is None:
            raise _error(503, "snapshot not loaded yet")
        return bundle

    @app.get("/v1/summary")
    def summary() -> dict[str, Any]:
        bundle = bundle_or_503()
        snapshot = bundle.snapshot
        top = sorted(bundle.reach.items(), key=lambda kv: (-kv[1], kv[0]))[: cfg.top_reach]
        return {
            "snapshot_hash": bundle.snapshot_hash,
            "packages": snapshot.n_packages,
            "edges": snapshot.n_edges,
            "scored_packages": len(snapshot.scored_packages()),
            "tau": bundle.tau,
            "top_reach": [{"package": name, "reach": value} for name, value in top],
            "filter_stats": snapshot.filter_stats.to_dict(),
        }

    @app.post("/v1/selection")
    def selection(
        request: SelectionRequest, limit: int | None = None, offset: int = 0
    ) -> dict[str, Any]:
        bundle = bundle_or_503()
        if (request.preset is None) == (request.deltas is None):
            raise _error(400, "exactly one of 'preset' or 'deltas' is required")
        tau_value = request.tau if request.tau is not None else cfg.tau
        if not (0.0 < tau_value <= 1.0):
            raise _error(422, f"tau must lie in (0, 1], got {tau_value}")
        if (limit is not None and limit < 0) or offset < 0:
            raise _error(422, "limit and offset must be non-negative")

        pinned = _normalize_names(request.pinned, bundle.snapshot, "pinned")
        excluded = _normalize_names(request.excluded, bundle.snapshot, "excluded")
        overlap = set(pinned) & set(excluded)
        if overlap:
            raise _error(422, f"pinned and excluded overlap: {sorted(overlap)}")

        if request.preset is not None:
            if request.preset not in PRESETS:
                raise _error(400, f"unknown preset {request.preset!r}")
            scenario = preset_scenario(bundle.snapshot, request.preset)
        else:
            deltas = {}
            for raw, value in request.deltas.items():
                name = _normalize_names([raw], bundle.snapshot, "deltas")[0]
                deltas[name] = float(value)
            scenario = Scenario("custom", deltas)

        # Excluded packages are removed from the scenario before
        # normalization, so the remaining shares sum to one and a
        # reachable threshold stays reachable.
        if excluded:
            scenario = Scenario(
                scenario.label,
                {k: v for k, v in scenario.deltas.items() if k not in set(excluded)},
            )
        if not excluded and request.preset is not None:
            report = bundle.reports[request.preset]
        else:
            try:
                report = normalize(impact(bundle.snapshot, bundle.reach, scenario))
            except (DomainError, UnknownPackageError) as exc:
                raise _error(422, str(exc)) from exc
            except DegenerateScenarioError as exc:
                raise _error(
                    409, f"threshold {tau_value} unreachable: {exc}"
                ) from exc

        return _selection_payload(
            bundle, report, tau_value, pinned, excluded, limit, offset
        )

    @app.get("/v1/package/{name}")
    def package_detail(name: str) -> dict[str, Any]:
        bundle = bundle_or_503()
        try:
            normalized = normalize_name(name)
        except InvalidNameError as exc:
            raise _error(404, str(exc)) from exc
        record = bundle.snapshot.packages.get(normalized)
        if record is None:
            raise _error(404, f"unknown package {normalized!r}")
        node = bundle.graph.node_id(normalized)
        owner = record.repository_owner
        return {
            "snapshot_hash": bundle.snapshot_hash,
            "package": record.to_dict(),
            "reach": bundle.reach[normalized],
            "pagerank": bundle.pagerank_scores.scores[normalized],
            "shares": {
                label: report.require_normalized().get(normalized)
                for label, report in bundle.reports.items()
            },
            "owner_kind": owner.kind if owner else None,
            "dependency_count": len(bundle.graph.forward[node]),
            "dependent_count": len(bundle.graph.reverse[node]),
        }

    @app.post("/v1/compare")
    def compare(request: CompareRequest, format: str = "json"):
        bundle = bundle_or_503()
        if len(request.sets) > cfg.max_sets:
            raise _error(413, f"too many sets; limit is {cfg.max_sets}")
        for entry in request.sets:
            if len(entry.packages) > cfg.max_names_per_set:
                raise _error(
                    413, f"set {entry.label!r} exceeds {cfg.max_names_per_set} names"
                )

        support_sets = [bundle.impact_support_set()]
        for entry in request.sets:
            resolved = resolve_support_set(
                entry.packages, bundle.snapshot, label=entry.label, source=EXTERNAL_LIST
            )
            if not resolved.members:
                raise _error(422, f"no resolvable packages in set {entry.label!r}")
            support_sets.append(resolved)

        rows = [
            evaluate_support_set(s, bundle.snapshot, bundle.reach, bundle.reports)
            for s in support_sets
        ]
        if format == "csv":
            return PlainTextResponse(strategies_to_csv(rows), media_type="text/csv")
        return {
            "snapshot_hash": bundle.snapshot_hash,
            "rows": [row.to_dict() for row in rows],
        }

    return app
