"""Batch command-line entry points: ingest, analyze, compare, serve.

Exit codes: 0 success, 2 input error, 3 model degeneracy (a scenario with
zero total impact), 4 internal invariant violation. All outputs are
deterministic for a fixed snapshot and configuration; no timestamps are
written.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

import click

from . import __version__
from .analytics import evaluate_support_set, load_external_set, strategies_to_csv
from .bundle import AnalysisBundle
from .centrality import budget_matched_compare
from .errors import DegenerateScenarioError, EcoImpactError
from .impact import IMPROVEMENT, REGRESSION, random_baseline
from .snapshot import EcosystemSnapshot, build_snapshot, read_records_ndjson

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_INTERNAL = 4


def _fail(code: int, message: str) -> "SystemExit":
    click.echo(f"error: {message}", err=True)
    return SystemExit(code)


class _Group(click.Group):
    """Group that maps stray errors onto the documented exit codes."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (SystemExit, click.ClickException, click.exceptions.Abort):
            raise
        except EcoImpactError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(EXIT_INPUT) from exc
        except Exception as exc:  # invariant violation: anything unaccounted for
            click.echo(f"internal error: {exc}", err=True)
            raise SystemExit(EXIT_INTERNAL) from exc


def _provenance(snapshot_hash: str, config: dict[str, Any]) -> dict[str, Any]:
    return {
        "tool": "ecoimpact",
        "version": __version__,
        "snapshot_hash": snapshot_hash,
        "config": config,
    }


def _write_json(path: Path, payload: dict[str, Any]) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


@click.group(cls=_Group)
@click.version_option(version=__version__)
def main() -> None:
    """Dependency-propagated maintenance-impact analysis."""


@main.command("ingest")
@click.argument("raw_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "-o", "out_path", required=True, type=click.Path(path_type=Path))
@click.option("--include-optional/--no-optional", default=True, show_default=True)
def cmd_ingest(raw_path: Path, out_path: Path, include_optional: bool) -> None:
    """Parse newline-delimited JSON records into a versioned snapshot file."""
    try:
        records = read_records_ndjson(raw_path)
        snapshot = build_snapshot(records, include_optional=include_optional)
    except EcoImpactError as exc:
        raise _fail(EXIT_INPUT, str(exc)) from exc
    snapshot.save(out_path)
    stats = snapshot.filter_stats.to_dict()
    click.echo(f"packages: {snapshot.n_packages}")
    click.echo(f"edges: {snapshot.n_edges}")
    for rule, count in stats.items():
        click.echo(f"{rule}: {count}")
    click.echo(f"snapshot written to {out_path}")


def _load_snapshot(path: Path) -> EcosystemSnapshot:
    try:
        return EcosystemSnapshot.load(path)
    except EcoImpactError as exc:
        raise _fail(EXIT_INPUT, str(exc)) from exc


def _build_bundle(snapshot: EcosystemSnapshot, tau: float, damping: float) -> AnalysisBundle:
    try:
        return AnalysisBundle.from_snapshot(snapshot, tau=tau, damping=damping)
    except DegenerateScenarioError as exc:
        raise _fail(EXIT_DEGENERATE, str(exc)) from exc
    except EcoImpactError as exc:
        raise _fail(EXIT_INPUT, str(exc)) from exc


def _shared_options(func):
    func = click.option("--tau", default=0.80, show_default=True, type=float)(func)
    func = click.option("--damping", default=0.85, show_default=True, type=float)(func)
    func = click.option("--trials", default=10_000, show_default=True, type=int)(func)
    func = click.option("--seed", default=42, show_default=True, type=int)(func)
    func = click.option(
        "--out",
        "out_dir",
        required=True,
        type=click.Path(file_okay=False, path_type=Path),
    )(func)
    return func


@main.command("analyze")
@click.argument("snapshot_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@_shared_options
def cmd_analyze(
    snapshot_path: Path, tau: float, damping: float, trials: int, seed: int, out_dir: Path
) -> None:
    """Run the full impact analysis and write its report files."""
    snapshot = _load_snapshot(snapshot_path)
    bundle = _build_bundle(snapshot, tau, damping)
    out_dir.mkdir(parents=True, exist_ok=True)

    config = {
        "tau": tau,
        "damping": damping,
        "trials": trials,
        "seed": seed,
        "include_optional": snapshot.include_optional,
    }

    bundle.reach.save_csv(out_dir / "reach.csv")
    bundle.reports[IMPROVEMENT].save_csv(out_dir / "impact_improvement.csv")
    bundle.reports[REGRESSION].save_csv(out_dir / "impact_regression.csv")
    bundle.selections[IMPROVEMENT].save_csv(out_dir / "selection_improvement.csv")
    bundle.selections[REGRESSION].save_csv(out_dir / "selection_regression.csv")
    union_names = sorted(bundle.union_set)
    (out_dir / "selection_union.txt").write_text(
        "".join(name + "\n" for name in union_names), encoding="utf-8"
    )

    try:
        baselines = {
            label: random_baseline(
                snapshot,
                bundle.reach,
                bundle.union_set,
                label,
                n_trials=trials,
                seed=seed,
            ).to_dict()
            for label in (IMPROVEMENT, REGRESSION)
        }
    except EcoImpactError as exc:
        raise _fail(EXIT_INPUT, str(exc)) from exc
    _write_json(
        out_dir / "baseline.json",
        {"provenance": _provenance(bundle.snapshot_hash, config), "baselines": baselines},
    )
    _write_json(
        out_dir / "manifest.json",
        _provenance(bundle.snapshot_hash, config)
        | {
            "packages": snapshot.n_packages,
            "edges": snapshot.n_edges,
            "scored_packages": len(snapshot.scored_packages()),
            "selection_sizes": {
                label: len(sel.selected) for label, sel in bundle.selections.items()
            },
            "union_size": len(bundle.union_set),
        },
    )
    click.echo(f"analysis written to {out_dir}")


@main.command("compare")
@click.argument("snapshot_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument(
    "set_paths", nargs=-1, type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@_shared_options
def cmd_compare(
    snapshot_path: Path,
    set_paths: tuple[Path, ...],
    tau: float,
    damping: float,
    trials: int,
    seed: int,
    out_dir: Path,
) -> None:
    """Score external support sets against the impact-driven selection."""
    snapshot = _load_snapshot(snapshot_path)
    bundle = _build_bundle(snapshot, tau, damping)
    out_dir.mkdir(parents=True, exist_ok=True)

    support_sets = [bundle.impact_support_set()]
    for path in set_paths:
        try:
            support_sets.append(load_external_set(path, snapshot))
        except EcoImpactError as exc:
            raise _fail(EXIT_INPUT, str(exc)) from exc

    rows = [
        evaluate_support_set(s, snapshot, bundle.reach, bundle.reports)
        for s in support_sets
    ]
    (out_dir / "strategies.csv").write_text(strategies_to_csv(rows), encoding="utf-8")

    comparison = budget_matched_compare(
        snapshot, bundle.reach, bundle.reports, bundle.pagerank_scores, bundle.union_set
    )
    config = {"tau": tau, "damping": damping, "trials": trials, "seed": seed}
    _write_json(
        out_dir / "comparison.json",
        {
            "provenance": _provenance(bundle.snapshot_hash, config),
            "comparison": comparison.to_dict(),
        },
    )
    click.echo(f"comparison written to {out_dir}")


@main.command("serve")
@click.argument("snapshot_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8350, show_default=True, type=int)
@click.option("--tau", default=0.80, show_default=True, type=float)
@click.option("--damping", default=0.85, show_default=True, type=float)
def cmd_serve(snapshot_path: Path, host: str, port: int, tau: float, damping: float) -> None:
    """Serve the analysis API for the dashboard."""
    import uvicorn

    from .service import create_app

    app = create_app(snapshot_path, tau=tau, damping=damping)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
