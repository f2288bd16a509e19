from __future__ import annotations

import json
import math
from pathlib import Path

import pytest
from click.testing import CliRunner

from conftest import DATA_DIR
from ecoimpact.cli import main

FIXTURE = DATA_DIR / "fixture_5node.ndjson"
SETS = sorted((DATA_DIR / "sets").glob("*.txt"))
GOLDEN_ANALYZE = DATA_DIR / "golden" / "analyze"
GOLDEN_COMPARE = DATA_DIR / "golden" / "compare"
GOLDEN_FLAGS = ["--trials", "2000"]


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def snapshot_path(tmp_path, runner) -> Path:
    out = tmp_path / "snapshot.json"
    result = runner.invoke(main, ["ingest", str(FIXTURE), "-o", str(out)])
    assert result.exit_code == 0, result.output
    return out


def test_ingest_reports_filter_stats(tmp_path, runner):
    out = tmp_path / "snap.json"
    result = runner.invoke(main, ["ingest", str(FIXTURE), "-o", str(out)])
    assert result.exit_code == 0
    assert "packages: 5" in result.output
    assert "edges: 3" in result.output
    assert "unresolved_edges: 1" in result.output
    assert json.loads(out.read_text())["format"] == "ecoimpact-snapshot/1"


def test_ingest_collision_exits_2(tmp_path, runner):
    raw = tmp_path / "bad.ndjson"
    raw.write_text('{"name": "foo.bar"}\n{"name": "Foo_Bar"}\n')
    out = tmp_path / "snap.json"
    result = runner.invoke(main, ["ingest", str(raw), "-o", str(out)])
    assert result.exit_code == 2
    assert "collide" in result.output


def test_ingest_invalid_record_exits_2(tmp_path, runner):
    raw = tmp_path / "bad.ndjson"
    raw.write_text('{"name": "ok", "maintained_score": 99}\n')
    result = runner.invoke(main, ["ingest", str(raw), "-o", str(tmp_path / "s.json")])
    assert result.exit_code == 2


def test_ingest_counts_match_oracle_on_synthetic_corpus(tmp_path, runner):
    import numpy as np

    rng = np.random.default_rng(1234)
    n = 2000
    names = [f"pkg-{i:05d}" for i in range(n)]
    lines = []
    expected_edges = set()
    for i in range(n):
        reqs = []
        for _ in range(int(rng.integers(0, 5))):
            target = names[int(rng.integers(0, n))]
            if rng.random() < 0.05:
                target = f"missing-{int(rng.integers(0, 100)):03d}"
            reqs.append(target)
            if target in set(names) and target != names[i]:
                expected_edges.add((names[i], target))
        lines.append(json.dumps({"name": names[i], "requirements": reqs}))
    raw = tmp_path / "corpus.ndjson"
    raw.write_text("\n".join(lines) + "\n")
    out = tmp_path / "snap.json"
    result = runner.invoke(main, ["ingest", str(raw), "-o", str(out)])
    assert result.exit_code == 0
    assert f"edges: {len(expected_edges)}" in result.output


def test_analyze_reproduces_golden_files(tmp_path, runner, snapshot_path):
    out_dir = tmp_path / "out"
    result = runner.invoke(
        main, ["analyze", str(snapshot_path), "--out", str(out_dir), *GOLDEN_FLAGS]
    )
    assert result.exit_code == 0, result.output
    golden_files = sorted(p.name for p in GOLDEN_ANALYZE.iterdir())
    produced = sorted(p.name for p in out_dir.iterdir())
    assert produced == golden_files
    for name in golden_files:
        assert (out_dir / name).read_bytes() == (GOLDEN_ANALYZE / name).read_bytes(), name


def test_analyze_rerun_is_byte_identical(tmp_path, runner, snapshot_path):
    first = tmp_path / "first"
    second = tmp_path / "second"
    for out_dir in (first, second):
        result = runner.invoke(
            main,
            ["analyze", str(snapshot_path), "--out", str(out_dir), "--trials", "300"],
        )
        assert result.exit_code == 0
    for path in sorted(first.iterdir()):
        assert path.read_bytes() == (second / path.name).read_bytes()


def test_analyze_tau_one_lists_all_nonzero(tmp_path, runner, snapshot_path):
    out_dir = tmp_path / "out"
    result = runner.invoke(
        main,
        ["analyze", str(snapshot_path), "--out", str(out_dir), "--tau", "1.0", "--trials", "50"],
    )
    assert result.exit_code == 0
    lines = (out_dir / "selection_improvement.csv").read_text().strip().split("\n")
    rows = [line.split(",") for line in lines[1:]]
    manifest = json.loads((out_dir / "manifest.json").read_text())
    nonzero = [row for row in rows if float(row[2]) > 0.0]
    assert manifest["selection_sizes"]["improvement"] == len(nonzero) == 3


def test_analyze_degenerate_scenario_exits_3(tmp_path, runner):
    raw = tmp_path / "maxed.ndjson"
    raw.write_text(
        '{"name": "a", "maintained_score": 10.0}\n'
        '{"name": "b", "requirements": ["a"], "maintained_score": 10.0}\n'
    )
    snap = tmp_path / "snap.json"
    assert runner.invoke(main, ["ingest", str(raw), "-o", str(snap)]).exit_code == 0
    result = runner.invoke(main, ["analyze", str(snap), "--out", str(tmp_path / "o")])
    assert result.exit_code == 3
    assert "zero total impact" in result.output


def test_compare_reproduces_golden_files(tmp_path, runner, snapshot_path):
    out_dir = tmp_path / "cmp"
    result = runner.invoke(
        main,
        ["compare", str(snapshot_path), *map(str, SETS), "--out", str(out_dir), *GOLDEN_FLAGS],
    )
    assert result.exit_code == 0, result.output
    for name in ("strategies.csv", "comparison.json"):
        assert (out_dir / name).read_bytes() == (GOLDEN_COMPARE / name).read_bytes(), name


def test_compare_without_external_sets_has_single_row(tmp_path, runner, snapshot_path):
    out_dir = tmp_path / "cmp"
    result = runner.invoke(main, ["compare", str(snapshot_path), "--out", str(out_dir)])
    assert result.exit_code == 0
    lines = (out_dir / "strategies.csv").read_text().strip().split("\n")
    assert len(lines) == 2
    assert lines[1].startswith("impact-driven,")


def test_compare_identity_set_matches_impact_row(tmp_path, runner, snapshot_path):
    union = (GOLDEN_ANALYZE / "selection_union.txt").read_text()
    mirror = tmp_path / "mirror.txt"
    mirror.write_text(union)
    out_dir = tmp_path / "cmp"
    result = runner.invoke(
        main, ["compare", str(snapshot_path), str(mirror), "--out", str(out_dir)]
    )
    assert result.exit_code == 0
    lines = (out_dir / "strategies.csv").read_text().strip().split("\n")
    impact_row = lines[1].split(",")
    mirror_row = lines[2].split(",")
    # identical impact shares; only the label and exclusion mode differ
    assert impact_row[0] == "impact-driven" and mirror_row[0] == "mirror"
    assert mirror_row[1:5] == impact_row[1:5]


def test_compare_rows_match_scripted_recomputation(tmp_path, runner, snapshot_path):
    from ecoimpact import (
        EcosystemSnapshot,
        build_graph,
        impact,
        improvement_scenario,
        load_external_set,
        normalize,
        reach_counts,
    )

    out_dir = tmp_path / "cmp"
    result = runner.invoke(
        main, ["compare", str(snapshot_path), *map(str, SETS), "--out", str(out_dir)]
    )
    assert result.exit_code == 0

    snap = EcosystemSnapshot.load(snapshot_path)
    reach = reach_counts(build_graph(snap))
    report = normalize(impact(snap, reach, improvement_scenario(snap)))
    lines = (out_dir / "strategies.csv").read_text().strip().split("\n")
    header = lines[0].split(",")
    for line in lines[2:]:
        row = dict(zip(header, line.split(",")))
        members = load_external_set(
            DATA_DIR / "sets" / f"{row['label']}.txt", snap
        ).members
        expected = math.fsum(
            report.normalized.get(name, 0.0) for name in sorted(members)
        )
        assert float(row["improvement_share"]) == pytest.approx(expected, rel=1e-12)
        assert int(row["package_count"]) == len(members)


def test_compare_unreadable_set_exits_2(tmp_path, runner, snapshot_path):
    result = runner.invoke(
        main,
        ["compare", str(snapshot_path), str(tmp_path / "missing.txt"), "--out", str(tmp_path / "o")],
    )
    assert result.exit_code == 2


def test_corrupt_snapshot_exits_2(tmp_path, runner):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    result = runner.invoke(main, ["analyze", str(bad), "--out", str(tmp_path / "o")])
    assert result.exit_code == 2
