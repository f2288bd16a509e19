from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ecoimpact import (
    EcosystemSnapshot,
    OwnerRef,
    PackageRecord,
    build_graph,
    build_snapshot,
    normalize_name,
    reach_counts,
)

DATA_DIR = Path(__file__).parent / "data"


def make_record(
    name: str,
    reqs: tuple[str, ...] = (),
    score: float | None = None,
    *,
    repo: bool = False,
    contact: bool = False,
    donation: bool = False,
    owner: OwnerRef | None = None,
    downloads: int | None = None,
) -> PackageRecord:
    return PackageRecord(
        name=normalize_name(name),
        raw_name=name,
        requirements=tuple(reqs),
        maintained_score=score,
        has_repository_link=repo or owner is not None,
        has_contact_info=contact,
        has_donation_link=donation,
        repository_owner=owner,
        download_count=downloads,
    )


def fixture_records() -> list[PackageRecord]:
    """The committed 5-node fixture: a small chain plus an isolated package.

    Dependencies: bravo -> alpha, charlie -> bravo, delta -> bravo (and a
    dangling "ghost"); echo is isolated. Reaches: alpha 4, bravo 3,
    charlie/delta/echo 1. Scores: 2, 8, 5, none, 10.
    """
    return [
        make_record(
            "alpha",
            score=2.0,
            contact=True,
            owner=OwnerRef("org-a", "organization", frozenset({"m1", "m2", "m3"})),
        ),
        make_record(
            "bravo",
            ("alpha>=1.0",),
            8.0,
            contact=True,
            donation=True,
            owner=OwnerRef("u-bob", "individual", frozenset({"u-bob"})),
        ),
        make_record(
            "charlie",
            ("bravo",),
            5.0,
            donation=True,
            owner=OwnerRef("u-carol", "individual", frozenset({"u-carol"})),
        ),
        make_record("delta", ("bravo", "ghost"), None, contact=True),
        make_record(
            "Echo",
            score=10.0,
            contact=True,
            donation=True,
            owner=OwnerRef("org-e", "organization", frozenset({"u-bob", "u-eve"})),
        ),
    ]


@pytest.fixture()
def fixture_snapshot() -> EcosystemSnapshot:
    return build_snapshot(fixture_records())


@pytest.fixture()
def fixture_graph(fixture_snapshot):
    return build_graph(fixture_snapshot)


@pytest.fixture()
def fixture_reach(fixture_graph):
    return reach_counts(fixture_graph)


def snapshot_from_adjacency(
    forward: list[list[int]],
    scores: dict[int, float] | None = None,
) -> EcosystemSnapshot:
    """Wrap an integer adjacency list as a snapshot with pkg-%04d names."""
    names = [f"pkg-{i:04d}" for i in range(len(forward))]
    records = [
        make_record(
            names[i],
            tuple(names[v] for v in forward[i]),
            None if scores is None else scores.get(i),
        )
        for i in range(len(forward))
    ]
    return build_snapshot(records)


def random_scores(rng: np.random.Generator, n: int, scored_fraction: float = 1.0):
    return {
        i: float(rng.uniform(0.0, 10.0))
        for i in range(n)
        if rng.random() < scored_fraction
    }
