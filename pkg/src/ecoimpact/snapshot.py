"""Ecosystem snapshot assembly: record validation, edge filtering, serialization.

A snapshot is the immutable unit all analyses run over: an ordered map of
package records plus the deduplicated dependency edges between them.
Records enter either programmatically or from a newline-delimited JSON
file (one record per line, unknown fields ignored). Snapshots persist as
a versioned JSON document tagged ``ecoimpact-snapshot/1``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import (
    AmbiguousNameError,
    InvalidNameError,
    RequirementParseError,
    SnapshotFormatError,
)
from .names import normalize_name
from .requirements import parse_requirement

SNAPSHOT_FORMAT = "ecoimpact-snapshot/1"

OWNER_KINDS = ("individual", "organization")


@dataclass(frozen=True)
class OwnerRef:
    """Repository owner of a package: an individual or an organization.

    ``member_ids`` are opaque person identifiers; individuals carry
    exactly one (the singleton convention), organizations at least one.
    """

    owner_id: str
    kind: str
    member_ids: frozenset[str]

    def __post_init__(self) -> None:
        if self.kind not in OWNER_KINDS:
            raise SnapshotFormatError(f"unknown owner kind {self.kind!r}")
        if self.kind == "individual" and len(self.member_ids) != 1:
            raise SnapshotFormatError(
                f"individual owner {self.owner_id!r} must have exactly one member id"
            )
        if self.kind == "organization" and not self.member_ids:
            raise SnapshotFormatError(
                f"organization owner {self.owner_id!r} must have at least one member id"
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "owner_id": self.owner_id,
            "kind": self.kind,
            "member_ids": sorted(self.member_ids),
        }


@dataclass(frozen=True)
class PackageRecord:
    """One package with its requirement specifiers and support metadata.

    ``maintained_score`` is a bounded 0..10 maintenance-activity signal
    consumed as an input field; packages without one are excluded from
    scenario rankings. The boolean flags record metadata presence only;
    no addresses or URLs are stored.
    """

    name: str
    raw_name: str
    requirements: tuple[str, ...] = ()
    maintained_score: float | None = None
    has_repository_link: bool = False
    has_contact_info: bool = False
    has_donation_link: bool = False
    repository_owner: OwnerRef | None = None
    download_count: int | None = None

    def __post_init__(self) -> None:
        if normalize_name(self.name) != self.name:
            raise SnapshotFormatError(f"record name {self.name!r} is not normalized")
        if self.maintained_score is not None and not (0.0 <= self.maintained_score <= 10.0):
            raise SnapshotFormatError(
                f"maintained_score {self.maintained_score!r} of {self.name!r} outside [0, 10]"
            )
        if self.repository_owner is not None and not self.has_repository_link:
            raise SnapshotFormatError(
                f"record {self.name!r} has an owner but has_repository_link is false"
            )
        if self.download_count is not None and self.download_count < 0:
            raise SnapshotFormatError(f"negative download_count on {self.name!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "raw_name": self.raw_name,
            "requirements": list(self.requirements),
            "maintained_score": self.maintained_score,
            "has_repository_link": self.has_repository_link,
            "has_contact_info": self.has_contact_info,
            "has_donation_link": self.has_donation_link,
            "repository_owner": self.repository_owner.to_dict() if self.repository_owner else None,
            "download_count": self.download_count,
        }


@dataclass(frozen=True)
class FilterStats:
    """Counts of requirement references dropped per filtering rule."""

    unresolved_edges: int = 0
    self_edges: int = 0
    duplicate_edges: int = 0
    optional_edges_skipped: int = 0
    unparseable_requirements: int = 0

    def to_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def total_dropped(self) -> int:
        return sum(self.to_dict().values())


@dataclass(frozen=True)
class EcosystemSnapshot:
    """Immutable set of packages plus directed dependency edges.

    Packages are keyed by normalized name in lexicographic order; edges
    are deduplicated ``(dependent, dependency)`` pairs whose endpoints
    both resolve in ``packages`` (referential closure).
    """

    packages: Mapping[str, PackageRecord]
    edges: tuple[tuple[str, str], ...]
    filter_stats: FilterStats = field(default_factory=FilterStats)
    include_optional: bool = True

    @property
    def n_packages(self) -> int:
        return len(self.packages)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def scored_packages(self) -> list[str]:
        """Names of packages carrying a maintained score, in name order."""
        return [name for name, rec in self.packages.items() if rec.maintained_score is not None]

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": SNAPSHOT_FORMAT,
            "include_optional": self.include_optional,
            "filter_stats": self.filter_stats.to_dict(),
            "packages": [rec.to_dict() for rec in self.packages.values()],
            "edges": [list(edge) for edge in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def content_hash(self) -> str:
        """Stable sha256 over the canonical serialization."""
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "EcosystemSnapshot":
        try:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SnapshotFormatError(f"snapshot file {path} is not valid JSON: {exc}") from exc
        if not isinstance(obj, dict) or obj.get("format") != SNAPSHOT_FORMAT:
            raise SnapshotFormatError(
                f"snapshot file {path} does not declare format {SNAPSHOT_FORMAT!r}"
            )
        records = [record_from_dict(item) for item in obj["packages"]]
        packages = {rec.name: rec for rec in sorted(records, key=lambda r: r.name)}
        edges = tuple((str(u), str(v)) for u, v in obj["edges"])
        for u, v in edges:
            if u not in packages or v not in packages:
                raise SnapshotFormatError(f"edge ({u!r}, {v!r}) references an unknown package")
        stats = FilterStats(**{k: int(v) for k, v in obj.get("filter_stats", {}).items()})
        return cls(
            packages=packages,
            edges=edges,
            filter_stats=stats,
            include_optional=bool(obj.get("include_optional", True)),
        )


def record_from_dict(obj: Mapping[str, Any], *, line_number: int | None = None) -> PackageRecord:
    """Build a validated record from a parsed JSON object.

    Unknown fields are ignored. ``name`` is required and is normalized;
    the original spelling is preserved as ``raw_name`` unless the input
    carries an explicit one.
    """
    where = f" (line {line_number})" if line_number is not None else ""
    try:
        raw = obj["name"]
    except KeyError:
        raise SnapshotFormatError(f"record is missing the 'name' field{where}") from None
    if not isinstance(raw, str):
        raise SnapshotFormatError(f"record 'name' must be a string{where}")

    owner_obj = obj.get("repository_owner")
    owner = None
    if owner_obj is not None:
        if not isinstance(owner_obj, Mapping):
            raise SnapshotFormatError(f"repository_owner must be an object{where}")
        members = owner_obj.get("member_ids") or []
        owner = OwnerRef(
            owner_id=str(owner_obj.get("owner_id", "")),
            kind=str(owner_obj.get("kind", "")),
            member_ids=frozenset(str(m) for m in members),
        )

    score = obj.get("maintained_score")
    downloads = obj.get("download_count")
    requirements = obj.get("requirements") or []
    if not isinstance(requirements, (list, tuple)):
        raise SnapshotFormatError(f"requirements must be a list{where}")
    raw_name = str(obj.get("raw_name") or raw)
    try:
        return PackageRecord(
            name=normalize_name(raw),
            raw_name=raw_name,
            requirements=tuple(str(r) for r in requirements),
            maintained_score=float(score) if score is not None else None,
            has_repository_link=bool(obj.get("has_repository_link", False)),
            has_contact_info=bool(obj.get("has_contact_info", False)),
            has_donation_link=bool(obj.get("has_donation_link", False)),
            repository_owner=owner,
            download_count=int(downloads) if downloads is not None else None,
        )
    except (SnapshotFormatError, InvalidNameError) as exc:
        raise SnapshotFormatError(f"{exc}{where}") from None


def read_records_ndjson(path: str | Path) -> list[PackageRecord]:
    """Read one record per non-blank line from a newline-delimited JSON file."""
    records: list[PackageRecord] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SnapshotFormatError(f"invalid JSON on line {lineno}: {exc}") from exc
            records.append(record_from_dict(obj, line_number=lineno))
    return records


def build_snapshot(
    records: Iterable[PackageRecord], include_optional: bool = True
) -> EcosystemSnapshot:
    """Assemble an immutable snapshot from parsed records.

    Requirement references are resolved against the package list; edges
    whose target has no record are dropped and counted, as are
    self-edges, duplicates, unparseable specifiers, and (when
    ``include_optional`` is false) extra-gated requirements. The result
    is deterministic for any input ordering of the same records.

    Raises :class:`AmbiguousNameError` when two records collide on the
    same normalized name.
    """
    by_name: dict[str, PackageRecord] = {}
    raw_names: dict[str, list[str]] = {}
    for rec in records:
        raw_names.setdefault(rec.name, []).append(rec.raw_name)
        by_name[rec.name] = rec
    collisions = {name: raws for name, raws in raw_names.items() if len(raws) > 1}
    if collisions:
        raise AmbiguousNameError(collisions)

    packages = {name: by_name[name] for name in sorted(by_name)}

    unresolved = self_loops = duplicates = optional_skipped = unparseable = 0
    edge_set: set[tuple[str, str]] = set()
    for name, rec in packages.items():
        for spec in rec.requirements:
            try:
                req = parse_requirement(spec)
            except RequirementParseError:
                unparseable += 1
                continue
            if req.is_optional and not include_optional:
                optional_skipped += 1
                continue
            target = req.target_name
            if target not in packages:
                unresolved += 1
            elif target == name:
                self_loops += 1
            elif (name, target) in edge_set:
                duplicates += 1
            else:
                edge_set.add((name, target))

    stats = FilterStats(
        unresolved_edges=unresolved,
        self_edges=self_loops,
        duplicate_edges=duplicates,
        optional_edges_skipped=optional_skipped,
        unparseable_requirements=unparseable,
    )
    return EcosystemSnapshot(
        packages=packages,
        edges=tuple(sorted(edge_set)),
        filter_stats=stats,
        include_optional=include_optional,
    )
