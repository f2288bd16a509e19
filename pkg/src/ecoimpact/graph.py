"""Dependency graph construction, condensation, and transitive reach counting.

The graph orients edges dependent -> dependency. The reach of a package p
is the number of packages q whose transitive dependency closure contains
p, counting q = p itself; equivalently the number of distinct packages
that can reach p along forward edges. Cycles are handled by condensing
strongly connected components first: mutually dependent packages belong
to each other's closures and therefore share one reach value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import UnknownPackageError
from .snapshot import EcosystemSnapshot


@dataclass(frozen=True)
class DependencyGraph:
    """Adjacency view of a snapshot with dense integer node ids.

    Ids are assigned in lexicographic name order, so identical snapshots
    always produce identical graphs. ``forward`` holds dependencies,
    ``reverse`` holds dependents; the two are exact transposes.
    """

    names: tuple[str, ...]
    index: Mapping[str, int]
    forward: tuple[tuple[int, ...], ...]
    reverse: tuple[tuple[int, ...], ...]

    @property
    def n_nodes(self) -> int:
        return len(self.names)

    @property
    def n_edges(self) -> int:
        return sum(len(adj) for adj in self.forward)

    def node_id(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownPackageError(f"unknown package {name!r}") from None


@dataclass(frozen=True)
class CondensedDag:
    """Strongly-connected-component condensation of a dependency graph.

    Components are numbered by their smallest member node id, which makes
    the numbering deterministic. ``dag_edges`` is the acyclic
    inter-component adjacency, oriented like the underlying graph.
    """

    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    dag_edges: tuple[tuple[int, ...], ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def component_sizes(self) -> tuple[int, ...]:
        return tuple(len(members) for members in self.components)


@dataclass(frozen=True)
class ReachTable:
    """Per-package transitive-dependent counts (each at least 1: the root itself)."""

    reach: Mapping[str, int]

    def __getitem__(self, name: str) -> int:
        try:
            return self.reach[name]
        except KeyError:
            raise UnknownPackageError(f"unknown package {name!r}") from None

    def __len__(self) -> int:
        return len(self.reach)

    def items(self):
        return self.reach.items()

    def to_csv(self) -> str:
        lines = ["package,reach"]
        lines.extend(f"{name},{self.reach[name]}" for name in sorted(self.reach))
        return "\n".join(lines) + "\n"

    def save_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")


def build_graph(snapshot: EcosystemSnapshot) -> DependencyGraph:
    """Index a snapshot into dense adjacency lists."""
    names = tuple(snapshot.packages)
    index = {name: i for i, name in enumerate(names)}
    fwd: list[list[int]] = [[] for _ in names]
    rev: list[list[int]] = [[] for _ in names]
    for dependent, dependency in snapshot.edges:
        u, v = index[dependent], index[dependency]
        fwd[u].append(v)
        rev[v].append(u)
    return DependencyGraph(
        names=names,
        index=index,
        forward=tuple(tuple(sorted(adj)) for adj in fwd),
        reverse=tuple(tuple(sorted(adj)) for adj in rev),
    )


def _tarjan_sccs(adjacency: Sequence[Sequence[int]]) -> list[list[int]]:
    """Iterative Tarjan; returns components in reverse topological order."""
    n = len(adjacency)
    index_of = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index_of[root] != -1:
            continue
        work: list[list[int]] = [[root, 0]]
        while work:
            frame = work[-1]
            v, edge_pos = frame
            if edge_pos == 0:
                index_of[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            descended = False
            neighbors = adjacency[v]
            while edge_pos < len(neighbors):
                w = neighbors[edge_pos]
                edge_pos += 1
                if index_of[w] == -1:
                    frame[1] = edge_pos
                    work.append([w, 0])
                    descended = True
                    break
                if on_stack[w]:
                    if index_of[w] < low[v]:
                        low[v] = index_of[w]
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index_of[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    component.append(w)
                    if w == v:
                        break
                sccs.append(component)
    return sccs


def condense(graph: DependencyGraph) -> CondensedDag:
    """Collapse strongly connected components into an acyclic DAG."""
    raw = _tarjan_sccs(graph.forward)
    ordered = sorted((sorted(members) for members in raw), key=lambda m: m[0])
    component_of = [0] * graph.n_nodes
    for comp_id, members in enumerate(ordered):
        for node in members:
            component_of[node] = comp_id

    successor_sets: list[set[int]] = [set() for _ in ordered]
    for u in range(graph.n_nodes):
        cu = component_of[u]
        for v in graph.forward[u]:
            cv = component_of[v]
            if cu != cv:
                successor_sets[cu].add(cv)

    return CondensedDag(
        component_of=tuple(component_of),
        components=tuple(tuple(members) for members in ordered),
        dag_edges=tuple(tuple(sorted(succ)) for succ in successor_sets),
    )


def reach_counts(graph: DependencyGraph, dag: CondensedDag | None = None) -> ReachTable:
    """Count, for every package, the distinct packages that transitively depend on it.

    Aggregates ancestor sets over the condensed DAG as bit vectors in
    dependent-first topological order, so shared dependents are counted
    once. Every member of a strongly connected component gets the same
    reach.
    """
    if dag is None:
        dag = condense(graph)
    n_comp = dag.n_components
    sizes = np.array(dag.component_sizes, dtype=np.int64)

    indegree = [0] * n_comp
    for succ in dag.dag_edges:
        for c in succ:
            indegree[c] += 1

    # ancestors[c] is a bitset over component ids that can reach c, including c.
    ancestors = [1 << c for c in range(n_comp)]
    queue = deque(c for c in range(n_comp) if indegree[c] == 0)
    processed = 0
    while queue:
        p = queue.popleft()
        processed += 1
        bits = ancestors[p]
        for c in dag.dag_edges[p]:
            ancestors[c] |= bits
            indegree[c] -= 1
            if indegree[c] == 0:
                queue.append(c)
    assert processed == n_comp, "condensed graph must be acyclic"

    nbytes = (n_comp + 7) // 8
    comp_reach = [0] * n_comp
    for c in range(n_comp):
        buf = ancestors[c].to_bytes(nbytes, "little")
        mask = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")[:n_comp]
        comp_reach[c] = int(mask @ sizes)

    reach = {
        name: comp_reach[dag.component_of[i]] for i, name in enumerate(graph.names)
    }
    return ReachTable(reach=reach)


def closure(graph: DependencyGraph, root: str) -> set[str]:
    """Names in the transitive dependency closure of ``root``, root included."""
    start = graph.node_id(root)
    seen = {start}
    frontier = deque([start])
    while frontier:
        u = frontier.popleft()
        for v in graph.forward[u]:
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return {graph.names[i] for i in seen}
