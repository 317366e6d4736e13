"""Immutable finite metric trees and their structural transforms.

A tree is a set of string vertex ids plus unordered edges with strictly
positive rational lengths. All operations return new trees; nothing is
mutated in place, so values can be shared freely across threads.

Vertex ids supplied by users must match ``[A-Za-z0-9][A-Za-z0-9_-]*``.
The prefix ``_`` is reserved for synthetic subdivision vertices, which are
named ``_s<N>`` from a per-tree monotone counter so repeated runs produce
identical trees.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    CycleDetected,
    Disconnected,
    DuplicateVertexId,
    EndpointSubdivision,
    InvalidVertexId,
    NonPositiveLength,
    UnknownEdge,
    UnknownVertex,
)
from .rational import as_fraction

VertexId = str

_USER_ID = re.compile(r"[A-Za-z0-9][A-Za-z0-9_-]*\Z")
_SYNTH_ID = re.compile(r"_s[0-9]+\Z")


def is_valid_vertex_id(vid: str) -> bool:
    return bool(_USER_ID.match(vid)) or bool(_SYNTH_ID.match(vid))


def edge_key(u: VertexId, w: VertexId) -> tuple[VertexId, VertexId]:
    """Canonical (sorted) form of an unordered edge."""
    return (u, w) if u <= w else (w, u)


@dataclass(frozen=True)
class EdgePoint:
    """A point on edge (u, w) at fraction t of its length, measured from u."""

    u: VertexId
    w: VertexId
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_fraction(self.t))
        if not 0 <= self.t <= 1:
            raise ValueError(f"edge parameter t={self.t} outside [0, 1]")


@dataclass(frozen=True)
class Orientation:
    """Rooted view of a tree: parent pointers toward root, BFS visit order.

    Children are visited in lexicographic order, so `order` (and the
    derived oriented edge list) is deterministic.
    """

    root: VertexId
    parent: Mapping[VertexId, VertexId]
    order: tuple[VertexId, ...]

    def oriented_edges(self) -> tuple[tuple[VertexId, VertexId], ...]:
        """Edges as (parent, child) pairs in BFS discovery order."""
        return tuple((self.parent[w], w) for w in self.order[1:])


@dataclass(frozen=True)
class MergeRecord:
    """Everything needed to reverse one edge contraction.

    `moved` lists the edges (neighbor, length) that were re-attached from
    the removed vertex to the survivor.
    """

    survivor: VertexId
    removed: VertexId
    length: Fraction
    moved: tuple[tuple[VertexId, Fraction], ...]


class MetricTree:
    """Validated immutable metric tree."""

    __slots__ = ("_vertex_set", "_vertices", "_lengths", "_adj", "_synth_counter")

    def __init__(
        self,
        vertices: Iterable[VertexId],
        edges: Iterable[tuple] = (),
        _synth_counter: int | None = None,
    ):
        vlist = list(vertices)
        seen = set()
        for v in vlist:
            if not isinstance(v, str) or not is_valid_vertex_id(v):
                raise InvalidVertexId(f"invalid vertex id {v!r}")
            if v in seen:
                raise DuplicateVertexId(f"duplicate vertex id {v!r}")
            seen.add(v)
        lengths: dict[tuple[VertexId, VertexId], Fraction] = {}
        for u, w, raw_len in edges:
            if u not in seen:
                raise UnknownVertex(f"edge endpoint {u!r} is not a vertex")
            if w not in seen:
                raise UnknownVertex(f"edge endpoint {w!r} is not a vertex")
            if u == w:
                raise CycleDetected(f"self-loop at {u!r}")
            length = as_fraction(raw_len)
            if length <= 0:
                raise NonPositiveLength(f"edge {u!r}-{w!r} has length {length}")
            key = edge_key(u, w)
            if key in lengths:
                raise CycleDetected(f"parallel edge {u!r}-{w!r}")
            lengths[key] = length

        if len(lengths) > len(seen) - 1:
            raise CycleDetected(
                f"{len(lengths)} edges on {len(seen)} vertices imply a cycle"
            )

        adj: dict[VertexId, list[VertexId]] = {v: [] for v in seen}
        for u, w in lengths:
            adj[u].append(w)
            adj[w].append(u)

        if vlist:
            start = vlist[0]
            reached = {start}
            queue = deque([start])
            while queue:
                cur = queue.popleft()
                for nb in adj[cur]:
                    if nb not in reached:
                        reached.add(nb)
                        queue.append(nb)
            if len(reached) != len(seen):
                missing = sorted(seen - reached)[0]
                raise Disconnected(f"vertex {missing!r} unreachable from {start!r}")
        # connected with |E| = |V| - 1 is acyclic; |E| > |V| - 1 was caught above

        self._vertex_set = frozenset(seen)
        self._vertices = tuple(sorted(seen))
        self._lengths = lengths
        self._adj = {v: tuple(sorted(nbs)) for v, nbs in adj.items()}
        if _synth_counter is None:
            _synth_counter = 1 + max(
                (int(v[2:]) for v in seen if _SYNTH_ID.match(v)), default=0
            )
        self._synth_counter = _synth_counter

    # -- queries -------------------------------------------------------------

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self._vertices

    @property
    def vertex_set(self) -> frozenset:
        return self._vertex_set

    @property
    def edge_list(self) -> tuple[tuple[VertexId, VertexId, Fraction], ...]:
        return tuple((u, w, self._lengths[(u, w)]) for u, w in sorted(self._lengths))

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._vertex_set

    def has_edge(self, u: VertexId, w: VertexId) -> bool:
        return edge_key(u, w) in self._lengths

    def edge_length(self, u: VertexId, w: VertexId) -> Fraction:
        try:
            return self._lengths[edge_key(u, w)]
        except KeyError:
            raise UnknownEdge(f"no edge {u!r}-{w!r}") from None

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"no vertex {v!r}") from None

    def degree(self, v: VertexId) -> int:
        return len(self.neighbors(v))

    def leaves(self) -> tuple[VertexId, ...]:
        return tuple(v for v in self._vertices if len(self._adj[v]) <= 1)

    def total_length(self) -> Fraction:
        return sum(self._lengths.values(), Fraction(0))

    def adjacency(self) -> Mapping[VertexId, tuple[VertexId, ...]]:
        return MappingProxyType(self._adj)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricTree):
            return NotImplemented
        return self._vertex_set == other._vertex_set and self._lengths == other._lengths

    def __hash__(self) -> int:
        return hash((self._vertex_set, tuple(sorted(self._lengths.items()))))

    def __repr__(self) -> str:
        return f"MetricTree({len(self._vertices)} vertices, {len(self._lengths)} edges)"

    # -- transforms ----------------------------------------------------------

    def root_at(self, root: VertexId) -> Orientation:
        """Orient all edges away from `root` (BFS, children in lex order)."""
        if root not in self._vertex_set:
            raise UnknownVertex(f"no vertex {root!r}")
        parent: dict[VertexId, VertexId] = {}
        order = [root]
        queue = deque([root])
        while queue:
            cur = queue.popleft()
            for nb in self._adj[cur]:
                if nb != parent.get(cur):
                    parent[nb] = cur
                    order.append(nb)
                    queue.append(nb)
        return Orientation(root, MappingProxyType(parent), tuple(order))

    def subdivide(self, point: EdgePoint) -> tuple["MetricTree", VertexId]:
        """Split one edge at an interior point; returns (new tree, new id)."""
        refined, names = subdivide_all(self, [point])
        return refined, names[0]

    def contract_edge(self, u: VertexId, w: VertexId) -> tuple["MetricTree", MergeRecord]:
        """Collapse edge (u, w); the lexicographically smaller id survives."""
        key = edge_key(u, w)
        if key not in self._lengths:
            raise UnknownEdge(f"no edge {u!r}-{w!r}")
        survivor, removed = key
        moved = tuple(
            (nb, self._lengths[edge_key(removed, nb)])
            for nb in self._adj[removed]
            if nb != survivor
        )
        new_edges = [
            (a, b, length)
            for (a, b), length in self._lengths.items()
            if removed not in (a, b)
        ]
        new_edges.extend((survivor, nb, length) for nb, length in moved)
        vertices = [v for v in self._vertices if v != removed]
        record = MergeRecord(survivor, removed, self._lengths[key], moved)
        return (
            MetricTree(vertices, new_edges, _synth_counter=self._synth_counter),
            record,
        )

    def uncontract(self, record: MergeRecord) -> "MetricTree":
        """Reverse a contraction performed on this tree's predecessor."""
        if record.survivor not in self._vertex_set:
            raise UnknownVertex(f"survivor {record.survivor!r} missing")
        if record.removed in self._vertex_set:
            raise DuplicateVertexId(f"{record.removed!r} already present")
        new_edges = []
        restored = {nb for nb, _ in record.moved}
        for (a, b), length in self._lengths.items():
            if a == record.survivor and b in restored:
                new_edges.append((record.removed, b, length))
            elif b == record.survivor and a in restored:
                new_edges.append((record.removed, a, length))
            else:
                new_edges.append((a, b, length))
        new_edges.append((record.survivor, record.removed, record.length))
        vertices = list(self._vertices) + [record.removed]
        return MetricTree(vertices, new_edges, _synth_counter=self._synth_counter)


def subdivide_all(
    tree: MetricTree, points: Sequence[EdgePoint]
) -> tuple[MetricTree, tuple[VertexId, ...]]:
    """Subdivide several distinct edges in one pass.

    Synthetic names `_s<N>` are assigned in the order the points are given,
    matching what repeated single subdivisions would produce. Each edge may
    appear at most once per call.
    """
    lengths = dict(tree._lengths)
    counter = tree._synth_counter
    new_vertices: list[VertexId] = []
    for point in points:
        key = edge_key(point.u, point.w)
        if key not in tree._lengths:
            raise UnknownEdge(f"no edge {point.u!r}-{point.w!r}")
        if key not in lengths:
            raise ValueError(f"edge {key} subdivided twice in one batch")
        if point.t == 0 or point.t == 1:
            raise EndpointSubdivision(
                f"t={point.t} on edge {point.u!r}-{point.w!r} is an endpoint"
            )
        total = lengths.pop(key)
        # t is measured from point.u regardless of canonical edge order
        t_from_first = point.t if key[0] == point.u else 1 - point.t
        name = f"_s{counter}"
        counter += 1
        new_vertices.append(name)
        lengths[edge_key(key[0], name)] = total * t_from_first
        lengths[edge_key(name, key[1])] = total * (1 - t_from_first)
    vertices = list(tree._vertices) + new_vertices
    edges = [(u, w, length) for (u, w), length in lengths.items()]
    return (
        MetricTree(vertices, edges, _synth_counter=counter),
        tuple(new_vertices),
    )


def path_between(tree: MetricTree, a: VertexId, b: VertexId) -> tuple[VertexId, ...]:
    """Vertices of the unique a-b path, endpoints included."""
    orientation = tree.root_at(a)
    if b not in tree.vertex_set:
        raise UnknownVertex(f"no vertex {b!r}")
    path = [b]
    while path[-1] != a:
        path.append(orientation.parent[path[-1]])
    return tuple(reversed(path))
