"""Edge-linear densities on metric trees.

A density assigns a nonnegative rational to every vertex and is linearly
interpolated along edges. The interpolant itself is never stored; every
algorithm in this package works with vertex values only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .errors import NegativeValue, TreeMismatch, UnknownVertex
from .rational import as_fraction
from .tree import EdgePoint, MergeRecord, MetricTree, VertexId


class EdgeLinearDensity:
    """Nonnegative vertex values bound to one specific tree.

    Mixing a density with a different tree is always a hard error, never a
    silent re-index; use `extend_to_refinement` to move to a refined tree.
    """

    __slots__ = ("_tree", "_values")

    def __init__(self, tree: MetricTree, values: Mapping[VertexId, object]):
        converted: dict[VertexId, Fraction] = {}
        for v, raw in values.items():
            if not tree.has_vertex(v):
                raise TreeMismatch(f"density value for {v!r}, not a tree vertex")
            val = as_fraction(raw)
            if val < 0:
                raise NegativeValue(f"density value {val} at {v!r} is negative")
            converted[v] = val
        for v in tree.vertices:
            if v not in converted:
                raise TreeMismatch(f"no density value for vertex {v!r}")
        self._tree = tree
        self._values = converted

    @property
    def tree(self) -> MetricTree:
        return self._tree

    @property
    def values(self) -> Mapping[VertexId, Fraction]:
        return MappingProxyType(self._values)

    def value(self, v: VertexId) -> Fraction:
        try:
            return self._values[v]
        except KeyError:
            raise UnknownVertex(f"no vertex {v!r}") from None

    def max_value(self) -> Fraction:
        return max(self._values.values())

    def total_mass(self) -> Fraction:
        """Sum of vertex values (not an integral; used as progress measure)."""
        return sum(self._values.values(), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeLinearDensity):
            return NotImplemented
        return self._tree == other._tree and self._values == other._values

    def __hash__(self) -> int:
        return hash((self._tree, tuple(sorted(self._values.items()))))

    def __repr__(self) -> str:
        shown = ", ".join(f"{v}={self._values[v]}" for v in self._tree.vertices[:4])
        more = ", ..." if len(self._tree.vertices) > 4 else ""
        return f"EdgeLinearDensity({shown}{more})"


@dataclass(frozen=True)
class ModeWitness:
    mode: VertexId
    max_value: Fraction


@dataclass(frozen=True)
class NotUnimodal:
    """Failure evidence: one oriented edge rising away from the chosen peak,
    or the zero-density marker (no witness edge exists in that case)."""

    edge: tuple[VertexId, VertexId] | None
    zero_density: bool = False


def support_is_empty(f: EdgeLinearDensity) -> bool:
    """True iff all vertex values are 0 (edge-linearity then forces f = 0)."""
    return all(val == 0 for val in f.values.values())


def value_at(f: EdgeLinearDensity, p: EdgePoint) -> Fraction:
    """Exact value of the interpolant at a point of an edge."""
    f.tree.edge_length(p.u, p.w)  # raises UnknownEdge for foreign edges
    return (1 - p.t) * f.value(p.u) + p.t * f.value(p.w)


def is_unimodal(f: EdgeLinearDensity) -> ModeWitness | NotUnimodal:
    """Decide unimodality; return a mode witness or one violating edge.

    Rooting at the lexicographically smallest global-argmax vertex, f is
    unimodal iff no edge oriented away from the root rises. Which argmax is
    chosen does not matter: were two maxima separated by a dip, the edge
    climbing back up would be reported from either root.
    """
    if support_is_empty(f):
        return NotUnimodal(edge=None, zero_density=True)
    top = f.max_value()
    root = min(v for v in f.tree.vertices if f.value(v) == top)
    for u, w in f.tree.root_at(root).oriented_edges():
        if f.value(u) < f.value(w):
            return NotUnimodal(edge=(u, w))
    return ModeWitness(root, top)


def normalize(f: EdgeLinearDensity) -> tuple[EdgeLinearDensity, list[MergeRecord]]:
    """Contract every constant edge (equal endpoint values) to a fixpoint.

    Contractions run in lexicographic edge order, rescanning after each one.
    The returned records allow lifting results back: a component lifts by
    giving both endpoints of each contracted edge its survivor's value.
    """
    tree = f.tree
    values = dict(f.values)
    records: list[MergeRecord] = []
    while True:
        constant = next(
            (
                (u, w)
                for u, w, _ in tree.edge_list
                if values[u] == values[w]
            ),
            None,
        )
        if constant is None:
            return EdgeLinearDensity(tree, values), records
        tree, record = tree.contract_edge(*constant)
        del values[record.removed]
        records.append(record)


def extend_to_refinement(
    f: EdgeLinearDensity, refined: MetricTree
) -> EdgeLinearDensity:
    """Re-express f on a tree obtained from f.tree by edge subdivisions.

    Vertices of `refined` that are not vertices of f.tree must sit on
    subdivision chains of original edges; they receive the interpolated
    value. Any structural disagreement raises TreeMismatch.
    """
    original = f.tree
    if original == refined:
        return EdgeLinearDensity(refined, dict(f.values))
    for v in original.vertices:
        if not refined.has_vertex(v):
            raise TreeMismatch(f"refinement lost vertex {v!r}")

    old_set = original.vertex_set
    values: dict[VertexId, Fraction] = {v: f.value(v) for v in original.vertices}
    covered = set(original.vertices)
    for u, w, length in original.edge_list:
        chain = _subdivision_chain(refined, old_set, u, w)
        run = Fraction(0)
        prev = u
        for s in chain:
            run += refined.edge_length(prev, s)
            prev = s
        total = run + refined.edge_length(prev, w)
        if total != length:
            raise TreeMismatch(
                f"edge {u!r}-{w!r}: refined chain length {total} != {length}"
            )
        run = Fraction(0)
        prev = u
        fu, fw = f.value(u), f.value(w)
        for s in chain:
            run += refined.edge_length(prev, s)
            t = run / length
            values[s] = (1 - t) * fu + t * fw
            covered.add(s)
            prev = s
    if covered != refined.vertex_set:
        extra = sorted(refined.vertex_set - covered)[0]
        raise TreeMismatch(f"refined vertex {extra!r} lies on no original edge")
    return EdgeLinearDensity(refined, values)


def _subdivision_chain(
    refined: MetricTree, old_set: frozenset, u: VertexId, w: VertexId
) -> list[VertexId]:
    """Interior vertices of the refined path replacing original edge (u, w)."""
    if refined.has_edge(u, w):
        return []
    for first in refined.neighbors(u):
        if first in old_set:
            continue
        # subdivision vertices always have degree 2, so chains never branch
        chain = [first]
        prev, cur = u, first
        while cur not in old_set and len(refined.neighbors(cur)) == 2:
            nxt = next(x for x in refined.neighbors(cur) if x != prev)
            prev, cur = cur, nxt
            if cur not in old_set:
                chain.append(cur)
        if cur == w:
            return chain
    raise TreeMismatch(f"no refined chain found for edge {u!r}-{w!r}")
