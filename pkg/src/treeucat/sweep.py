"""The sweeping move: peel one unimodal component off a density.

Sweeping from an origin vertex v produces the largest edge-linear function
h that has its mode at v and is dominated by f along every path leaving v.
Where h hits zero strictly inside an edge, the edge is subdivided so that
both h and the remainder f - h stay edge-linear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .density import EdgeLinearDensity
from .tree import EdgePoint, MetricTree, VertexId, subdivide_all

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Subdivision:
    """One vertex inserted by a sweep: on edge (u, w), u the origin side,
    at fraction t of the edge length from u."""

    vertex: VertexId
    u: VertexId
    w: VertexId
    t: Fraction


@dataclass(frozen=True)
class SweepResult:
    refined_tree: MetricTree
    f_refined: EdgeLinearDensity
    h: EdgeLinearDensity
    remainder: EdgeLinearDensity
    origin: VertexId
    subdivisions: tuple[Subdivision, ...]


def sweep(f: EdgeLinearDensity, v: VertexId) -> SweepResult:
    """Propagate h away from v and split edges where h vanishes.

    Rule per oriented edge u -> w: rising f copies h(u); falling f pays the
    drop, clamped at zero. A clamp strictly inside the edge (h(u) positive
    but smaller than the drop) inserts a vertex at t = h(u)/drop, where both
    h and the fresh remainder value f(u) - h(u) are exact.
    """
    tree = f.tree
    orientation = tree.root_at(v)
    h: dict[VertexId, Fraction] = {v: f.value(v)}
    cuts: list[tuple[EdgePoint, Fraction]] = []
    for u, w in orientation.oriented_edges():
        fu, fw = f.value(u), f.value(w)
        hu = h[u]
        if fu < fw:
            h[w] = hu
            continue
        drop = fu - fw
        if hu >= drop:
            h[w] = hu - drop
        else:
            h[w] = _ZERO
            if hu > 0:
                cuts.append((EdgePoint(u, w, hu / drop), fu - hu))

    if cuts:
        refined, names = subdivide_all(tree, [point for point, _ in cuts])
    else:
        refined, names = tree, ()

    f_values = dict(f.values)
    subdivisions = []
    for (point, f_at_cut), name in zip(cuts, names):
        f_values[name] = f_at_cut
        h[name] = _ZERO
        subdivisions.append(Subdivision(name, point.u, point.w, point.t))

    f_refined = EdgeLinearDensity(refined, f_values)
    h_density = EdgeLinearDensity(refined, h)
    r_values = {x: f_values[x] - h[x] for x in f_values}
    return SweepResult(
        refined_tree=refined,
        f_refined=f_refined,
        h=h_density,
        remainder=EdgeLinearDensity(refined, r_values),
        origin=v,
        subdivisions=tuple(subdivisions),
    )


def remainder(f: EdgeLinearDensity, v: VertexId) -> SweepResult:
    """Same computation as `sweep`; named for callers after f - h."""
    return sweep(f, v)
