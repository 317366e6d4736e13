"""Greedy minimal unimodal decomposition.

Repeat three steps until nothing is left: pick a vertex forced to carry a
mode, sweep a unimodal component off from there, keep the remainder. The
components live on one common refined tree; whenever a sweep subdivides an
edge, earlier components gain the interpolated value at the new vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .density import EdgeLinearDensity, extend_to_refinement, support_is_empty
from .errors import InternalInvariantError
from .forced import find_forced_vertex
from .sweep import sweep
from .tree import MetricTree, VertexId


@dataclass(frozen=True)
class Component:
    mode: VertexId
    density: EdgeLinearDensity


@dataclass(frozen=True)
class Decomposition:
    refined_tree: MetricTree
    components: tuple[Component, ...]
    input_on_refined: EdgeLinearDensity


@dataclass(frozen=True)
class TraceEvent:
    iteration: int
    forced_vertex: VertexId
    subdivided: tuple[VertexId, ...]
    remaining_mass: Fraction


def decompose(f: EdgeLinearDensity) -> tuple[Decomposition, list[TraceEvent]]:
    """Peel unimodal components until the density is exhausted.

    The zero density decomposes into no components at all. Iteration count
    is bounded by the vertex count of the refined tree; exceeding it means
    a bug, not a hard input, and aborts loudly.
    """
    if support_is_empty(f):
        return Decomposition(f.tree, (), f), []

    current = f
    peeled: list[tuple[VertexId, dict[VertexId, Fraction]]] = []
    trace: list[TraceEvent] = []
    iteration = 0
    while True:
        iteration += 1
        if iteration > len(current.tree.vertices):
            raise InternalInvariantError(
                f"decompose exceeded {len(current.tree.vertices)} iterations"
            )
        v = find_forced_vertex(current)
        result = sweep(current, v)
        for _, values in peeled:
            for cut in result.subdivisions:
                values[cut.vertex] = (1 - cut.t) * values[cut.u] + cut.t * values[cut.w]
        peeled.append((v, dict(result.h.values)))
        current = result.remainder
        trace.append(
            TraceEvent(
                iteration=iteration,
                forced_vertex=v,
                subdivided=tuple(cut.vertex for cut in result.subdivisions),
                remaining_mass=current.total_mass(),
            )
        )
        if support_is_empty(current):
            break

    final_tree = current.tree
    components = tuple(
        Component(mode, EdgeLinearDensity(final_tree, values))
        for mode, values in peeled
    )
    return (
        Decomposition(final_tree, components, extend_to_refinement(f, final_tree)),
        trace,
    )


def ucat(f: EdgeLinearDensity) -> int:
    """Minimal number of unimodal summands of f."""
    decomposition, _ = decompose(f)
    return len(decomposition.components)
