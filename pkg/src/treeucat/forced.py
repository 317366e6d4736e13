"""Locate a vertex that must carry a mode in every minimal decomposition.

The search prunes insignificant leaves to a fixpoint: a leaf whose value
does not exceed its neighbor's can be removed without changing how many
unimodal summands are needed. What survives is either a single vertex
(the density was unimodal) or a core whose leaves all strictly dominate
their neighbors; each such leaf is mode-forced.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .density import EdgeLinearDensity, ModeWitness, is_unimodal, support_is_empty
from .errors import InternalInvariantError, ZeroDensity
from .tree import VertexId


@dataclass(frozen=True)
class Unimodal:
    mode: VertexId


@dataclass(frozen=True)
class Forced:
    chosen: VertexId


@dataclass(frozen=True)
class PruneReport:
    surviving: frozenset
    forced_leaves: tuple[VertexId, ...]
    verdict: Unimodal | Forced


def prune_insignificant(f: EdgeLinearDensity) -> PruneReport:
    """Remove prunable leaves in ascending id order until none remain.

    A leaf is prunable when its value is at most its unique neighbor's.
    The last vertex is never removed. Once a vertex becomes a leaf its
    neighbor can only disappear in the final two-vertex step, so a leaf's
    prunability never changes while it waits in the queue; pushing each
    vertex when it turns into a prunable leaf visits everything exactly
    once in the required order.
    """
    if support_is_empty(f):
        raise ZeroDensity("cannot prune the identically-zero density")
    tree = f.tree
    alive = set(tree.vertices)
    degree = {v: tree.degree(v) for v in alive}

    def sole_neighbor(v: VertexId) -> VertexId:
        return next(nb for nb in tree.neighbors(v) if nb in alive)

    def prunable(v: VertexId) -> bool:
        return degree[v] <= 1 and (
            degree[v] == 0 or f.value(v) <= f.value(sole_neighbor(v))
        )

    queue = [v for v in tree.vertices if degree[v] == 1 and prunable(v)]
    heapq.heapify(queue)
    while queue and len(alive) > 1:
        leaf = heapq.heappop(queue)
        if leaf not in alive or not prunable(leaf):
            continue
        nb = sole_neighbor(leaf)
        alive.remove(leaf)
        degree[nb] -= 1
        if degree[nb] == 1 and nb in alive and prunable(nb):
            heapq.heappush(queue, nb)

    if len(alive) == 1:
        witness = is_unimodal(f)
        if not isinstance(witness, ModeWitness):
            raise InternalInvariantError(
                f"pruning reached one vertex but density is not unimodal: {witness}"
            )
        return PruneReport(frozenset(alive), (), Unimodal(witness.mode))

    forced = tuple(sorted(v for v in alive if degree[v] == 1))
    if len(forced) < 2:
        raise InternalInvariantError(
            f"prune fixpoint {sorted(alive)} has fewer than two forced leaves"
        )
    top = max(f.value(v) for v in forced)
    chosen = min(v for v in forced if f.value(v) == top)
    return PruneReport(frozenset(alive), forced, Forced(chosen))


def find_forced_vertex(f: EdgeLinearDensity) -> VertexId:
    """A vertex carrying a mode in every minimal decomposition of f.

    Unimodal densities report their mode; otherwise the forced leaf with
    the largest value wins, ties broken by id.
    """
    report = prune_insignificant(f)
    if isinstance(report.verdict, Unimodal):
        return report.verdict.mode
    return report.verdict.chosen
