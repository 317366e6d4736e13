"""Shared fixtures and independent reference computations for the tests.

The reference implementations here are deliberately naive and share no
logic with the package: the sweep oracle uses a closed form over paths,
and the unimodality oracle checks excursion-set connectivity directly.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from treeucat import EdgeLinearDensity, MetricTree


def path_instance(values, prefix="v"):
    """Path tree v1..vn with unit lengths and the given vertex values."""
    n = len(values)
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    edges = [(names[i], names[i + 1], 1) for i in range(n - 1)]
    tree = MetricTree(names, edges)
    return tree, EdgeLinearDensity(tree, dict(zip(names, values)))


def star_instance(center_value, leaf_values):
    """Star with center c and leaves named by the leaf_values mapping."""
    names = ["c"] + sorted(leaf_values)
    edges = [("c", leaf, 1) for leaf in sorted(leaf_values)]
    tree = MetricTree(names, edges)
    values = {"c": center_value, **leaf_values}
    return tree, EdgeLinearDensity(tree, values)


def sweep_oracle_h(f: EdgeLinearDensity, origin) -> dict:
    """Closed form for the swept function at original vertices.

    Along the unique path from the origin, rises carry h unchanged and
    descents charge their full drop, floored at zero once exhausted:
    h(x) = max(0, f(origin) - sum of drops on the path origin -> x).
    """
    tree = f.tree
    adjacency = tree.adjacency()
    drop = {origin: Fraction(0)}
    h = {origin: f.value(origin)}
    queue = deque([origin])
    seen = {origin}
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if w in seen:
                continue
            seen.add(w)
            step = max(Fraction(0), f.value(u) - f.value(w))
            drop[w] = drop[u] + step
            h[w] = max(Fraction(0), f.value(origin) - drop[w])
            queue.append(w)
    return h


def unimodal_by_excursions(f: EdgeLinearDensity) -> bool:
    """Unite the package's definition: every nonempty upper excursion set
    is connected. For an edge-linear density it is enough to test the
    induced vertex subgraphs at each attained positive vertex level."""
    levels = sorted({v for v in f.values.values() if v > 0})
    if not levels:
        return False
    adjacency = f.tree.adjacency()
    for c in levels:
        inside = {v for v in f.tree.vertices if f.value(v) >= c}
        start = next(iter(sorted(inside)))
        reached = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adjacency[u]:
                if w in inside and w not in reached:
                    reached.add(w)
                    queue.append(w)
        if reached != inside:
            return False
    return True


def random_path_values(rng, max_len, max_value):
    n = rng.randint(1, max_len)
    return [rng.randint(0, max_value) for _ in range(n)]
