from __future__ import annotations

from fractions import Fraction

import pytest

from treeucat import (
    EdgeLinearDensity,
    MetricTree,
    ModeWitness,
    TraceEvent,
    check_decomposition,
    decompose,
    gen_instance,
    interval_ucat,
    is_unimodal,
    support_is_empty,
    ucat,
    ucat_oracle,
)

from helpers import path_instance, star_instance


def _component_maps(decomposition):
    return [
        (c.mode, {v: val for v, val in c.density.values.items()})
        for c in decomposition.components
    ]


def test_unimodal_input_gives_single_component():
    tree = MetricTree(["A", "B", "C"], [("A", "B", 1), ("B", "C", 1)])
    f = EdgeLinearDensity(tree, {"A": 1, "B": 2, "C": 1})
    d, trace = decompose(f)
    assert len(d.components) == 1
    assert d.components[0].mode == "B"
    assert d.components[0].density == f
    assert d.refined_tree == tree
    assert d.input_on_refined == f
    assert trace == [TraceEvent(1, "B", (), Fraction(0))]


def test_two_peak_path():
    _, f = path_instance([1, 2, 1, 2, 1])
    d, trace = decompose(f)
    assert [c.mode for c in d.components] == ["v2", "v4"]
    assert _component_maps(d) == [
        ("v2", {"v1": 1, "v2": 2, "v3": 1, "v4": 1, "v5": 0}),
        ("v4", {"v1": 0, "v2": 0, "v3": 0, "v4": 1, "v5": 1}),
    ]
    assert ucat(f) == 2


def test_star_needs_three_components():
    _, f = star_instance(1, {"a": 2, "b": 2, "d": 2})
    d, _ = decompose(f)
    assert [c.mode for c in d.components] == ["a", "b", "d"]
    assert len(d.components) == 3
    totals = {
        v: sum(c.density.value(v) for c in d.components)
        for v in d.refined_tree.vertices
    }
    assert totals == {v: f.value(v) for v in f.tree.vertices}


def test_zero_density_empty_decomposition():
    _, f = path_instance([0, 0, 0])
    d, trace = decompose(f)
    assert d.components == ()
    assert trace == []
    assert d.refined_tree == f.tree
    assert d.input_on_refined == f
    assert ucat(f) == 0


def test_trace_masses_can_start_above_initial_mass():
    # the first remainder redistributes onto subdivision vertices, so its
    # vertex-sum may exceed the input's; within the trace it still falls
    # strictly to zero
    _, f = path_instance([5, 1, 10, 1, 5])
    d, trace = decompose(f)
    assert len(d.components) == 3
    assert [c.mode for c in d.components] == ["v1", "_s1", "v5"]
    masses = [ev.remaining_mass for ev in trace]
    assert masses == [Fraction(24), Fraction(4), Fraction(0)]
    assert masses[0] > sum(f.values.values())
    assert ucat_oracle(f, 7) == 3
    assert interval_ucat(["5", "1", "10", "1", "5"]) == 3


def test_second_mode_on_synthetic_vertex():
    _, f = path_instance([0, 4, 1, 3, 0])
    d, trace = decompose(f)
    assert [c.mode for c in d.components] == ["v2", "_s1"]
    assert d.refined_tree.edge_length("v4", "_s1") == Fraction(1, 3)
    assert d.refined_tree.edge_length("_s1", "v5") == Fraction(2, 3)
    assert d.input_on_refined.value("_s1") == 2
    assert trace[0].subdivided == ("_s1",)
    assert ucat_oracle(f, 7) == 2


def test_two_subdivisions_and_lifting():
    _, f = path_instance([4, 1, 4, 1, 4])
    d, trace = decompose(f)
    assert _component_maps(d) == [
        ("v1", {"v1": 4, "v2": 1, "v3": 1, "v4": 0, "v5": 0, "_s1": 0, "_s2": 1}),
        ("v5", {"v1": 0, "v2": 0, "v3": 1, "v4": 1, "v5": 4, "_s1": 1, "_s2": 0}),
        ("_s1", {"v1": 0, "v2": 0, "v3": 2, "v4": 0, "v5": 0, "_s1": 2, "_s2": 2}),
    ]
    assert [ev.subdivided for ev in trace] == [("_s1",), ("_s2",), ()]
    assert [ev.remaining_mass for ev in trace] == [
        Fraction(11),
        Fraction(6),
        Fraction(0),
    ]
    # iteration 1 cuts (v3, v4) at one third, iteration 2 cuts (v3, v2)
    assert d.refined_tree.edge_length("v3", "_s1") == Fraction(1, 3)
    assert d.refined_tree.edge_length("_s1", "v4") == Fraction(2, 3)
    assert d.refined_tree.edge_length("v3", "_s2") == Fraction(1, 3)
    assert d.refined_tree.edge_length("_s2", "v2") == Fraction(2, 3)
    # the input re-expressed on the refined tree interpolates its own values
    assert d.input_on_refined.value("_s1") == 3
    assert d.input_on_refined.value("_s2") == 3
    assert ucat_oracle(f, 7) == 3


def test_deterministic_output():
    tree, f = gen_instance(31, 10, 5)
    first, first_trace = decompose(f)
    second, second_trace = decompose(f)
    assert first.refined_tree == second.refined_tree
    assert first.components == second.components
    assert first_trace == second_trace


def test_components_sum_and_are_unimodal():
    for seed in range(60):
        _, f = gen_instance(seed, 12, 5)
        d, trace = decompose(f)
        for v in d.refined_tree.vertices:
            total = sum(c.density.value(v) for c in d.components)
            assert total == d.input_on_refined.value(v)
        for c in d.components:
            witness = is_unimodal(c.density)
            assert isinstance(witness, ModeWitness)
            assert c.density.value(c.mode) == c.density.max_value()
        assert len(trace) == len(d.components)
        masses = [ev.remaining_mass for ev in trace]
        assert all(a > b for a, b in zip(masses, masses[1:]))
        if masses:
            assert masses[-1] == 0
        assert check_decomposition(f, d).overall


def test_small_instances_match_oracle():
    for seed in range(40):
        _, f = gen_instance(seed, 5, 4)
        assert ucat(f) == ucat_oracle(f, 5), seed


def test_modes_are_distinct_vertices():
    for seed in range(60):
        _, f = gen_instance(seed, 12, 5)
        d, _ = decompose(f)
        modes = [c.mode for c in d.components]
        assert len(modes) == len(set(modes))
