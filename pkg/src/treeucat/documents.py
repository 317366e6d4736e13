"""Document formats: instances and decompositions as JSON-syntax text.

All numbers travel as strings ("3", "1/3", "0.25") and convert exactly to
rationals, so files round-trip without any loss. Instance files may only
use user ids; decomposition files may also contain the tool's synthetic
`_s<N>` subdivision vertices.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from typing import Mapping

from .density import EdgeLinearDensity, extend_to_refinement
from .errors import DocumentError
from .greedy import Component, Decomposition
from .rational import as_fraction, frac_str
from .sweep import SweepResult
from .tree import MetricTree, VertexId, is_valid_vertex_id

_USER_ID = re.compile(r"[A-Za-z0-9][A-Za-z0-9_-]*\Z")


@dataclass(frozen=True)
class DecompositionDocument:
    tree: MetricTree
    components: tuple[Component, ...]
    ucat: int
    provenance: Mapping[str, str]


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(
            f"line {err.lineno}, column {err.colno}: {err.msg}"
        ) from None


def _check_sections(data, required: set, what: str) -> None:
    if not isinstance(data, dict):
        raise DocumentError(f"{what} must be a single object")
    for key in sorted(required - set(data)):
        raise DocumentError(f"{what} is missing section {key!r}")
    for key in sorted(set(data) - required):
        raise DocumentError(f"{what} has unknown section {key!r}")


def _number(raw, what: str):
    if not isinstance(raw, str):
        raise DocumentError(
            f"{what}: numbers must be exact strings like \"3\", \"1/3\" or \"0.25\","
            f" got {raw!r}"
        )
    try:
        return as_fraction(raw)
    except (ValueError, ZeroDivisionError, TypeError):
        raise DocumentError(f"{what}: not an exact number: {raw!r}") from None


def _parse_tree_sections(data, what: str, allow_synthetic: bool) -> MetricTree:
    vertices = data["vertices"]
    if not isinstance(vertices, list):
        raise DocumentError(f"{what}: vertices must be a list of id strings")
    for v in vertices:
        if not isinstance(v, str):
            raise DocumentError(f"{what}: vertex id {v!r} is not a string")
        ok = is_valid_vertex_id(v) if allow_synthetic else _USER_ID.match(v)
        if not ok:
            raise DocumentError(
                f"{what}: invalid vertex id {v!r} (ids match"
                " [A-Za-z0-9][A-Za-z0-9_-]* and cannot start with '_')"
            )
    raw_edges = data["edges"]
    if not isinstance(raw_edges, list):
        raise DocumentError(f"{what}: edges must be a list")
    edges = []
    for i, entry in enumerate(raw_edges):
        if not isinstance(entry, dict) or set(entry) != {"u", "w", "length"}:
            raise DocumentError(
                f"{what}: edge {i} must be an object with keys u, w, length"
            )
        edges.append(
            (entry["u"], entry["w"], _number(entry["length"], f"{what}: edge {i} length"))
        )
    return MetricTree(vertices, edges)


def _values_map(raw, what: str) -> dict:
    if not isinstance(raw, dict):
        raise DocumentError(f"{what} must map vertex ids to value strings")
    return {v: _number(x, f"{what}[{v}]") for v, x in raw.items()}


def parse_instance(text: str) -> tuple[MetricTree, EdgeLinearDensity]:
    """Parse an instance document; tree and density errors propagate."""
    data = _load_json(text)
    _check_sections(data, {"vertices", "edges", "density"}, "instance")
    tree = _parse_tree_sections(data, "instance", allow_synthetic=False)
    values = _values_map(data["density"], "density")
    return tree, EdgeLinearDensity(tree, values)


def _instance_payload(tree: MetricTree, f: EdgeLinearDensity) -> dict:
    return {
        "vertices": list(tree.vertices),
        "edges": [
            {"u": u, "w": w, "length": frac_str(length)}
            for u, w, length in tree.edge_list
        ],
        "density": {v: frac_str(f.value(v)) for v in tree.vertices},
    }


def serialize_instance(tree: MetricTree, f: EdgeLinearDensity) -> str:
    return json.dumps(_instance_payload(tree, f), indent=2) + "\n"


def instance_digest(tree: MetricTree, f: EdgeLinearDensity) -> str:
    """Digest of the canonical serialization; independent of formatting."""
    canonical = json.dumps(
        _instance_payload(tree, f), sort_keys=True, separators=(",", ":")
    )
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def parse_decomposition(text: str) -> DecompositionDocument:
    data = _load_json(text)
    _check_sections(
        data, {"tree", "components", "ucat", "provenance"}, "decomposition"
    )
    _check_sections(data["tree"], {"vertices", "edges"}, "tree")
    tree = _parse_tree_sections(data["tree"], "tree", allow_synthetic=True)

    raw_components = data["components"]
    if not isinstance(raw_components, list):
        raise DocumentError("components must be a list")
    components = []
    for i, entry in enumerate(raw_components):
        if not isinstance(entry, dict) or set(entry) != {"mode", "values"}:
            raise DocumentError(
                f"component {i} must be an object with keys mode, values"
            )
        mode = entry["mode"]
        if not tree.has_vertex(mode):
            raise DocumentError(f"component {i}: mode {mode!r} is not a tree vertex")
        values = _values_map(entry["values"], f"component {i} values")
        components.append(Component(mode, EdgeLinearDensity(tree, values)))

    count = data["ucat"]
    if not isinstance(count, int) or isinstance(count, bool):
        raise DocumentError("ucat must be an integer")
    if count != len(components):
        raise DocumentError(
            f"ucat is {count} but there are {len(components)} components"
        )

    provenance = data["provenance"]
    _check_sections(provenance, {"tool", "input_digest"}, "provenance")
    for key in ("tool", "input_digest"):
        if not isinstance(provenance[key], str):
            raise DocumentError(f"provenance {key} must be a string")

    return DecompositionDocument(tree, tuple(components), count, dict(provenance))


def decomposition_from_document(
    doc: DecompositionDocument, f: EdgeLinearDensity
) -> Decomposition:
    """Bind a parsed decomposition to the instance it claims to decompose."""
    return Decomposition(doc.tree, doc.components, extend_to_refinement(f, doc.tree))


def serialize_decomposition(d: Decomposition, provenance: Mapping[str, str]) -> str:
    doc = {
        "tree": {
            "vertices": list(d.refined_tree.vertices),
            "edges": [
                {"u": u, "w": w, "length": frac_str(length)}
                for u, w, length in d.refined_tree.edge_list
            ],
        },
        "components": [
            {
                "mode": c.mode,
                "values": {
                    v: frac_str(c.density.value(v))
                    for v in d.refined_tree.vertices
                },
            }
            for c in d.components
        ],
        "ucat": len(d.components),
        "provenance": dict(provenance),
    }
    return json.dumps(doc, indent=2) + "\n"


def serialize_sweep(result: SweepResult) -> str:
    tree = result.refined_tree
    doc = {
        "tree": {
            "vertices": list(tree.vertices),
            "edges": [
                {"u": u, "w": w, "length": frac_str(length)}
                for u, w, length in tree.edge_list
            ],
        },
        "origin": result.origin,
        "h": {v: frac_str(result.h.value(v)) for v in tree.vertices},
        "remainder": {v: frac_str(result.remainder.value(v)) for v in tree.vertices},
        "subdivisions": [
            {"vertex": s.vertex, "u": s.u, "w": s.w, "t": frac_str(s.t)}
            for s in result.subdivisions
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


_PALETTE = (
    "lightblue",
    "lightpink",
    "palegreen",
    "khaki",
    "plum",
    "lightsalmon",
    "aquamarine",
    "wheat",
)


def render_dot(d: Decomposition) -> str:
    """DOT rendering: one color per component's support, modes doubled.

    A vertex in several supports takes the color of the earliest component,
    matching the greedy peel order.
    """
    f = d.input_on_refined
    color: dict[VertexId, str] = {}
    for i, component in enumerate(d.components):
        shade = _PALETTE[i % len(_PALETTE)]
        for v in d.refined_tree.vertices:
            if component.density.value(v) > 0 and v not in color:
                color[v] = shade
    modes = {c.mode for c in d.components}
    lines = ["graph decomposition {", "  node [style=filled, fillcolor=white];"]
    for v in d.refined_tree.vertices:
        attrs = [f'label="{v}\\nf={frac_str(f.value(v))}"']
        if v in color:
            attrs.append(f'fillcolor="{color[v]}"')
        if v in modes:
            attrs.append("shape=doublecircle")
        lines.append(f'  "{v}" [{", ".join(attrs)}];')
    for u, w, length in d.refined_tree.edge_list:
        lines.append(f'  "{u}" -- "{w}" [label="{frac_str(length)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
