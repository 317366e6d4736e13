"""Minimal unimodal decompositions of edge-linear densities on metric trees."""

from .density import (
    EdgeLinearDensity,
    ModeWitness,
    NotUnimodal,
    extend_to_refinement,
    is_unimodal,
    normalize,
    support_is_empty,
    value_at,
)
from .forced import Forced, PruneReport, Unimodal, find_forced_vertex, prune_insignificant
from .greedy import Component, Decomposition, TraceEvent, decompose, ucat
from .interval import interval_ucat
from .sweep import Subdivision, SweepResult, remainder, sweep
from .tree import (
    EdgePoint,
    MergeRecord,
    MetricTree,
    Orientation,
    VertexId,
    path_between,
    subdivide_all,
)
from .verify import (
    CheckReport,
    ComponentCheck,
    FeasibilityCertificate,
    check_decomposition,
    feasible_avoiding_vertex,
    feasible_with_modes,
    gen_instance,
    ucat_oracle,
)

__version__ = "0.1.0"
