"""Distances and center diagrams for persistence diagrams."""
from ._accel import NUMBA_ENABLED
from .center import (
    BOTTLENECK,
    CenterSolution,
    DiagramCenter,
    Evaluation,
    Objective,
    SelectionMode,
    approx_center,
    center2_continuous,
    center2_no_replacement,
    center2_with_replacement,
    center_diagrams,
    eval_center,
)
from .core import L2, LINF, AugmentedSet, AugPoint, Diagram, Metric, Point, dist_point, project_to_diagonal, validate_diagram
from .distances import augment, bottleneck_distance, wasserstein_distance
from .instances import (
    GenSpec,
    SplitMix64,
    gen_element_gadget,
    gen_figure2,
    gen_gap,
    gen_random,
    gen_tight,
    gen_triple_gadget,
    gen_wasserstein_gadget,
    generate,
    shift_from_diagonal,
)
from .matching import (
    BipartiteGraph,
    FlowNetwork,
    Matching,
    bottleneck_perfect_matching,
    max_cardinality_matching,
    max_flow_unit,
    min_cost_perfect_matching,
)
from .oracle import brute_force_center

__version__ = "0.1.0"
