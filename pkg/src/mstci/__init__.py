"""Exact solver, lower bounds and small-graph experiments for the minimum
spanning tree cycle intersection (MSTCI) problem."""

from .bounds import (
    build_mu_regular,
    dense_shortcut,
    is_mu_regular,
    lower_bound_bar,
    lower_bound_l,
    qr_decompose,
    ratios,
)
from .canon import canonical_key, generate_connected
from .graph import Graph, from_edge_list, is_connected, parse_graph6, to_graph6
from .solver import MstciResult, solve_mstci
from .trees import (
    SpanningTree,
    bonds,
    cycle_intersection_matrix,
    enumerate_spanning_trees,
    fundamental_cycles,
    intersection_count,
    non_redundant_bond_set,
    spanning_tree_count,
    star_formula,
)

__version__ = "0.1.0"
