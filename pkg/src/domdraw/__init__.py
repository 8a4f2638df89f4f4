"""Weak dominance drawings of DAGs with the minimum number of falsely
implied paths, computed over the path-based modular decomposition."""

from .drawing import Drawing, FipReport, classify_fips, compaction, fips, is_compact, separator, validate
from .graph_core import (
    Dag,
    Reachability,
    count_linear_extensions,
    gen_antichain,
    gen_chain,
    gen_crown,
    gen_random_dag,
    parse_edge_list,
    topological_orders,
    transitive_closure,
)
from .modular_decomposition import MdNode, MdTree, QuotientGraph, is_module, k_parameter, md_tree, quotient
from .optimizer import (
    OptResult,
    SearchBoundExceeded,
    SearchConfig,
    brute_force_min_cost,
    dominance_dimension,
    dominance_dimension_at_most,
    expand,
    fpt_min_fips,
)
from .reachability_index import Index, IndexStats, sweep_stats

__version__ = "0.1.0"
