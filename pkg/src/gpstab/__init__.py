"""Stability of direct products of graphs.

A pair of graphs (G, S) is stable when every automorphism of G x S comes
from a pair of automorphisms of the factors.
"""
from .graph_core import (Graph, GraphError, build_graph, complete_graph, cycle_graph, empty_graph,
                         is_bipartite, is_connected, is_r_thin, path_graph)
from .perm_groups import CapExceeded, automorphism_order, automorphisms, is_isomorphic
from .products import DirectProduct, coprimality, direct_product
from .sigma_auto import has_nondiagonal, sigma_automorphism_group, two_fold_pairs
from .stability import Classification, StabilityReport, classify_pair, is_stable
from .fiber_analysis import LEMMAS, verify_lemma
from .formats import emit_graph6, parse_edgelist, parse_graph6, read_graph
from .enumeration import canonical_graph6, enumerate_graphs

__version__ = "0.1.0"
