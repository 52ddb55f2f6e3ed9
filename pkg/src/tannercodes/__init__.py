"""Codes on random graphs and hypergraphs with local linear constraints.

Local codes and the bounded-distance decoder live in :mod:`local_code`,
random permutation-model hypergraphs in :mod:`topology`, the global code in
:mod:`graph_code`, the iterative decoders in :mod:`decoders` and the
ensemble threshold computations in :mod:`thresholds`.
"""

from .decoders import algorithm_I, algorithm_II, local_round, select_closest
from .graph_code import GraphCode, dimension, is_codeword
from .local_code import BinaryLinearCode, bounded_distance_decode, encode, make_local_code
from .topology import RegularHypergraph, bipartite_restriction, incident_edges, sample_hypergraph

__all__ = [
    "BinaryLinearCode", "GraphCode", "RegularHypergraph",
    "algorithm_I", "algorithm_II", "bipartite_restriction", "bounded_distance_decode",
    "dimension", "encode", "incident_edges", "is_codeword", "local_round",
    "make_local_code", "sample_hypergraph", "select_closest",
]
