"""Tree-width dichotomy for finitely defined hereditary graph classes.

Library modules:

* :mod:`~twdichotomy.graph`, :mod:`~twdichotomy.formats`,
  :mod:`~twdichotomy.generators`: graphs, I/O, graph families;
* :mod:`~twdichotomy.recognition`: complete, complete bipartite, tripod and
  line-of-tripod membership;
* :mod:`~twdichotomy.detection`: induced embeddings, cliques, bicliques,
  subdivision checks;
* :mod:`~twdichotomy.blocks`: vertex connectivity and k-blocks;
* :mod:`~twdichotomy.decomposition`: tree decompositions, exact tree-width,
  torsos;
* :mod:`~twdichotomy.constants`, :mod:`~twdichotomy.extraction`: constant
  towers and the extraction procedures;
* :mod:`~twdichotomy.dichotomy`: the boundedness decision and the survey.
"""

from .blocks import block_number, exists_k_block, pair_connectivity
from .decomposition import TreeDecomposition, exact_treewidth, validate
from .detection import find_induced, is_f_free, is_isomorphic
from .dichotomy import decide_bounded, survey, unboundedness_family
from .errors import BudgetExceeded, ContractError, GraphParseError, SpecError
from .formats import load_graph, parse_edge_list, parse_graph6, write_graph6
from .generators import GeneratorSpec, generate, parse_generator_spec
from .graph import Graph, disjoint_union, line_graph, random_graph, subdivide

__all__ = [
    "BudgetExceeded", "ContractError", "GeneratorSpec", "Graph", "GraphParseError", "SpecError",
    "TreeDecomposition", "block_number", "decide_bounded", "disjoint_union", "exact_treewidth",
    "exists_k_block", "find_induced", "generate", "is_f_free", "is_isomorphic", "line_graph",
    "load_graph", "pair_connectivity", "parse_edge_list", "parse_generator_spec", "parse_graph6",
    "random_graph", "subdivide", "survey", "unboundedness_family", "validate", "write_graph6",
]
