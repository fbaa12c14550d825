"""Two-graphs, Seidel switching classes and the bitangent model of E7*."""

from .seidel import Graph, new_graph, relabel, seidel_matrix, switch, to_dot, triple_parity
from .twograph import (
    T_N,
    CanonicalKey,
    ClassCatalog,
    TwoGraph,
    canonical_key,
    enumerate_classes,
    equivalent,
    induced,
    representative_graph,
    two_graph_of,
    validate,
)
from .e7 import (
    BitangentModel,
    SignedMinimalVector,
    bitangent_two_graph,
    dot16,
    graph_from_vectors,
    minimal_vector,
    parse_vector_spec,
)
from .classifier import (
    LemmaReport,
    RealizabilityReport,
    classify_subsets,
    verify_excluded_by_subgraph,
    verify_paper_examples,
    verify_reduction_bound,
    verify_unique_tetrad,
)

__version__ = "0.1.0"
