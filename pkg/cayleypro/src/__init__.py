"""Core classes and functions of CayleyPro"""

from .graph import Graph, MarkedSubgraph, ComponentPartition, parse_graph
from .properties import PropertyReport, property_report, complement_relation
from .isomorphism import (VertexBijection, find_isomorphism, marked_isomorphic, vertex_isomorphic,
                          accessible_isomorphic, is_arc_symmetric, is_symmetric)
from .coloring import Relation, EdgeColoring, edge_color, complete_edge_color
from .algebra import (MagmaTable, Labeling, AlgebraReport, parse_table, axiom_check, closure, generates, cayley_graph,
                      monoid_completion)
from .synthesis import (SynthesizedOperation, root_labeling, path_operation, chain_operation, extended_chain_operation,
                        edge_operation, path_choice_products, left_quasigroup_completion, quasigroup_completion,
                        root_completion_search)
from .classify import (Certificate, ClassVerdict, ClassificationReport, classify, verify_certificate,
                       component_certificates)
from .rewriting import (RewritingSystem, parse_rws, suffix_successors, suffix_predecessors, ball_distances, suffix_ball,
                        check_interior_stability, interior_flags, ball_property_report)
from .errors import PreconditionError, BudgetExceededError
from .const import CAYLEY_CLASSES
