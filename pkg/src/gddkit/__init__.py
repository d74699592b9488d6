"""gddkit: group-divisible designs with the dual property, their
2-walk-regular incidence graphs, association schemes, and dihedrant
symmetries, with exact certification throughout."""

__version__ = "0.1.0"

from .design import GDDParams, IncidenceStructure, dual, incidence_graph, verify_dual_property, verify_gdd
from .graph import DistributionDiagram, Graph, dihedrant, gdddp_diagram, metrics, quotient_graph
from .scheme import RelationSet, build_gdddp_scheme, closed_form_eigenmatrices, diagram_to_gdddp, eigenmatrices, verify_scheme_axioms
from .spectral import adjacency_algebra_dimension, is_distance_regular, numeric_spectrum, verify_annihilating_polynomial, walk_regularity_order
from .symmetry import PermGroup, Permutation, are_isomorphic, automorphism_group, canonical_form, is_dihedral_regular, is_t_arc_transitive_under

__all__ = [
    "__version__",
    "GDDParams", "IncidenceStructure", "dual", "incidence_graph",
    "verify_dual_property", "verify_gdd",
    "DistributionDiagram", "Graph", "dihedrant", "gdddp_diagram",
    "metrics", "quotient_graph",
    "RelationSet", "build_gdddp_scheme", "closed_form_eigenmatrices",
    "diagram_to_gdddp", "eigenmatrices", "verify_scheme_axioms",
    "adjacency_algebra_dimension", "is_distance_regular", "numeric_spectrum",
    "verify_annihilating_polynomial", "walk_regularity_order",
    "PermGroup", "Permutation", "are_isomorphic", "automorphism_group",
    "canonical_form", "is_dihedral_regular", "is_t_arc_transitive_under",
]
