"""Flag homology spheres: construction, certification, gamma-vectors and census."""

from .complex import (
    Graph,
    SimplicialComplex,
    canonical_form,
    clique_complex,
    contract_edge,
    cycle,
    edge_subdivision,
    from_facets,
    is_isomorphic,
    join,
    link,
    octahedral,
    simplex,
    suspend_k,
    suspension,
    vertex_split,
)
from .homology import Field, betti_numbers, is_homology_ball, is_homology_sphere
from .structure import FamilyKind, construct_family, find_equators, recognize_family
from .vectors import IntPoly, complex_gamma, forbidden_gamma_check, gamma_vector, h_polynomial

__version__ = "0.1.0"
