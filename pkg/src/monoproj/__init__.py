"""Workbench for monotone projections between non-negative polynomials,
Newton polytopes, and desk-scale extension complexity."""

from .semiring import BOOL, INF, REAL, TROPICAL, by_tag
from .polynomial import (Poly, gen_clique, gen_clow, gen_cut, gen_family,
                         gen_hc, gen_matching, gen_permanent, gen_sat, make)
from .projection import (AffineProjectionMap, Const, MonomialProjectionMap,
                         MonotoneFormula, ProjectionMap, Var, affine_to_simple,
                         apply_affine, apply_monomial, apply_simple,
                         formula_to_perm_projection, monomial_to_simple,
                         permanent_image, search_monotone_projection)
from .polytope import (AffineMapT, HPolytope, VPolytope, coordinate_face,
                       facet_enumeration, gen_cut_polytope,
                       gen_cycle_cover_polytope, gen_pm_polytope,
                       gen_tsp_polytope, hull_vertices, image, is_extension,
                       vertex_enumeration)
from .newton_lemma import (ExtensionCertificate, check_xc_consequence,
                           converse_construct, main_lemma_extract,
                           newton_polytope)
from .xc import SlackMatrix, rectangle_cover_lb, slack_matrix, xc_bounds

__version__ = "0.1.0"
