"""atoric: exact arithmetic for cyclic quotient surface singularities and
almost-toric diagram surgery.

Everything is integer/rational exact (no floats in the math).  The main
layers, bottom up: `lattice` (rank-2 lattice primitives), `cqs` (singularity
types, continued fractions, the T-family), `resolution` (discrepancies and
blow-ups), `presolution` (P-resolution enumeration), `diagram` (almost-toric
boundaries, cuts, and moves), `sequences` (Markov triples and the mutation
ladder), plus `render` / `jsonio` / `service` / `cli` for output and access.
"""

from .cqs import (SMOOTH, DegenerateChainError, MilnorInvariants, TData,
                  check_type, fibre_label, hj_eval, hj_expand,
                  milnor_invariants, normalize_corner, t_classify, type_label)
from .diagram import (Boundary, Cut, Diagram, MutationBlocked, equivalent,
                      monodromy, mutate, mutate_inverse, nodal_slide,
                      nodal_trade, smooth_vertex, translate_cut, truncate,
                      wedge_diagram)
from .presolution import (PartialChain, PartialResolution, PResolutionEntry, cone_rays,
                          cone_type, enumerate_p_resolutions, is_p_resolution,
                          monotone_type, rays_from_chain, refine_to_smooth)
from .render import render_svg
from .resolution import (Chain, blow_up, blow_up_free, discrepancies,
                         is_admissible, maximal_resolution, singularity_class)
from .sequences import (LadderResult, is_markov, markov_triples, mori_extend,
                        pi_minus, quintic_ladder, vieta_mutate)

__version__ = "0.1.0"

__all__ = [
    "SMOOTH", "DegenerateChainError", "MilnorInvariants", "TData",
    "check_type", "fibre_label", "hj_eval", "hj_expand", "milnor_invariants",
    "normalize_corner", "t_classify", "type_label",
    "Boundary", "Cut", "Diagram", "MutationBlocked", "equivalent",
    "monodromy", "mutate", "mutate_inverse", "nodal_slide", "nodal_trade",
    "smooth_vertex", "translate_cut", "truncate", "wedge_diagram",
    "PartialChain", "PartialResolution", "PResolutionEntry", "cone_rays", "cone_type",
    "enumerate_p_resolutions", "is_p_resolution", "monotone_type",
    "rays_from_chain", "refine_to_smooth",
    "render_svg",
    "Chain", "blow_up", "blow_up_free", "discrepancies", "is_admissible",
    "maximal_resolution", "singularity_class",
    "LadderResult", "is_markov", "markov_triples", "mori_extend", "pi_minus",
    "quintic_ladder", "vieta_mutate",
    "__version__",
]
