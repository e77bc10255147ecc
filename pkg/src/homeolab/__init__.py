"""Exact (co)homeology spectral sequences of finite simplicial complexes."""

from .complexes import (
    SimplicialComplex,
    cartesian_product,
    cone_n,
    disjoint_union,
    from_facets,
    generate,
    join,
    link,
    stellar_subdivide,
    wedge,
)
from .exact import (
    AbelianGroupPresentation,
    Coefficients,
    Matrix,
    Q,
    Z,
    Zp,
    homology_of_pair,
    smith_normal_form,
    solve_membership,
    subquotient,
)
from .chains import chain_complex, cochain_complex, homology, les_check, relative_complex
from .bicomplex import COHOMEOLOGY, HOMEOLOGY, build, build_relative, to_link_form
from .spectral import (
    PageComputation,
    check_cm_structure,
    check_lefschetz_remark,
    check_page0_links,
    check_reduced_unreduced_sequence,
    limit,
    page,
    pages_equal,
    pages_for,
)
from .blocks import (
    BlockComplex,
    block_bicomplex,
    block_boundary_matrix,
    block_page,
    product_block_complex,
    subdivision_block_complex,
    trivial_block_complex,
    validate,
)
from .morphisms import (
    SolidMap,
    check_solid,
    cup_chain,
    cup_product,
    external_product,
    graph_map,
    induced_bicomplex_map,
    induced_page_map,
    module_action,
)

__version__ = "0.1.0"
