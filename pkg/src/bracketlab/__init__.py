"""Exact stability criteria for fixed points of bracket structures.

Everything is computed over the rationals: structures are encoded as
derivations or elements of a graded polynomial algebra, structure equations
are checked exactly, and the stability question at a fixed point is decided
by the cohomology of a finite-dimensional three-term quotient complex.
"""

from .polyjet import Poly, parse_poly, jet_project, grlex_key
from .gca import GeneratorTable, GElement, Derivation, commutator, bigrade
from .linal import (
    QMatrix,
    TwoTermComplex,
    CohomologyReport,
    DSquaredError,
    cohomology,
    graded_pieces,
    invert_matrix,
    kernel_and_rank,
    reduced_h1,
)
from .algebroid import (
    IsotropyAlgebra,
    LieAlgebroidData,
    LieNAlgebroidData,
    bott_rep,
    build_q,
    build_q_graded,
    ce_complex,
    fixed_point_order,
    fixed_point_type,
    isotropy_algebra,
    la_filtration,
    la_quotient_complex,
    lna_quotient_complex,
    mc_defect,
    recovered_anchor,
    recovered_bracket,
)
from .sympoisson import (
    BialgebroidPair,
    CourantData,
    PNData,
    SymplecticTable,
    b_pair,
    b_reduced_h1,
    b_tangent_data,
    bialgebroid_complex,
    bialgebroid_table,
    bivector_function,
    courant_complex,
    courant_fixed_point_order,
    courant_table,
    courant_theta,
    derived_bracket,
    double_quadratic_data,
    ham_function,
    lift_algebroid,
    lift_dual_algebroid,
    multivector_function,
    pair_fixed_point_order,
    pn_compat_errors,
    pn_complex,
    poisson_complex,
    poisson_pair,
    quad_lie_complex,
    quadratic_courant_data,
    standard_tangent_data,
    sym_bracket,
)
from .dirac import (
    DiracGraph,
    SplitCourantData,
    b_poisson_split,
    b_tangent_split,
    dirac_complex,
    dirac_mc_defect,
    graph_split,
    poisson_split,
    tangent_split,
)
from .gauge import (
    AlgebroidContext,
    GaugeSearchError,
    PairContext,
    SearchConfig,
    SearchResult,
    TranslationGauge,
    ev_map,
    find_fixed_point,
    gauge_translate,
    r_map,
)

__version__ = "0.1.0"
