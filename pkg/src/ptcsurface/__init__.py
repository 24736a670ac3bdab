"""Piecewise truncated-cone (PTC) minimal surfaces approximating catenoids."""

from .catenary import (
    CatenaryFit,
    CatenaryParams,
    build_polyline,
    catenary_constants,
    catenary_eval,
    solve_catenary_boundary,
    verify_lemma_5_1,
    verify_profile_limit,
)
from .errors import (
    BracketError,
    DegenerateDouble,
    DomainError,
    NoSolution,
    NotCriticalError,
    PtcError,
)
from .profilefn import (
    EvalRoute,
    Parity,
    ProfileFamily,
    chebyshev_T,
    chebyshev_V,
    g_profile,
    h_profile,
    h_profile_derivative,
    hypergeometric_terminating,
)
from .solver import (
    Branch,
    BranchPair,
    PtcSurface,
    SolverConfig,
    build_surface,
    cone_area_element,
    find_minimum,
    objective_T,
    solve_branches,
)
from .stability import (
    HessianTridiag,
    Verdict,
    area_second_partials,
    assemble_hessian,
    classify_stability,
    determinant_identity_check,
)

__version__ = "0.1.0"
