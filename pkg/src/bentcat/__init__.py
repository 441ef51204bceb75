"""Bent 4-concatenations of Maiorana-McFarland functions and M# certification."""

from .boolcore import (
    AnfForm,
    ParseError,
    TruthTable,
    WalshSpectrum,
    anf_from_tt,
    degree,
    derivative,
    dual,
    is_bent,
    is_homogeneous,
    linear_structures,
    parse_anf,
    tt_from_anf,
    walsh,
)
from .construct import (
    ConcatenationSpec,
    ConstructionError,
    MonomialQuadruple,
    build_theorem2,
    check_hi_condition,
    concat4,
    decompose,
    dual_bent_condition,
    homogeneous_concat,
    lift_Am,
    lift_h,
    monomial_quadruple,
)
from .gf2m import FieldContext, field_new
from .permutmap import PointMap, check_Am, check_P1, is_APN, mm_bent, monomial_map
from .subspace import Subspace, check_sharing_theorem, is_in_MM_sharp, m_subspaces, vanishing_pairs

__version__ = "0.1.0"
