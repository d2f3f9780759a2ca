"""Exact specialized nonsymmetric Macdonald polynomials at ``t = infinity``,
affine and finite Demazure characters, and a generic ``(q, t)`` Hecke-algebra
oracle used to cross-check them."""

from .charring import CharacterElement, CoeffPoly, geometric_kernel, specialize
from .demazure import delta, delta_word, demazure_character, weyl_character
from .errors import (
    MacdemazError,
    TheoremViolation,
    UnsupportedType,
)
from .hecke import e_generic, eigen_monomial, g_op, hecke_t, intertwiner_apply, symmetrize_C, y_theta
from .macdonald import ExpansionTable, e_double_limit, e_tinf, expand_in_weyl_characters, p_tinf
from .rootdata import (
    AffineRoot,
    AffineType,
    AffineWeight,
    RootSystemData,
    build_affine_data,
    finite_positive_roots,
    pairing,
    parse_type_label,
)
from .weyl import (
    WeylWord,
    bruhat_leq,
    descend_to_alcove,
    finite_descents,
    orbit_data,
    simple_affine_action,
    simple_dot_action,
)

__version__ = "0.1.0"

__all__ = [
    "AffineRoot",
    "AffineType",
    "AffineWeight",
    "CharacterElement",
    "CoeffPoly",
    "ExpansionTable",
    "MacdemazError",
    "RootSystemData",
    "TheoremViolation",
    "UnsupportedType",
    "WeylWord",
    "bruhat_leq",
    "build_affine_data",
    "delta",
    "delta_word",
    "demazure_character",
    "descend_to_alcove",
    "e_double_limit",
    "e_generic",
    "e_tinf",
    "eigen_monomial",
    "expand_in_weyl_characters",
    "finite_descents",
    "finite_positive_roots",
    "g_op",
    "geometric_kernel",
    "hecke_t",
    "intertwiner_apply",
    "orbit_data",
    "p_tinf",
    "pairing",
    "parse_type_label",
    "simple_affine_action",
    "simple_dot_action",
    "specialize",
    "symmetrize_C",
    "weyl_character",
    "y_theta",
]
