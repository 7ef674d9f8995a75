"""Builders for every concrete geometry used by the verification runs."""

from .arrays import (
    LatinSquare,
    OrthogonalArray,
    ShiftedMacNeish,
    column_line_indices,
    cyclic_latin_square,
    elementary_abelian_square,
    is_orthogonal_array,
    latin_subsquares,
    latin_to_oa,
    macneish,
    oa_from_field,
    oa_to_incidence,
    oa_to_latin,
    shifted_macneish,
    subsquare_columns,
    subsquare_points,
    symmetric_group_square,
    transversals,
)
from .designs import (
    check_witt_derived,
    hyperovals_pg24,
    fano_plane,
    is_t_design,
    projective_design,
    steiner_triple,
    witt_derived_constructive,
    witt_derived_design,
)
from .sporadic import gq_doily, vls_geometry

__all__ = [
    "LatinSquare",
    "OrthogonalArray",
    "ShiftedMacNeish",
    "check_witt_derived",
    "column_line_indices",
    "cyclic_latin_square",
    "elementary_abelian_square",
    "fano_plane",
    "gq_doily",
    "hyperovals_pg24",
    "is_orthogonal_array",
    "is_t_design",
    "latin_subsquares",
    "latin_to_oa",
    "macneish",
    "oa_from_field",
    "oa_to_incidence",
    "oa_to_latin",
    "projective_design",
    "shifted_macneish",
    "steiner_triple",
    "subsquare_columns",
    "subsquare_points",
    "symmetric_group_square",
    "transversals",
    "vls_geometry",
    "witt_derived_constructive",
    "witt_derived_design",
]
