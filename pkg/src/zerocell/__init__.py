"""Exact expected face statistics of the Poisson zero polytope and of random
spherical convex hulls on the half-sphere, with Monte Carlo verification."""

from .arrays import (
    a_value,
    a_value_oracle,
    b_value,
    clear_caches,
    i_tilde_bb,
    j_tilde_bb,
    j_tilde_recursive,
    q_poly,
    sin_moment,
)
from .formulas import (
    FVectorExact,
    barany_expected_facets,
    c_star,
    cover_efron_limit,
    dehn_sommerville_closure,
    expected_edges,
    expected_solid_angle,
    f_vector_d_plus_2,
    f_vector_d_plus_3,
    grassmann_constant,
    half_sphere_f_vector,
    limit_f_vector,
    sylvester_probability,
    zero_cell_f_vector,
    zero_cell_intrinsic_volume,
    zero_cell_ridges,
    zero_cell_vertices,
)
from .piring import (
    PI,
    SQRT_PI,
    PiNumber,
    PiParseError,
    format_pi,
    parse_pi,
    pi_number_from_json,
    pi_number_to_json,
    rat_normalize,
)
from .series import bernoulli, coth_coeff, gamma_half, tanh_coeff

__version__ = "0.1.0"

__all__ = [
    "PI",
    "SQRT_PI",
    "FVectorExact",
    "PiNumber",
    "PiParseError",
    "a_value",
    "a_value_oracle",
    "b_value",
    "barany_expected_facets",
    "bernoulli",
    "c_star",
    "clear_caches",
    "coth_coeff",
    "cover_efron_limit",
    "dehn_sommerville_closure",
    "expected_edges",
    "expected_solid_angle",
    "f_vector_d_plus_2",
    "f_vector_d_plus_3",
    "format_pi",
    "gamma_half",
    "grassmann_constant",
    "half_sphere_f_vector",
    "i_tilde_bb",
    "j_tilde_bb",
    "j_tilde_recursive",
    "limit_f_vector",
    "parse_pi",
    "pi_number_from_json",
    "pi_number_to_json",
    "q_poly",
    "rat_normalize",
    "sin_moment",
    "sylvester_probability",
    "tanh_coeff",
    "zero_cell_f_vector",
    "zero_cell_intrinsic_volume",
    "zero_cell_ridges",
    "zero_cell_vertices",
]
