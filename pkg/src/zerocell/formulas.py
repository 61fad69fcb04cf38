"""Headline expectations: exact f-vectors, solid angles, Sylvester probability.

Every formula returns exact :class:`PiNumber` values built on the arrays
module.  Several quantities are implemented twice through structurally
different routes (simplified small-sample forms, the facet surface integral,
the Dehn-Sommerville closure, the Efron identity); the verification suite
checks the routes against each other exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Sequence

from . import arrays
from .piring import PI, SQRT_PI, PiNumber
from .series import gamma_half

__all__ = [
    "FVectorExact",
    "zero_cell_f_vector",
    "zero_cell_vertices",
    "zero_cell_ridges",
    "zero_cell_intrinsic_volume",
    "limit_f_vector",
    "half_sphere_f_vector",
    "f_vector_d_plus_2",
    "f_vector_d_plus_3",
    "expected_edges",
    "expected_solid_angle",
    "barany_expected_facets",
    "sylvester_probability",
    "grassmann_constant",
    "c_star",
    "cover_efron_limit",
    "dehn_sommerville_closure",
]


@dataclass(frozen=True)
class FVectorExact:
    """Expected face counts f_0 .. f_(d-1); f_d = 1 is implicit."""

    dim: int
    entries: tuple[PiNumber, ...]

    def __post_init__(self):
        if len(self.entries) != self.dim:
            raise ValueError("need exactly dim entries (face dimensions 0..d-1)")

    def euler_holds(self) -> bool:
        """Alternating sum with the implicit top face equals 1 exactly."""
        acc = PiNumber.from_rational((-1) ** self.dim)
        for k, entry in enumerate(self.entries):
            acc = acc + (-1) ** k * entry
        return acc == PiNumber.from_rational(1)

    def to_floats(self) -> list[float]:
        return [entry.eval_float() for entry in self.entries]


def zero_cell_f_vector(d: int) -> FVectorExact:
    """Expected f-vector of the d-dimensional Poisson zero cell:
    E f_l = pi^(d-l)/(d-l)! * A[d, d-l]."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    entries = []
    for ell in range(d):
        codim = d - ell
        scale = PiNumber.monomial(Fraction(1, factorial(codim)), 2 * codim)
        entries.append((scale * arrays.a_value(d, codim)).require_integral())
    return FVectorExact(d, tuple(entries))


def zero_cell_vertices(d: int) -> PiNumber:
    """Classical special case E f_0 = d! kappa_d^2 / 2^d with
    kappa_d = pi^(d/2)/Gamma(d/2+1); computed without the A-array."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    kappa_sq = PiNumber.monomial(1, 2 * d) / gamma_half(d + 2) ** 2
    return (kappa_sq * Fraction(factorial(d), 2**d)).require_integral()


def zero_cell_ridges(d: int) -> PiNumber:
    """Classical special case E f_(d-2) = (1/2) C(d+1, 3) pi^2."""
    if d < 2:
        raise ValueError("ridges need dimension >= 2")
    return PiNumber.monomial(Fraction(comb(d + 1, 3), 2), 4)


def zero_cell_intrinsic_volume(d: int, ell: int, gamma: Fraction | int = 1) -> PiNumber:
    """Expected ell-th intrinsic volume of the zero cell at intensity gamma:
    (2 pi / gamma)^ell (Gamma((d+1)/2)/Gamma(d/2))^ell Gamma(ell/2+1)/ell!
    * A[d, ell].  gamma must be a positive rational."""
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("intensity gamma must be positive")
    if not 0 <= ell <= d:
        raise ValueError("need 0 <= ell <= d")
    rate = PiNumber.monomial(2 / gamma, 2) ** ell
    ratio = (gamma_half(d + 1) / gamma_half(d)) ** ell
    front = gamma_half(ell + 2) / factorial(ell)
    return (rate * ratio * front * arrays.a_value(d, ell)).require_integral()


def limit_f_vector(d: int) -> list[PiNumber]:
    """Large-sample limit of the half-sphere hull f-vector (equivalently the
    f-vector of the convex hull of the dual scale-invariant point process):
    E f_k -> pi^(k+1)/(k+1)! * A[d, k+1] for k = 0..d-1."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    out = []
    for k in range(d):
        scale = PiNumber.monomial(Fraction(1, factorial(k + 1)), 2 * (k + 1))
        out.append((scale * arrays.a_value(d, k + 1)).require_integral())
    return out


def half_sphere_f_vector(n: int, d: int) -> list[PiNumber]:
    """Expected f-vector of the spherical hull of n uniform points on the
    upper half-sphere of dimension d:

    E f_k = n! pi^(k+1-n)/(k+1)! * sum_s B{n, d-2s} (d-2s-1)^2 A[d-2s-2, k-1]

    over s with d - 2s >= k + 1, with the m = 1 summand of the k = 0 entry
    interpreted as 2/pi (see ``arrays.angle_sum_term``).
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if n <= d:
        raise ValueError("degenerate sample size")
    out = []
    for k in range(d):
        acc = PiNumber()
        m = d
        while m >= k + 1:
            acc = acc + arrays.b_value(n, m) * arrays.angle_sum_term(m, k + 1)
            m -= 2
        scale = PiNumber.monomial(Fraction(factorial(n), factorial(k + 1)),
                                  2 * (k + 1 - n))
        out.append((scale * acc).require_integral())
    return out


def _small_sample_deficit(d: int, k: int, extra: int) -> PiNumber:
    """Common correction term of the n = d+2 and n = d+3 closed forms."""
    if extra == 2:
        gamma_ratio = SQRT_PI * gamma_half(d + 2) / gamma_half(d + 3)
    else:
        gamma_ratio = SQRT_PI * gamma_half(d + 4) / gamma_half(d + 3)
    scale = PiNumber.monomial(Fraction(d + extra, factorial(k + 1)),
                              2 * (k - d - 1))
    return scale * gamma_ratio * (d + 1) ** 2 * arrays.a_value(d, k - 1)


def f_vector_d_plus_2(d: int, k: int) -> PiNumber:
    """E f_k for n = d+2 points via the simplified closed form
    C(d+2, k+1) - E f_k = pi^(k-d-1) (d+2)/(k+1)! *
    sqrt(pi) Gamma((d+2)/2)/Gamma((d+3)/2) * (d+1)^2 A[d, k-1]."""
    if d < 1 or not 0 <= k <= d - 1:
        raise ValueError("need d >= 1 and 0 <= k <= d-1")
    value = PiNumber.from_rational(comb(d + 2, k + 1)) - _small_sample_deficit(d, k, 2)
    return value.require_integral()


def f_vector_d_plus_3(d: int, k: int) -> PiNumber:
    """E f_k for n = d+3 points (same shape with Gamma((d+4)/2))."""
    if d < 1 or not 0 <= k <= d - 1:
        raise ValueError("need d >= 1 and 0 <= k <= d-1")
    value = PiNumber.from_rational(comb(d + 3, k + 1)) - _small_sample_deficit(d, k, 3)
    return value.require_integral()


def expected_edges(n: int, d: int) -> PiNumber:
    """Expected edge count of the half-sphere hull:
    E f_1 = (1/2) n! pi^(2-n) * sum over m = d, d-2, ... >= 2 of
    (m-1)^2 B{n,m}  (the sine-moment integral folded into B{n,m})."""
    if d < 2:
        raise ValueError("edges need dimension >= 2")
    if n <= d:
        raise ValueError("degenerate sample size")
    acc = PiNumber()
    m = d
    while m >= 2:
        acc = acc + (m - 1) ** 2 * arrays.b_value(n, m)
        m -= 2
    scale = PiNumber.monomial(Fraction(factorial(n), 2), 2 * (2 - n))
    return (scale * acc).require_integral()


def expected_solid_angle(n: int, d: int) -> PiNumber:
    """Expected normalized solid angle of the cone spanned by n uniform
    points on the half-sphere:
    E alpha = n!/(2 pi^n) * sum B{n+1, m} (m-1)^2 A[m-2, -1]
    over m in {d+2, ..., n+1} with m = d mod 2."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if n <= d:
        raise ValueError("degenerate sample size")
    acc = PiNumber()
    for m in range(d + 2, n + 2):
        if (m - d) % 2 == 0:
            acc = acc + arrays.b_value(n + 1, m) * arrays.angle_sum_term(m, 1)
    scale = PiNumber.monomial(Fraction(factorial(n), 2), -2 * n)
    return (scale * acc).require_integral()


def barany_expected_facets(n: int, d: int) -> PiNumber:
    """Expected facet count through the surface-measure integral:
    C(n,d) * 2 omega_d / omega_(d+1) * int_0^pi sin(x)^(d-1) (x/pi)^(n-d) dx,
    with the integral expressed through B{n,d}.  Structurally independent of
    the general f-vector formula (no A-array involved)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if n <= d:
        raise ValueError("degenerate sample size")
    # 2 omega_d / omega_(d+1) = 2 Gamma((d+1)/2) / (Gamma(d/2) sqrt(pi))
    ratio = 2 * gamma_half(d + 1) / (gamma_half(d) * SQRT_PI)
    integral = PiNumber.monomial(Fraction(factorial(d - 1) * factorial(n - d)),
                                 2 * (d - n)) * arrays.b_value(n, d)
    return (comb(n, d) * ratio * integral).require_integral()


def sylvester_probability(d: int) -> PiNumber:
    """Probability that the spherical hull of d+2 uniform points on the upper
    half-sphere is a simplex with d+1 vertices:
    P(d) = pi^-(d+1) (d+2) sqrt(pi) Gamma((d+2)/2)/Gamma((d+3)/2)
           * (d+1)^2 A[d, -1]."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    gamma_ratio = SQRT_PI * gamma_half(d + 2) / gamma_half(d + 3)
    scale = PiNumber.monomial(d + 2, -2 * (d + 1))
    return (scale * gamma_ratio * (d + 1) ** 2 * arrays.a_value(d, -1)).require_integral()


def grassmann_constant(k: int, d: int) -> PiNumber:
    """Asymptotic Grassmann-angle constant (pi^k / 2) A[d, k]."""
    if not 1 <= k <= d:
        raise ValueError("need 1 <= k <= d")
    return (PiNumber.monomial(Fraction(1, 2), 2 * k) * arrays.a_value(d, k)).require_integral()


def c_star(d: int) -> PiNumber:
    """Rate constant of the solid-angle deficit: pi omega_(d+1) A[d,1] / 2
    with omega_(d+1) = 2 pi^((d+1)/2) / Gamma((d+1)/2)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    omega = PiNumber.monomial(2, d + 1) / gamma_half(d + 1)
    return (PI * omega * arrays.a_value(d, 1) / 2).require_integral()


def cover_efron_limit(k: int, d: int) -> int:
    """Face counts of the d-dimensional crosspolytope, 2^(k+1) C(d, k+1):
    the large-sample limit in the whole-sphere (Cover-Efron) model, for
    contrast with the half-sphere limit."""
    if not 0 <= k <= d - 1:
        raise ValueError("need 0 <= k <= d-1")
    return 2 ** (k + 1) * comb(d, k + 1)


def _coerce_entry(value) -> PiNumber:
    if isinstance(value, PiNumber):
        return value
    return PiNumber.from_rational(value)


def dehn_sommerville_closure(d: int, known: Mapping[int, "PiNumber | int | Fraction"]) -> FVectorExact:
    """Complete a partial expected f-vector of a simple d-polytope.

    ``known`` must contain every entry of even codimension (face dimensions l
    with d - l even; the top face f_d = 1 may be given or left implicit).
    The entries of odd codimension are recovered from the linear relations

        E f_l = sum_{i=0}^{l} (-1)^i C(d-i, d-l) E f_i ,

    solved in triangular order.  Extra provided entries are cross-checked;
    any violation of the relations raises ValueError.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    given = {ell: _coerce_entry(v) for ell, v in known.items()}
    for ell in given:
        if not 0 <= ell <= d:
            raise ValueError(f"face dimension {ell} out of range 0..{d}")
    if d in given and given[d] != PiNumber.from_rational(1):
        raise ValueError("inconsistent input: top face count must be 1")
    values: dict[int, PiNumber] = {d: PiNumber.from_rational(1)}
    for ell in range(d):
        if (d - ell) % 2 == 0:
            if ell not in given:
                raise ValueError(f"missing even-codimension entry f_{ell}")
            values[ell] = given[ell]

    def relation_rhs(ell: int, upto: int) -> PiNumber:
        acc = PiNumber()
        for i in range(upto + 1):
            acc = acc + (-1) ** i * comb(d - i, d - ell) * values[i]
        return acc

    if d % 2 == 0:
        for ell in range(1, d, 2):
            values[ell] = relation_rhs(ell, ell - 1) / 2
    else:
        for ell in range(1, d + 1, 2):
            residual = 2 * values[ell] - relation_rhs(ell, ell - 2)
            values[ell - 1] = residual / (d - ell + 1)

    # full consistency check of every relation and every provided entry
    for ell in range(d + 1):
        lhs = values[ell]
        rhs = relation_rhs(ell, ell)
        if lhs != rhs:
            raise ValueError("inconsistent input: relations are violated")
    for ell, provided in given.items():
        if values[ell] != provided:
            raise ValueError(f"inconsistent input: provided f_{ell} does not match")
    return FVectorExact(d, tuple(values[ell] for ell in range(d)))
