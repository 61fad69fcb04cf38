"""The triangular arrays A[n,k] and B{n,k} and the expected angle sums.

A[n,k] extracts coefficients of Q_n(x), the even polynomial
prod (1 + j^2 x^2) over j in {1,...,n-1} with j not congruent to n mod 2;
odd k picks up a formal Laurent multiplier tanh(pi/(2x)) (n even) or
coth(pi/(2x)) (n odd).  B{n,k} are the normalized sine-moment integrals
(1/((k-1)!(n-k)!)) * int_0^pi sin(x)^(k-1) x^(n-k) dx, computed exactly by
downward recursion in n.  On top of these sit the expected external angle
sums I (at alpha = 1) and internal angle sums J (at beta = n/2) of beta'
simplices, each with an independently coded companion:

* ``a_value_oracle`` rebuilds A[n,k] purely from boundary values, the
  two-step recursion and an Euler-type closure, never touching the series
  definition;
* ``j_tilde_recursive`` solves the Gauss-Bonnet triangular system instead of
  using the explicit closed form of ``j_tilde_bb``.

All functions are pure and memoized; results are immutable PiNumbers, so the
caches are safe for concurrent readers.  ``clear_caches`` drops every memo
table (fresh recomputation is tested to agree with cached values).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .piring import PI, SQRT_PI, PiNumber
from .series import coth_coeff, gamma_half, tanh_coeff

__all__ = [
    "QnPolynomial",
    "q_poly",
    "a_value",
    "a_value_oracle",
    "sin_moment",
    "b_value",
    "c_tilde_1",
    "i_tilde_bb",
    "j_tilde_bb",
    "j_tilde_recursive",
    "angle_sum_term",
    "clear_caches",
]


@dataclass(frozen=True)
class QnPolynomial:
    """Even polynomial Q_n: coeffs[i] is the integer coefficient of x**(2i)."""

    n: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return 2 * (len(self.coeffs) - 1)

    @property
    def factor_count(self) -> int:
        return self.n // 2

    def coefficient(self, k: int) -> int:
        """Coefficient of x**k (0 for odd k and out-of-range k)."""
        if k < 0 or k % 2 == 1:
            return 0
        i = k // 2
        return self.coeffs[i] if i < len(self.coeffs) else 0


@functools.lru_cache(maxsize=None)
def q_poly(n: int) -> QnPolynomial:
    """Q_0 = Q_1 = 1; Q_n = prod (1 + j^2 x^2), j in {1..n-1}, j != n mod 2."""
    if n < 0:
        raise ValueError("q_poly requires n >= 0")
    coeffs = [1]
    for j in range(n - 1, 0, -2):
        prev = coeffs
        coeffs = prev + [0]
        jj = j * j
        for i in range(len(prev)):
            coeffs[i + 1] += jj * prev[i]
    return QnPolynomial(n, tuple(coeffs))


@functools.lru_cache(maxsize=None)
def a_value(n: int, k: int) -> PiNumber:
    """A[n,k] for n >= 0 and any integer k, by coefficient extraction.

    Even k reads [x^k] Q_n(x) directly.  Odd k multiplies Q_n by the Laurent
    expansion of tanh(pi/(2x)) (n even) or coth(pi/(2x)) (n odd), where
    tanh(pi/(2x)) = sum over odd m >= 1 of tanh_coeff(m) (pi/2)^m x^(-m) and
    coth(pi/(2x)) carries the extra (2/pi) x term.
    """
    if n < 0:
        raise ValueError("a_value requires n >= 0")
    q = q_poly(n)
    if k % 2 == 0:
        return PiNumber.from_rational(q.coefficient(k))
    total = PiNumber()
    if n % 2 == 1 and k >= 1:
        # the (2/pi) x term of coth(pi/(2x)) pairs with x^(k-1) of Q_n
        total = total + PiNumber.monomial(2 * q.coefficient(k - 1), -2)
    series = tanh_coeff if n % 2 == 0 else coth_coeff
    for i in range(len(q.coeffs)):
        m = 2 * i - k
        if m >= 1:
            coeff = Fraction(q.coeffs[i]) * series(m) / 2**m
            total = total + PiNumber.monomial(coeff, 2 * m)
    return total


@functools.lru_cache(maxsize=None)
def _oracle_row(n: int) -> tuple[PiNumber, ...]:
    """Row n of the A-array rebuilt from properties (i)-(iv) only."""
    one = PiNumber.from_rational(1)
    if n == 0:
        return (one,)
    # (ii): A[n,n] = 2^-n (n!)^2 / Gamma(n/2 + 1)^2 and A[n,n-1] = pi/2 A[n,n]
    gamma_sq = gamma_half(n + 2) ** 2
    diag = PiNumber.from_rational(Fraction(factorial(n) ** 2, 2**n)) / gamma_sq
    if n == 1:
        return (one, diag)
    row = [PiNumber()] * (n + 1)
    row[0] = one
    row[n] = diag
    row[n - 1] = PI * diag / 2
    if n >= 3:
        below = _oracle_row(n - 2)
        # (iii): A[n,k] = A[n-2,k] + (n-1)^2 A[n-2,k-2] for 2 <= k <= n-2
        for k in range(2, n - 1):
            row[k] = below[k] + (n - 1) ** 2 * below[k - 2]
        # (iv): Euler-type closure pins A[n,1]
        acc = PiNumber.from_rational((-1) ** (n - 1) + 1)
        for k in range(2, n + 1):
            sign = 1 if k % 2 == 0 else -1
            acc = acc + PiNumber.monomial(Fraction(sign, factorial(k)), 2 * k) * row[k]
        row[1] = acc / PI
    return tuple(row)


def a_value_oracle(n: int, k: int) -> PiNumber:
    """A[n,k] from the boundary/recursion/Euler characterization (1 <= n,
    0 <= k <= n); independent of the series definition in ``a_value``."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError("a_value_oracle requires n >= 1 and 0 <= k <= n")
    return _oracle_row(n)[k]


@functools.lru_cache(maxsize=None)
def sin_moment(m: int) -> PiNumber:
    """Exact int_0^pi x^m sin x dx via I_m = pi^m - m(m-1) I_(m-2)."""
    if m < 0:
        raise ValueError("sin_moment requires m >= 0")
    if m == 0:
        return PiNumber.from_rational(2)
    if m == 1:
        return PI
    return PiNumber.monomial(1, 2 * m) - m * (m - 1) * sin_moment(m - 2)


@functools.lru_cache(maxsize=None)
def b_value(n: int, k: int) -> PiNumber:
    """B{n,k} for n >= 1, k >= 0.

    Boundary: B{n,0} = B{n,1} = pi^n/n! and B{n,k} = 0 for k > n; the k = 2
    column comes from the sine moments; columns k >= 3 satisfy
    B{n,k} = (B{n-2,k-2} - B{n-2,k}) / (k-1)^2.
    """
    if n < 1 or k < 0:
        raise ValueError("b_value requires n >= 1 and k >= 0")
    if k > n:
        return PiNumber()
    if k <= 1:
        return PiNumber.monomial(Fraction(1, factorial(n)), 2 * n)
    if k == 2:
        return sin_moment(n - 2) / factorial(n - 2)
    return (b_value(n - 2, k - 2) - b_value(n - 2, k)) / (k - 1) ** 2


@functools.lru_cache(maxsize=None)
def c_tilde_1(k: int) -> PiNumber:
    """Normalizing constant Gamma((k+1)/2) / (sqrt(pi) Gamma(k/2)) of the
    one-dimensional beta' density with parameter (k+1)/2."""
    if k < 1:
        raise ValueError("c_tilde_1 requires k >= 1")
    return gamma_half(k + 1) / (SQRT_PI * gamma_half(k))


@functools.lru_cache(maxsize=None)
def i_tilde_bb(n: int, k: int) -> PiNumber:
    """Expected external angle sum at k-vertex faces of the n-point beta'
    simplex, at alpha = 1:  (n!/k) c_tilde_1(k) pi^(k-n) B{n,k}."""
    if not 1 <= k <= n:
        raise ValueError("i_tilde_bb requires 1 <= k <= n")
    scale = PiNumber.monomial(Fraction(factorial(n), k), 2 * (k - n))
    return (scale * c_tilde_1(k) * b_value(n, k)).require_integral()


def angle_sum_term(m: int, j: int) -> PiNumber:
    """(m-1)^2 A[m-2, j-2] with the boundary conventions.

    At m = j = 1 the formally divergent product 0^2 A[-1,-1] is replaced by
    its limit 2/pi; any other m = 1 term vanishes with the 0^2 factor.
    """
    if m == 1:
        return PiNumber.monomial(2, -2) if j == 1 else PiNumber()
    return (m - 1) ** 2 * a_value(m - 2, j - 2)


@functools.lru_cache(maxsize=None)
def j_tilde_bb(n: int, k: int) -> PiNumber:
    """Expected internal angle sum at k-vertex faces of the n-point beta'
    simplex at beta = n/2, via the explicit formula
    (pi^(k-n)/k!) * (n / (2 c_tilde_1(n))) * (n-1)^2 A[n-2, k-2]."""
    if not 1 <= k <= n:
        raise ValueError("j_tilde_bb requires 1 <= k <= n")
    scale = PiNumber.monomial(Fraction(1, factorial(k)), 2 * (k - n))
    front = PiNumber.from_rational(Fraction(n, 2)) / c_tilde_1(n)
    return (scale * front * angle_sum_term(n, k)).require_integral()


@functools.lru_cache(maxsize=None)
def j_tilde_recursive(n: int, k: int) -> PiNumber:
    """Same quantity as ``j_tilde_bb`` computed through the Gauss-Bonnet
    system:  J(n,k) = (1/2) C(n,k) - sum_{s>=1} I(n, n-2s) J(n-2s, k),
    with J(n,n) = 1.  Serves as an independent algorithmic oracle."""
    if not 1 <= k <= n:
        raise ValueError("j_tilde_recursive requires 1 <= k <= n")
    if k == n:
        return PiNumber.from_rational(1)
    total = PiNumber.from_rational(Fraction(comb(n, k), 2))
    s = 1
    while n - 2 * s >= k:
        m = n - 2 * s
        total = total - i_tilde_bb(n, m) * j_tilde_recursive(m, k)
        s += 1
    return total


_CACHED_FUNCTIONS = (
    q_poly,
    a_value,
    _oracle_row,
    sin_moment,
    b_value,
    c_tilde_1,
    i_tilde_bb,
    j_tilde_bb,
    j_tilde_recursive,
)


def clear_caches() -> None:
    """Drop all memo tables (used by tests to compare against fresh runs)."""
    for fn in _CACHED_FUNCTIONS:
        fn.cache_clear()
