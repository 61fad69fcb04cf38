"""Bernoulli numbers, tanh/coth series coefficients, half-integer Gamma values.

These feed the Laurent-multiplier expansions of ``tanh(pi/(2x))`` and
``coth(pi/(2x))`` and the Gamma-function ratios appearing in the closed
formulas.  Everything is exact.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import comb, factorial

from .piring import PiNumber, SQRT_PI

__all__ = ["bernoulli", "tanh_coeff", "coth_coeff", "gamma_half"]


@functools.lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """m-th Bernoulli number (convention B_1 = -1/2).

    Computed from the defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0.
    """
    if m < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if m == 0:
        return Fraction(1)
    acc = sum(Fraction(comb(m + 1, j)) * bernoulli(j) for j in range(m))
    return -acc / (m + 1)


def tanh_coeff(m: int) -> Fraction:
    """Taylor coefficient of z**m in tanh z; defined for odd m >= 1.

    [z^(2j-1)] tanh z = 2^(2j) (2^(2j) - 1) B_(2j) / (2j)!.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError("invalid series index")
    j2 = m + 1
    return Fraction(2**j2 * (2**j2 - 1)) * bernoulli(j2) / factorial(j2)


def coth_coeff(m: int) -> Fraction:
    """Laurent coefficient of z**m in coth z; m = -1 or odd m >= 1.

    coth z = 1/z + sum_j 2^(2j) B_(2j) / (2j)! * z^(2j-1).
    """
    if m == -1:
        return Fraction(1)
    if m < 1 or m % 2 == 0:
        raise ValueError("invalid series index")
    j2 = m + 1
    return Fraction(2**j2) * bernoulli(j2) / factorial(j2)


@functools.lru_cache(maxsize=None)
def gamma_half(m: int) -> PiNumber:
    """Exact Gamma(m/2) for integer m >= 1.

    Even m gives (m/2 - 1)!; odd m gives a rational multiple of sqrt(pi).
    """
    if m < 1:
        raise ValueError("gamma_half requires m >= 1")
    if m == 1:
        return SQRT_PI
    if m == 2:
        return PiNumber.from_rational(1)
    # Gamma(x + 1) = x * Gamma(x) with x = (m - 2)/2
    return gamma_half(m - 2) * Fraction(m - 2, 2)
