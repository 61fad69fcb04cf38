from fractions import Fraction
from math import comb, factorial

import pytest
import scipy.integrate

from zerocell import arrays
from zerocell.arrays import (
    a_value,
    a_value_oracle,
    angle_sum_term,
    b_value,
    c_tilde_1,
    clear_caches,
    i_tilde_bb,
    j_tilde_bb,
    j_tilde_recursive,
    q_poly,
    sin_moment,
)
from zerocell.piring import PI, PiNumber, parse_pi


def pi_val(text):
    return parse_pi(text)


class TestQPolynomial:
    def test_base_cases(self):
        assert q_poly(0).coeffs == (1,)
        assert q_poly(1).coeffs == (1,)

    def test_examples(self):
        assert q_poly(4).coeffs == (1, 10, 9)
        assert q_poly(6).coeffs == (1, 35, 259, 225)

    def test_degree_and_factor_count(self):
        for n in range(0, 21):
            poly = q_poly(n)
            assert poly.factor_count == n // 2
            expected_degree = n if n % 2 == 0 else n - 1
            assert poly.degree == expected_degree
            assert all(c > 0 for c in poly.coeffs)


# Frozen values transcribed from the reference grids of A[n,k].
A_EVEN_CASES = [
    (6, 4, "259"),
    (14, 14, "18261468225"),
    (12, 10, "128816766"),
    (9, 8, "147456"),
    (2, 2, "1"),
]

A_ODD_CASES = [
    (1, 1, "2/pi"),
    (2, 1, "1/2*pi"),
    (3, 1, "2/pi + 2/3*pi"),
    (4, 1, "5*pi - 3/8*pi^3"),
    (5, 5, "128/pi"),
    (7, 5, "1568/pi + 384*pi"),
    (8, 1, "42*pi - 329/4*pi^3 + 3229/60*pi^5 - 595/128*pi^7"),
    (8, 3, "987*pi - 3229/6*pi^3 + 735/16*pi^5"),
]


class TestAValue:
    @pytest.mark.parametrize("n,k,expected", A_EVEN_CASES + A_ODD_CASES)
    def test_reference_values(self, n, k, expected):
        assert a_value(n, k) == pi_val(expected)

    def test_boundary_column(self):
        for n in range(0, 20):
            assert a_value(n, 0) == PiNumber.from_rational(1)

    def test_vanishing(self):
        assert a_value(4, 6) == PiNumber()          # k > n
        assert a_value(3, 5) == PiNumber()
        assert a_value(6, -2) == PiNumber()         # even k <= -2
        assert a_value(7, -4) == PiNumber()

    def test_negative_odd_k(self):
        # from the Laurent multiplier: A[1,-1] = coth coefficient (pi/2)/3
        assert a_value(1, -1) == PI / 6
        assert a_value(2, -1) == PI / 2 - PI**3 / 24
        assert a_value(3, -1) == PI / 6 - PI**3 / 90

    def test_parity_structure(self):
        for n in range(0, 13):
            for k in range(-3, n + 1):
                value = a_value(n, k)
                assert value.is_integral
                if k % 2 == 0:
                    assert value.is_rational
                    if k >= 0:
                        assert value.as_fraction().denominator == 1
                else:
                    # odd k: only odd powers of pi
                    assert all((e2 // 2) % 2 == 1 for e2, _ in value.items())

    def test_recurrence_exact(self):
        for n in range(0, 21):
            for k in range(-3, n + 3):
                lhs = a_value(n + 2, k) - a_value(n, k)
                assert lhs == (n + 1) ** 2 * a_value(n, k - 2)

    def test_rejects_negative_n(self):
        with pytest.raises(ValueError):
            a_value(-1, 0)


class TestAValueOracle:
    def test_examples(self):
        assert a_value_oracle(2, 2) == PiNumber.from_rational(1)
        assert a_value_oracle(5, 4) == PiNumber.from_rational(64)
        assert a_value_oracle(5, 5) == pi_val("128/pi")
        assert a_value_oracle(8, 3) == pi_val("987*pi - 3229/6*pi^3 + 735/16*pi^5")

    def test_agrees_with_closed_form_to_14(self):
        for n in range(1, 15):
            for k in range(0, n + 1):
                assert a_value_oracle(n, k) == a_value(n, k), (n, k)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            a_value_oracle(0, 0)
        with pytest.raises(ValueError):
            a_value_oracle(3, 4)


class TestSinMoment:
    def test_bases(self):
        assert sin_moment(0) == PiNumber.from_rational(2)
        assert sin_moment(1) == PI

    def test_against_quadrature(self):
        for m in range(0, 13):
            ref, _ = scipy.integrate.quad(
                lambda x, m=m: x**m * __import__("math").sin(x), 0, __import__("math").pi,
                epsabs=1e-13, epsrel=1e-13)
            got = sin_moment(m).eval_float()
            assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))


B_CASES = [
    (4, 2, "-2 + 1/2*pi^2"),
    (3, 3, "1/4*pi"),
    (6, 4, "-20/81 + 1/18*pi^2"),
    (5, 3, "-1/16*pi + 1/24*pi^3"),
    (10, 4, "-1640/6561 + 91/1458*pi^2 - 5/972*pi^4 + 1/6480*pi^6"),
]


class TestBValue:
    @pytest.mark.parametrize("n,k,expected", B_CASES)
    def test_reference_values(self, n, k, expected):
        assert b_value(n, k) == pi_val(expected)

    def test_boundaries(self):
        for n in range(1, 10):
            top = PiNumber.monomial(Fraction(1, factorial(n)), 2 * n)
            assert b_value(n, 0) == top
            assert b_value(n, 1) == top
        assert b_value(5, 6) == PiNumber()

    def test_recurrence_exact(self):
        for n in range(1, 17):
            for k in range(2, n + 3):
                lhs = b_value(n, k - 2) - b_value(n, k)
                assert lhs == (k - 1) ** 2 * b_value(n + 2, k)

    def test_against_quadrature(self):
        import math

        for n in range(1, 13):
            for k in range(1, n + 1):
                ref, _ = scipy.integrate.quad(
                    lambda x, k=k, n=n: math.sin(x) ** (k - 1) * x ** (n - k),
                    0, math.pi, epsabs=1e-14, epsrel=1e-13)
                ref /= factorial(k - 1) * factorial(n - k)
                got = b_value(n, k).eval_float()
                assert abs(got - ref) <= 1e-10 * abs(ref)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            b_value(0, 1)
        with pytest.raises(ValueError):
            b_value(3, -1)


class TestAngleSums:
    def test_c_tilde(self):
        assert c_tilde_1(1) == PiNumber.monomial(1, -2)       # 1/pi
        assert c_tilde_1(2) == PiNumber.from_rational(Fraction(1, 2))
        assert c_tilde_1(3) == PiNumber.monomial(2, -2)

    def test_external_sum_examples(self):
        for n in range(1, 13):
            assert i_tilde_bb(n, n) == PiNumber.from_rational(1)
        assert i_tilde_bb(2, 1) == PiNumber.from_rational(1)
        assert i_tilde_bb(3, 2) == PiNumber.from_rational(Fraction(3, 2))

    def test_external_sum_matches_quadrature(self):
        # double-integral definition of the external angle sums at alpha = 1
        import math

        for n, k in [(2, 1), (3, 1), (4, 2), (5, 3), (6, 2)]:
            c_k = c_tilde_1(k).eval_float()

            def integrand(x, k=k, n=n, c_k=c_k):
                inner = x / math.pi + 0.5
                return c_k * math.cos(x) ** (k - 1) * inner ** (n - k)

            ref, _ = scipy.integrate.quad(integrand, -math.pi / 2, math.pi / 2,
                                          epsabs=1e-13, epsrel=1e-12)
            ref *= comb(n, k)
            assert abs(i_tilde_bb(n, k).eval_float() - ref) <= 1e-10 * max(1.0, abs(ref))

    def test_internal_sum_examples(self):
        for n in range(1, 13):
            assert j_tilde_bb(n, n) == PiNumber.from_rational(1)
        for n in range(2, 13):
            assert j_tilde_bb(n, n - 1) == PiNumber.from_rational(Fraction(n, 2))
        # n = k = 1 runs through the 2/pi convention
        assert j_tilde_bb(1, 1) == PiNumber.from_rational(1)

    def test_convention_term(self):
        assert angle_sum_term(1, 1) == PiNumber.monomial(2, -2)
        assert angle_sum_term(1, 3) == PiNumber()
        assert angle_sum_term(3, 2) == 4 * a_value(1, 0)

    def test_recursive_route_matches_closed_form(self):
        for n in range(1, 13):
            for k in range(1, n + 1):
                assert j_tilde_recursive(n, k) == j_tilde_bb(n, k), (n, k)

    def test_base_case(self):
        assert j_tilde_recursive(2, 2) == PiNumber.from_rational(1)

    def test_range_validation(self):
        for fn in (i_tilde_bb, j_tilde_bb, j_tilde_recursive):
            with pytest.raises(ValueError):
                fn(3, 0)
            with pytest.raises(ValueError):
                fn(3, 4)


class TestIdentities:
    def test_even_k_sum_identity(self):
        # sum over s of B{n,n-2s} (n-2s-1)^2 A[n-2s-2,k-2] = pi^(n-k)/(n-k)!
        for n in range(1, 17):
            for k in range(2, n, 2):
                acc = PiNumber()
                m = n
                while m >= k:
                    acc = acc + b_value(n, m) * angle_sum_term(m, k)
                    m -= 2
                assert acc == PiNumber.monomial(Fraction(1, factorial(n - k)), 2 * (n - k))

    def test_general_sum_and_alternating_identities(self):
        for n in range(1, 17):
            for k in range(1, n + 1):
                plain = PiNumber()
                alt = PiNumber()
                for m in range(k, n + 1):
                    term = b_value(n, m) * angle_sum_term(m, k)
                    plain = plain + term
                    alt = alt + (-1) ** (n - m) * term
                assert plain == PiNumber.monomial(Fraction(2, factorial(n - k)), 2 * (n - k))
                assert alt == PiNumber.from_rational(2 if n == k else 0)

    def test_gauss_bonnet_both_parities(self):
        for n in range(2, 13):
            for k in range(1, n):
                target = PiNumber.from_rational(Fraction(comb(n, k), 2))
                for start in (n, n - 1):
                    acc = PiNumber()
                    m = start
                    while m >= k:
                        acc = acc + i_tilde_bb(n, m) * j_tilde_bb(m, k)
                        m -= 2
                    assert acc == target, (n, k, start)


def test_cache_hits_match_fresh_recomputation():
    probes = [
        b_value(10, 4),
        a_value(9, 3),
        j_tilde_recursive(8, 4),
        sin_moment(7),
        i_tilde_bb(9, 5),
    ]
    clear_caches()
    fresh = [
        arrays.b_value(10, 4),
        arrays.a_value(9, 3),
        arrays.j_tilde_recursive(8, 4),
        arrays.sin_moment(7),
        arrays.i_tilde_bb(9, 5),
    ]
    assert probes == fresh
