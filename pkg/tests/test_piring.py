import json
import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zerocell.piring import (
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


def test_rat_normalize():
    assert rat_normalize(2, 4) == Fraction(1, 2)
    assert rat_normalize(3, -6) == Fraction(-1, 2)
    assert rat_normalize(0, 7) == Fraction(0, 1)
    assert rat_normalize(0, 7).denominator == 1
    with pytest.raises(ZeroDivisionError):
        rat_normalize(1, 0)


def test_basic_arithmetic():
    pi_sq = PI * PI
    assert pi_sq + pi_sq == 2 * pi_sq
    two_over_pi = PiNumber.monomial(2, -2)
    assert two_over_pi * (PI / 2) == PiNumber.from_rational(1)
    one, pi4 = PiNumber.from_rational(1), PI**4
    assert (one + pi_sq) * (one - pi_sq) == one - pi4
    assert PI**0 == one
    assert SQRT_PI * SQRT_PI == PI
    assert -(PI - 1) == 1 - PI


def test_canonical_form_drops_zero_terms():
    x = PiNumber({2: Fraction(1), 0: Fraction(0)})
    assert list(x.items()) == [(2, Fraction(1))]
    assert not (PI - PI)
    assert PI - PI == PiNumber()


def test_integrality_flags():
    assert (PI**3).is_integral
    assert not SQRT_PI.is_integral
    assert PiNumber.from_rational(Fraction(3, 7)).is_rational
    with pytest.raises(AssertionError):
        SQRT_PI.require_integral()
    assert (SQRT_PI * SQRT_PI).require_integral() == PI


def test_inverse_only_for_monomials():
    assert PiNumber.monomial(Fraction(3, 2), 4).inverse() == PiNumber.monomial(Fraction(2, 3), -4)
    with pytest.raises(ValueError):
        (PI + 1).inverse()


rationals = st.fractions(
    min_value=Fraction(-10**6), max_value=Fraction(10**6), max_denominator=10**4
)
pi_numbers = st.dictionaries(st.integers(-12, 12), rationals, max_size=5).map(PiNumber)


@given(pi_numbers, pi_numbers, pi_numbers)
@settings(max_examples=200, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + PiNumber() == a
    assert a * PiNumber.from_rational(1) == a


def _random_integral(rng):
    terms = {}
    for _ in range(rng.randint(0, 6)):
        e2 = 2 * rng.randint(-8, 8)
        terms[e2] = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
    return PiNumber(terms)


def test_parse_format_round_trip_1000():
    rng = random.Random(20260809)
    for _ in range(1000):
        value = _random_integral(rng)
        assert parse_pi(format_pi(value)) == value


def test_format_examples():
    five_pi2 = PiNumber({4: Fraction(5), 8: Fraction(-3, 8)})
    assert format_pi(five_pi2) == "5*pi^2 - 3/8*pi^4"
    assert format_pi(PiNumber()) == "0"
    assert format_pi(PI) == "pi"
    assert format_pi(-PI) == "-pi"
    assert format_pi(PiNumber.monomial(1, -4)) == "1/pi^2"
    assert format_pi(PiNumber.monomial(Fraction(2, 3), -2)) == "2/3*pi^-1"


def test_parse_examples():
    assert parse_pi("2/pi + 2/3*pi") == PiNumber({-2: Fraction(2), 2: Fraction(2, 3)})
    assert parse_pi("0") == PiNumber()
    assert parse_pi("24/pi^2 - 2") == PiNumber({-4: Fraction(24), 0: Fraction(-2)})
    assert parse_pi("-pi + 1/6*pi^3") == PiNumber({2: Fraction(-1), 6: Fraction(1, 6)})
    assert parse_pi("2/3/pi^2") == PiNumber({-4: Fraction(2, 3)})
    assert parse_pi("200/3*pi^-2") == PiNumber({-4: Fraction(200, 3)})


def test_parse_errors_carry_position():
    with pytest.raises(PiParseError):
        parse_pi("")
    with pytest.raises(PiParseError) as err:
        parse_pi("2 + $")
    assert "position" in str(err.value)
    with pytest.raises(PiParseError):
        parse_pi("2 2")
    with pytest.raises(PiParseError):
        parse_pi("pi^")


def test_format_rejects_half_exponents():
    with pytest.raises(ValueError):
        format_pi(SQRT_PI)


def test_json_round_trip():
    value = PiNumber({-4: Fraction(24), 0: Fraction(-2), 6: Fraction(7, 3)})
    payload = pi_number_to_json(value)
    assert payload["terms"][0] == {"pi_exp_times_2": -4, "num": "24", "den": "1"}
    assert pi_number_from_json(json.loads(json.dumps(payload))) == value


def test_eval_float_examples():
    assert math.isclose((PI**2 / 2).eval_float(), math.pi**2 / 2, rel_tol=1e-15)
    p2 = PiNumber({-4: Fraction(24), 0: Fraction(-2)})
    assert abs(p2.eval_float() - 0.4317) < 5e-5
    assert PiNumber().eval_float() == 0.0


def test_eval_float_no_intermediate_underflow():
    # coefficient far below double range paired with a huge power of pi
    mpmath.mp.dps = 60
    tiny = PiNumber.monomial(Fraction(1, math.factorial(198)), 2 * 198)
    expected = float(mpmath.pi ** 198 / mpmath.factorial(198))
    assert tiny.eval_float() > 0
    assert abs(tiny.eval_float() - expected) <= 4 * math.ulp(expected)


def test_eval_float_overflow():
    huge = PiNumber.monomial(Fraction(10**400), 0)
    with pytest.raises(OverflowError):
        huge.eval_float()


def test_eval_float_matches_high_precision_within_4_ulps():
    from zerocell.tables import table_labels_rows

    mpmath.mp.dps = 60
    checked = 0
    for which in (1, 2, 3, 4, 5):
        _, rows = table_labels_rows(which)
        for row in rows:
            for value in row:
                got = value.eval_float()
                exact = mpmath.mpf(0)
                for e2, coeff in value.items():
                    exact += (mpmath.mpf(coeff.numerator) / coeff.denominator
                              * mpmath.pi ** (mpmath.mpf(e2) / 2))
                ref = float(exact)
                assert abs(got - ref) <= 4 * math.ulp(max(abs(ref), 1e-300))
                checked += 1
    assert checked > 100
