"""Exact arithmetic in the ring of Laurent polynomials in pi**(1/2) over Q.

A :class:`PiNumber` is a finite sum ``sum_e c_e * pi**(e/2)`` with nonzero
rational coefficients ``c_e`` indexed by the integer ``e`` (twice the
exponent of pi, so half-integer powers of pi are representable).  All closed
formulas of this package produce values whose exponents are integers; half
powers only appear transiently inside Gamma-function ratios.

Values are immutable and hashable, so they are safe to share between threads
and to use as cache keys.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterator, Mapping, Union

__all__ = [
    "PiNumber",
    "PiParseError",
    "rat_normalize",
    "format_pi",
    "parse_pi",
    "pi_number_to_json",
    "pi_number_from_json",
    "PI",
    "SQRT_PI",
    "ONE",
    "ZERO",
]

RationalLike = Union[int, Fraction]



def rat_normalize(num: int, den: int) -> Fraction:
    """Reduced fraction with positive denominator; den == 0 is an error."""
    if den == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(num, den)


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class PiNumber:
    """Element of Q[pi**(1/2), pi**(-1/2)] in canonical form (no zero terms)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, RationalLike] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for e2, coeff in terms.items():
                if not isinstance(e2, int):
                    raise TypeError("exponent keys must be integers (2 * exponent)")
                c = _as_fraction(coeff)
                if c:
                    clean[e2] = clean.get(e2, Fraction(0)) + c
                    if not clean[e2]:
                        del clean[e2]
        object.__setattr__(self, "_terms", clean)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_rational(cls, value: RationalLike) -> "PiNumber":
        return cls({0: _as_fraction(value)})

    @classmethod
    def monomial(cls, coeff: RationalLike, exp2: int) -> "PiNumber":
        """coeff * pi**(exp2 / 2)."""
        return cls({exp2: _as_fraction(coeff)})

    # -- inspection ----------------------------------------------------------

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """Terms as (2 * exponent, coefficient), ascending in exponent."""
        return iter(sorted(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_integral(self) -> bool:
        """True when every stored exponent of pi is an integer."""
        return all(e2 % 2 == 0 for e2 in self._terms)

    @property
    def is_rational(self) -> bool:
        return all(e2 == 0 for e2 in self._terms)

    def as_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_rational:
            raise ValueError(f"not a rational number: {self!r}")
        return self._terms[0]

    def require_integral(self) -> "PiNumber":
        """Assert that all pi exponents are integral (they must be for every
        exported formula value; a failure indicates an internal bug)."""
        if not self.is_integral:
            raise AssertionError(
                f"half-integer pi exponent survived to an exported value: {self!r}"
            )
        return self

    # -- ring arithmetic -----------------------------------------------------

    def __add__(self, other: "PiNumber | RationalLike") -> "PiNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for e2, c in other._terms.items():
            s = terms.get(e2, Fraction(0)) + c
            if s:
                terms[e2] = s
            elif e2 in terms:
                del terms[e2]
        return _wrap(terms)

    __radd__ = __add__

    def __neg__(self) -> "PiNumber":
        return _wrap({e2: -c for e2, c in self._terms.items()})

    def __sub__(self, other: "PiNumber | RationalLike") -> "PiNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "PiNumber":
        return _coerce(other) + (-self)

    def __mul__(self, other: "PiNumber | RationalLike") -> "PiNumber":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return ZERO
            return _wrap({e2: c * v for e2, v in self._terms.items()})
        if not isinstance(other, PiNumber):
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for e2a, ca in self._terms.items():
            for e2b, cb in other._terms.items():
                e2 = e2a + e2b
                s = terms.get(e2, Fraction(0)) + ca * cb
                if s:
                    terms[e2] = s
                elif e2 in terms:
                    del terms[e2]
        return _wrap(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PiNumber":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "PiNumber":
        """Exact inverse; defined only for single-term values."""
        if len(self._terms) != 1:
            raise ValueError(f"can only invert a single-term PiNumber: {self!r}")
        ((e2, c),) = self._terms.items()
        return PiNumber({-e2: Fraction(1) / c})

    def __truediv__(self, other: "PiNumber | RationalLike") -> "PiNumber":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / c)
        if not isinstance(other, PiNumber):
            return NotImplemented
        return self * other.inverse()

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PiNumber.from_rational(other)
        if not isinstance(other, PiNumber):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if self.is_integral:
            return f"PiNumber({format_pi(self)!r})"
        body = ", ".join(f"pi^{Fraction(e2, 2)}: {c}" for e2, c in self.items())
        return f"PiNumber({{{body}}})"

    # -- numeric evaluation ----------------------------------------------------

    def eval_float(self) -> float:
        """Evaluate to double precision by rigorous interval arithmetic.

        sqrt(pi) is enclosed between decimal fixed-point bounds at increasing
        precision until both endpoints of the resulting interval round to the
        same double, so the result is correctly rounded even when terms
        cancel by hundreds of orders of magnitude (which happens for the
        sine-moment values at large indices).
        """
        if not self._terms:
            return 0.0
        digits = 40
        while True:
            f_lo, f_hi = _interval_eval(self._terms, digits)
            if f_lo == f_hi:
                if math.isinf(f_lo):
                    raise OverflowError("overflow")
                return f_lo
            if digits > 20000:
                raise ArithmeticError(
                    "interval evaluation did not converge (cancellation "
                    "beyond 20000 digits)")
            digits *= 2


def _wrap(terms: dict[int, Fraction]) -> PiNumber:
    value = PiNumber.__new__(PiNumber)
    object.__setattr__(value, "_terms", terms)
    return value


def _coerce(value: "PiNumber | RationalLike") -> PiNumber:
    if isinstance(value, PiNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return PiNumber.from_rational(value)
    return NotImplemented


def _interval_eval(terms: Mapping[int, Fraction], digits: int) -> tuple[float, float]:
    """Enclose sum c_e * sqrt(pi)**e in doubles using only integer ops.

    Every term is bounded between integer multiples of 10**-Q built from a
    fixed-point enclosure root <= sqrt(pi) * 10**digits <= root + 2; avoiding
    rational normalization keeps huge-cancellation sums fast.
    """
    scale = 10**digits
    root = _sqrt_pi_scaled(digits)
    root_hi = root + 2
    q_exp = digits * (max(max(terms), 0) + 1)
    q_scale = 10**q_exp
    lo_sum = 0
    hi_sum = 0
    for e2, coeff in terms.items():
        cn, cd = coeff.numerator, coeff.denominator
        if e2 >= 0:
            shift = 10 ** (q_exp - digits * e2)
            num_lo, num_hi = root**e2 * shift, root_hi**e2 * shift
            den = cd
        else:
            m = -e2
            num_lo = num_hi = scale**m * q_scale
            den_lo, den_hi = root_hi**m * cd, root**m * cd
        if e2 >= 0:
            a = cn * num_lo
            b = cn * num_hi
            if cn >= 0:
                lo_sum += a // den
                hi_sum += -((-b) // den)
            else:
                lo_sum += b // den
                hi_sum += -((-a) // den)
        else:
            if cn >= 0:
                lo_sum += (cn * num_lo) // den_lo
                hi_sum += -((-(cn * num_hi)) // den_hi)
            else:
                lo_sum += (cn * num_lo) // den_hi
                hi_sum += -((-(cn * num_hi)) // den_lo)
    return _div_to_float(lo_sum, q_scale), _div_to_float(hi_sum, q_scale)


def _div_to_float(num: int, den: int) -> float:
    try:
        return num / den
    except OverflowError:
        return math.inf if num > 0 else -math.inf


def _pi_scaled(digits: int) -> int:
    """floor(pi * 10**digits), by the Machin formula on plain integers."""

    def arctan_inv(x: int, unity: int) -> int:
        total = term = unity // x
        n, sign, xx = 3, -1, x * x
        while term:
            term //= xx
            total += sign * (term // n)
            n += 2
            sign = -sign
        return total

    guard = 10
    unity = 10 ** (digits + guard)
    value = 16 * arctan_inv(5, unity) - 4 * arctan_inv(239, unity)
    return value // 10**guard


_SQRT_PI_CACHE: dict[int, int] = {}


def _sqrt_pi_scaled(digits: int) -> int:
    """Integer r with r <= sqrt(pi) * 10**digits <= r + 2."""
    cached = _SQRT_PI_CACHE.get(digits)
    if cached is None:
        pi_int = _pi_scaled(digits)                    # pi * 10^d, floored
        cached = math.isqrt(pi_int * 10**digits)       # sqrt(pi) * 10^d, floored
        _SQRT_PI_CACHE[digits] = cached
    return cached


ZERO = PiNumber()
ONE = PiNumber.from_rational(1)
PI = PiNumber.monomial(1, 2)
SQRT_PI = PiNumber.monomial(1, 1)


# -- canonical text format ----------------------------------------------------
#
#   expr  := ['-'] term (('+'|'-') term)*
#   term  := coeff '*' pipart | coeff '/' pipart | coeff | pipart
#   coeff := int ['/' int]
#   pipart:= 'pi' ['^' ['-'] int]
#
# Formatting emits terms sorted by ascending exponent.  A term with negative
# exponent and integer coefficient is written "c/pi^k" (matching "2/pi");
# otherwise "a/b*pi^e" with a literal signed exponent.


class PiParseError(ValueError):
    """Raised for malformed PiNumber text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def format_pi(value: PiNumber) -> str:
    """Canonical human-readable form; requires integral pi exponents."""
    if not value:
        return "0"
    if not value.is_integral:
        raise ValueError("cannot format a value with half-integer pi exponents")
    parts: list[str] = []
    for e2, coeff in value.items():
        e = e2 // 2
        sign = "-" if coeff < 0 else "+"
        body = _format_term(abs(coeff), e)
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def _format_term(coeff: Fraction, e: int) -> str:
    num, den = coeff.numerator, coeff.denominator
    if e == 0:
        return str(num) if den == 1 else f"{num}/{den}"
    if e > 0:
        pipart = "pi" if e == 1 else f"pi^{e}"
        if coeff == 1:
            return pipart
        prefix = str(num) if den == 1 else f"{num}/{den}"
        return f"{prefix}*{pipart}"
    # e < 0
    if den == 1:
        pipart = "pi" if e == -1 else f"pi^{-e}"
        return f"{num}/{pipart}"
    return f"{num}/{den}*pi^{e}"


_TOKEN_RE = re.compile(r"\s*(\d+|pi|\^|\*|/|\+|-)")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            if text[pos:].strip() == "":
                break
            raise PiParseError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                               pos)
        tokens.append((match.group(1), match.start(1)))
        pos = match.end()
    return tokens


def parse_pi(text: str) -> PiNumber:
    """Parse the canonical text grammar back into a PiNumber."""
    tokens = _tokenize(text)
    if not tokens:
        raise PiParseError("empty input", 0)
    terms: dict[int, Fraction] = {}
    idx = 0

    def peek() -> str | None:
        return tokens[idx][0] if idx < len(tokens) else None

    def take() -> tuple[str, int]:
        nonlocal idx
        if idx >= len(tokens):
            raise PiParseError("unexpected end of input", len(text))
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_int() -> int:
        tok, pos = take()
        if not tok.isdigit():
            raise PiParseError(f"expected integer, found {tok!r}", pos)
        return int(tok)

    def parse_pipart() -> int:
        """Consume 'pi' ['^' ['-'] int]; return the (signed) exponent."""
        tok, pos = take()
        if tok != "pi":
            raise PiParseError(f"expected 'pi', found {tok!r}", pos)
        if peek() == "^":
            take()
            negative = False
            if peek() == "-":
                take()
                negative = True
            exp = parse_int()
            return -exp if negative else exp
        return 1

    def parse_term(sign: int) -> None:
        coeff = Fraction(sign)
        exponent = 0
        if peek() == "pi":
            exponent = parse_pipart()
        else:
            coeff *= parse_int()
            if peek() == "/":
                take()
                if peek() == "pi":
                    exponent = -parse_pipart()
                else:
                    coeff /= parse_int()
                    if peek() == "/":
                        take()
                        exponent = -parse_pipart()
                    elif peek() == "*":
                        take()
                        exponent = parse_pipart()
            elif peek() == "*":
                take()
                exponent = parse_pipart()
        e2 = 2 * exponent
        total = terms.get(e2, Fraction(0)) + coeff
        if total:
            terms[e2] = total
        elif e2 in terms:
            del terms[e2]

    sign = 1
    if peek() == "-":
        take()
        sign = -1
    parse_term(sign)
    while idx < len(tokens):
        tok, pos = take()
        if tok == "+":
            parse_term(1)
        elif tok == "-":
            parse_term(-1)
        else:
            raise PiParseError(f"expected '+' or '-', found {tok!r}", pos)

    return PiNumber(terms)


# -- JSON encoding -------------------------------------------------------------


def pi_number_to_json(value: PiNumber) -> dict:
    """`{"terms": [{"pi_exp_times_2": e2, "num": "...", "den": "..."}]}`."""
    return {
        "terms": [
            {
                "pi_exp_times_2": e2,
                "num": str(coeff.numerator),
                "den": str(coeff.denominator),
            }
            for e2, coeff in value.items()
        ]
    }


def pi_number_from_json(data: Mapping) -> PiNumber:
    terms: dict[int, Fraction] = {}
    for entry in data["terms"]:
        e2 = int(entry["pi_exp_times_2"])
        coeff = Fraction(int(entry["num"]), int(entry["den"]))
        terms[e2] = terms.get(e2, Fraction(0)) + coeff
    return PiNumber(terms)
