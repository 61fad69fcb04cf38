"""Exact identity suite: every family must hold with exact equality.

The families deliberately overlap in what they compute but not in how, so a
fault in any one ingredient (series coefficients, the A or B arrays, an
angle-sum formula) is caught by at least two structurally different checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import arrays, formulas
from .piring import PiNumber

__all__ = ["FamilyResult", "run_verification", "FAMILY_NAMES"]

_J_CAP = 12          # families involving expected internal angles
_SMALL_SAMPLE_CAP = 6
_EFRON_D_CAP = 5
_EFRON_N_CAP = 10


@dataclass(frozen=True)
class FamilyResult:
    name: str
    passed: bool
    checks: int
    detail: str = ""


def _pi_power(n: int, k: int) -> PiNumber:
    """pi^(n-k)/(n-k)!"""
    return PiNumber.monomial(Fraction(1, factorial(n - k)), 2 * (n - k))


def _family_a_recurrence(max_n: int):
    for n in range(0, max_n + 1):
        for k in range(-3, n + 3):
            lhs = arrays.a_value(n + 2, k) - arrays.a_value(n, k)
            rhs = (n + 1) ** 2 * arrays.a_value(n, k - 2)
            yield lhs == rhs, f"n={n} k={k}"


def _family_b_recurrence(max_n: int):
    for n in range(1, max_n + 1):
        for k in range(2, n + 3):
            lhs = arrays.b_value(n, k - 2) - arrays.b_value(n, k)
            rhs = (k - 1) ** 2 * arrays.b_value(n + 2, k)
            yield lhs == rhs, f"n={n} k={k}"


def _family_a_oracle(max_n: int):
    for n in range(1, max_n + 1):
        for k in range(0, n + 1):
            yield arrays.a_value(n, k) == arrays.a_value_oracle(n, k), f"n={n} k={k}"


def _family_sum_identity_even(max_n: int):
    # sum over s of B{n, n-2s} (n-2s-1)^2 A[n-2s-2, k-2] = pi^(n-k)/(n-k)!
    for n in range(1, max_n + 1):
        for k in range(2, n, 2):
            acc = PiNumber()
            m = n
            while m >= k:
                acc = acc + arrays.b_value(n, m) * arrays.angle_sum_term(m, k)
                m -= 2
            yield acc == _pi_power(n, k), f"n={n} k={k}"


def _family_sum_identity_general(max_n: int):
    # plain sum over all m in {k..n} equals 2 pi^(n-k)/(n-k)!, the
    # alternating sum equals 2 delta_{nk}
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            plain = PiNumber()
            alternating = PiNumber()
            for m in range(k, n + 1):
                term = arrays.b_value(n, m) * arrays.angle_sum_term(m, k)
                plain = plain + term
                alternating = alternating + (-1) ** (n - m) * term
            ok_plain = plain == 2 * _pi_power(n, k)
            expected_alt = PiNumber.from_rational(2 if n == k else 0)
            yield ok_plain and alternating == expected_alt, f"n={n} k={k}"


def _family_gauss_bonnet(max_n: int):
    cap = min(max_n, _J_CAP)
    for n in range(2, cap + 1):
        for k in range(1, n):
            target = PiNumber.from_rational(Fraction(comb(n, k), 2))
            even = PiNumber()
            m = n
            while m >= k:
                even = even + arrays.i_tilde_bb(n, m) * arrays.j_tilde_bb(m, k)
                m -= 2
            odd = PiNumber()
            m = n - 1
            while m >= k:
                odd = odd + arrays.i_tilde_bb(n, m) * arrays.j_tilde_bb(m, k)
                m -= 2
            yield even == target and odd == target, f"n={n} k={k}"


def _family_euler(max_n: int):
    for d in range(1, max_n + 1):
        yield formulas.zero_cell_f_vector(d).euler_holds(), f"d={d}"


def _family_dehn_sommerville(max_n: int):
    for d in range(1, max_n + 1):
        full = formulas.zero_cell_f_vector(d)
        partial = {ell: full.entries[ell] for ell in range(d) if (d - ell) % 2 == 0}
        closed = formulas.dehn_sommerville_closure(d, partial)
        complete_in = dict(enumerate(full.entries))
        idempotent = formulas.dehn_sommerville_closure(d, complete_in) == full
        yield closed == full and idempotent, f"d={d}"


def _family_edge_vertex(max_n: int):
    for d in range(2, max_n + 1):
        fv = formulas.zero_cell_f_vector(d)
        yield 2 * fv.entries[1] == d * fv.entries[0], f"d={d}"


def _family_j_oracle(max_n: int):
    cap = min(max_n, _J_CAP)
    for n in range(1, cap + 1):
        for k in range(1, n + 1):
            yield arrays.j_tilde_bb(n, k) == arrays.j_tilde_recursive(n, k), f"n={n} k={k}"


def _family_small_sample(max_n: int):
    for d in range(1, min(max_n, _SMALL_SAMPLE_CAP) + 1):
        two = formulas.half_sphere_f_vector(d + 2, d)
        three = formulas.half_sphere_f_vector(d + 3, d)
        for k in range(d):
            ok = (two[k] == formulas.f_vector_d_plus_2(d, k)
                  and three[k] == formulas.f_vector_d_plus_3(d, k))
            yield ok, f"d={d} k={k}"


def _family_facet_integral(max_n: int):
    for d in range(1, min(max_n, _SMALL_SAMPLE_CAP) + 1):
        for n in range(d + 1, min(max_n, 12) + 1):
            lhs = formulas.half_sphere_f_vector(n, d)[d - 1]
            yield lhs == formulas.barany_expected_facets(n, d), f"n={n} d={d}"


def _family_efron(max_n: int):
    for d in range(1, min(max_n, _EFRON_D_CAP) + 1):
        for n in range(d + 1, min(max_n, _EFRON_N_CAP) + 1):
            lhs = PiNumber.from_rational(n + 1) - formulas.half_sphere_f_vector(n + 1, d)[0]
            rhs = 2 * (n + 1) * formulas.expected_solid_angle(n, d)
            yield lhs == rhs, f"n={n} d={d}"


_FAMILIES = (
    ("A-recurrence", _family_a_recurrence),
    ("B-recurrence", _family_b_recurrence),
    ("A-closed-form-vs-algorithm", _family_a_oracle),
    ("angle-sum-identity-even-k", _family_sum_identity_even),
    ("angle-sum-identity-general", _family_sum_identity_general),
    ("gauss-bonnet-system", _family_gauss_bonnet),
    ("euler-relation", _family_euler),
    ("dehn-sommerville-closure", _family_dehn_sommerville),
    ("edge-vertex-relation", _family_edge_vertex),
    ("internal-angles-vs-recursion", _family_j_oracle),
    ("small-sample-closed-forms", _family_small_sample),
    ("facet-surface-integral", _family_facet_integral),
    ("efron-identity", _family_efron),
)

FAMILY_NAMES = tuple(name for name, _ in _FAMILIES)


def run_verification(max_n: int = 12) -> list[FamilyResult]:
    """Run every identity family up to the given size; all equalities exact."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    results = []
    for name, family in _FAMILIES:
        checks = 0
        failed: list[str] = []
        for ok, label in family(max_n):
            checks += 1
            if not ok:
                failed.append(label)
        detail = "" if not failed else f"failed at {', '.join(failed[:5])}"
        results.append(FamilyResult(name, not failed, checks, detail))
    return results
