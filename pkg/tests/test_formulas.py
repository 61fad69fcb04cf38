from fractions import Fraction
from math import comb

import pytest

from zerocell.formulas import (
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
from zerocell.piring import PI, PiNumber, parse_pi


def row(*texts):
    return tuple(parse_pi(t) for t in texts)


# Frozen reference rows for the zero-cell f-vector.
ZERO_CELL_ROWS = {
    1: row("2"),
    2: row("1/2*pi^2", "1/2*pi^2"),
    3: row("4/3*pi^2", "2*pi^2", "2 + 2/3*pi^2"),
    4: row("3/8*pi^4", "3/4*pi^4", "5*pi^2", "5*pi^2 - 3/8*pi^4"),
    5: row("16/15*pi^4", "8/3*pi^4", "20/3*pi^2 + 16/9*pi^4", "10*pi^2",
           "2 + 10/3*pi^2 - 8/45*pi^4"),
}


class TestZeroCell:
    @pytest.mark.parametrize("d", sorted(ZERO_CELL_ROWS))
    def test_reference_rows(self, d):
        assert zero_cell_f_vector(d).entries == ZERO_CELL_ROWS[d]

    def test_euler_relation(self):
        for d in range(1, 13):
            assert zero_cell_f_vector(d).euler_holds()

    def test_entries_positive(self):
        for d in range(1, 11):
            assert all(x > 0 for x in zero_cell_f_vector(d).to_floats())

    def test_edge_vertex_relation(self):
        for d in range(2, 13):
            fv = zero_cell_f_vector(d)
            assert 2 * fv.entries[1] == d * fv.entries[0]

    def test_vertices_special_case(self):
        assert zero_cell_vertices(2) == parse_pi("1/2*pi^2")
        # kappa_3 = 4 pi / 3, so E f_0 = (3!/2^3) kappa_3^2 = 4 pi^2 / 3
        assert zero_cell_vertices(3) == PiNumber.from_rational(Fraction(3, 4)) * (
            PiNumber.monomial(Fraction(4, 3), 2) ** 2)
        for d in range(1, 13):
            assert zero_cell_vertices(d) == zero_cell_f_vector(d).entries[0]

    def test_ridges_special_case(self):
        assert zero_cell_ridges(4) == parse_pi("5*pi^2")
        for d in range(2, 13):
            assert zero_cell_ridges(d) == zero_cell_f_vector(d).entries[d - 2]

    def test_dimension_validation(self):
        with pytest.raises(ValueError):
            zero_cell_f_vector(0)
        with pytest.raises(ValueError):
            zero_cell_ridges(1)


class TestIntrinsicVolumes:
    def test_zeroth_is_one(self):
        for d in range(1, 8):
            assert zero_cell_intrinsic_volume(d, 0, Fraction(3, 7)) == \
                PiNumber.from_rational(1)

    def test_mean_zero_cell_length_on_the_line(self):
        assert zero_cell_intrinsic_volume(1, 1, 1) == PiNumber.from_rational(2)

    def test_area_of_planar_cell(self):
        assert zero_cell_intrinsic_volume(2, 2, 1) == PI**3 / 2

    def test_intensity_scaling(self):
        base = zero_cell_intrinsic_volume(3, 2, 1)
        assert zero_cell_intrinsic_volume(3, 2, 2) == base / 4

    def test_all_integral(self):
        for d in range(1, 9):
            for ell in range(0, d + 1):
                assert zero_cell_intrinsic_volume(d, ell, Fraction(2, 3)).is_integral

    def test_validation(self):
        with pytest.raises(ValueError):
            zero_cell_intrinsic_volume(3, 4)
        with pytest.raises(ValueError):
            zero_cell_intrinsic_volume(3, 1, Fraction(-1))


class TestLimitVector:
    def test_duality_with_zero_cell(self):
        for d in range(1, 13):
            lim = limit_f_vector(d)
            zd = zero_cell_f_vector(d).entries
            assert all(lim[k] == zd[d - k - 1] for k in range(d))

    def test_known_endpoints(self):
        for d in range(1, 10):
            assert limit_f_vector(d)[d - 1] == zero_cell_vertices(d)
            if d >= 2:
                assert limit_f_vector(d)[1] == zero_cell_ridges(d)


class TestHalfSphere:
    def test_simplex_sample(self):
        for d in range(1, 7):
            values = half_sphere_f_vector(d + 1, d)
            assert values == [PiNumber.from_rational(comb(d + 1, k + 1))
                              for k in range(d)]

    def test_one_dimensional_hull_has_two_vertices(self):
        for n in range(2, 12):
            assert half_sphere_f_vector(n, 1) == [PiNumber.from_rational(2)]

    def test_small_sample_closed_forms(self):
        for d in range(1, 7):
            two = half_sphere_f_vector(d + 2, d)
            three = half_sphere_f_vector(d + 3, d)
            for k in range(d):
                assert two[k] == f_vector_d_plus_2(d, k)
                assert three[k] == f_vector_d_plus_3(d, k)

    def test_facet_formula_all_d(self):
        for d in range(1, 7):
            for n in range(d + 1, 13):
                assert half_sphere_f_vector(n, d)[d - 1] == barany_expected_facets(n, d)

    def test_odd_dimension_facet_ridge_relation(self):
        for d in (3, 5, 7):
            for n in range(d + 1, 13):
                values = half_sphere_f_vector(n, d)
                assert d * values[d - 1] == 2 * values[d - 2]

    def test_degenerate_sample_size(self):
        with pytest.raises(ValueError, match="degenerate sample size"):
            half_sphere_f_vector(3, 3)

    def test_large_n_approaches_limit(self):
        lim = [v.eval_float() for v in limit_f_vector(3)]
        at_200 = [v.eval_float() for v in half_sphere_f_vector(200, 3)]
        for got, target in zip(at_200, lim):
            assert abs(got - target) <= 1e-2 * abs(target)


class TestEdges:
    def test_triangle(self):
        assert expected_edges(3, 2) == PiNumber.from_rational(3)

    def test_matches_general_formula(self):
        for d in (2, 3, 4, 5):
            for n in range(d + 1, 11):
                assert expected_edges(n, d) == half_sphere_f_vector(n, d)[1]


class TestSolidAngle:
    def test_two_points_on_half_circle(self):
        # one-dimensional oracle: E|theta_1 - theta_2| / (2 pi) for
        # independent uniform angles on [0, pi] equals 1/6
        assert expected_solid_angle(2, 1) == PiNumber.from_rational(Fraction(1, 6))

    def test_one_dimensional_order_statistics(self):
        # E(range of n uniforms on [0, pi]) = pi (n-1)/(n+1)
        for n in range(2, 12):
            expected = Fraction(n - 1, 2 * (n + 1))
            assert expected_solid_angle(n, 1) == PiNumber.from_rational(expected)

    def test_bounded_and_monotone(self):
        values = [expected_solid_angle(n, 2).eval_float() for n in range(3, 31)]
        assert all(0 < v < 0.5 for v in values)
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_efron_identity(self):
        for d in range(1, 6):
            for n in range(d + 1, 11):
                lhs = PiNumber.from_rational(n + 1) - half_sphere_f_vector(n + 1, d)[0]
                assert lhs == 2 * (n + 1) * expected_solid_angle(n, d)


SYLVESTER_CASES = [
    (1, "1"),
    (2, "24/pi^2 - 2"),
    (3, "5/pi^2 - 1/3"),
    (5, "105/8*pi^-4 - 35/8*pi^-2 + 1/3"),
]


class TestSylvester:
    @pytest.mark.parametrize("d,expected", SYLVESTER_CASES)
    def test_reference_values(self, d, expected):
        assert sylvester_probability(d) == parse_pi(expected)

    def test_probability_range(self):
        for d in range(1, 11):
            p = sylvester_probability(d).eval_float()
            assert 0 < p <= 1

    def test_vertex_count_identity(self):
        # E f_0(C_{d+2}) = (d+2) - P(d)
        for d in range(1, 9):
            f0 = half_sphere_f_vector(d + 2, d)[0]
            assert f0 == PiNumber.from_rational(d + 2) - sylvester_probability(d)


class TestConstants:
    def test_grassmann(self):
        assert grassmann_constant(1, 2) == PI**2 / 4

    def test_cover_efron(self):
        assert cover_efron_limit(1, 3) == 12
        assert cover_efron_limit(0, 3) == 6

    def test_c_star_consistency(self):
        # lim E f_0 = 2 C_*(d) / omega_(d+1)
        from zerocell.series import gamma_half

        for d in range(1, 9):
            omega = PiNumber.monomial(2, d + 1) / gamma_half(d + 1)
            assert 2 * c_star(d) / omega == limit_f_vector(d)[0] * omega / omega
            assert (2 * c_star(d)) == limit_f_vector(d)[0] * omega


class TestDehnSommerville:
    def test_closure_from_partial_row(self):
        got = dehn_sommerville_closure(3, {1: parse_pi("2*pi^2"), 3: 1})
        assert got.entries == ZERO_CELL_ROWS[3]

    def test_closure_d2(self):
        got = dehn_sommerville_closure(2, {0: parse_pi("1/2*pi^2")})
        assert got.entries == ZERO_CELL_ROWS[2]

    def test_closure_d4(self):
        full = zero_cell_f_vector(4)
        known = {ell: full.entries[ell] for ell in range(4) if (4 - ell) % 2 == 0}
        assert dehn_sommerville_closure(4, known) == full

    def test_idempotent_on_complete_vectors(self):
        for d in range(1, 9):
            full = zero_cell_f_vector(d)
            again = dehn_sommerville_closure(d, dict(enumerate(full.entries)))
            assert again == full

    def test_missing_entry(self):
        with pytest.raises(ValueError, match="missing"):
            dehn_sommerville_closure(4, {0: PiNumber.from_rational(1)})

    def test_inconsistent_input(self):
        full = zero_cell_f_vector(4)
        known = {ell: full.entries[ell] for ell in range(4) if (4 - ell) % 2 == 0}
        known[1] = PiNumber.from_rational(5)   # wrong odd-codimension entry
        with pytest.raises(ValueError, match="inconsistent"):
            dehn_sommerville_closure(4, known)
        bad_even = dict(known)
        del bad_even[1]
        bad_even[0] = bad_even[0] + 1          # violates the relations
        with pytest.raises(ValueError, match="inconsistent"):
            dehn_sommerville_closure(4, bad_even)


def test_fvector_type_validation():
    with pytest.raises(ValueError):
        FVectorExact(3, (PiNumber.from_rational(1),))
