"""Formula layer: thresholds, slopes, dormant degrees, subbundle invariants."""

from fractions import Fraction

import pytest

from dormant_degree.errors import FormulaDomainError, ParameterError
from dormant_degree.opers import (
    OperParams,
    canonical_line_degree,
    dormant_degree,
    dormant_degree_float,
    frobenius_fiber_degree,
    frobenius_fiber_degree_float,
    oper_threshold,
    pushforward_slope_degree,
    quot_scale_check,
    sl_oper_degree,
    subbundle_invariants,
)
from dormant_degree.vi import derive_params


class TestThreshold:
    @pytest.mark.parametrize("g", [2, 3, 7])
    def test_rank_two_threshold_vanishes(self, g):
        assert oper_threshold(2, g) == 0

    def test_direct_values(self):
        assert oper_threshold(3, 2) == 6
        assert oper_threshold(4, 3) == 48


class TestLineDegree:
    def test_values(self):
        assert canonical_line_degree(2, 2) == -1
        assert canonical_line_degree(3, 3) == -4

    @pytest.mark.parametrize("g", [2, 3, 5])
    def test_rank_one_is_trivial(self, g):
        assert canonical_line_degree(1, g) == 0


class TestPushforwardSlope:
    def test_p5(self):
        slope, degree = pushforward_slope_degree(5, -1, 2)
        assert slope == Fraction(3, 5)
        assert degree == 3

    def test_p3(self):
        slope, degree = pushforward_slope_degree(3, -1, 2)
        assert slope == Fraction(1, 3)
        assert degree == 1

    def test_genus_one_vanishing(self):
        assert pushforward_slope_degree(11, 0, 1).slope == 0

    def test_matches_oper_pushforward_degree(self):
        params = OperParams(5, 2, 2)
        assert (
            pushforward_slope_degree(5, params.line_degree, 2).degree
            == params.pushforward_degree
        )


class TestOperParams:
    def test_threshold_enforced(self):
        with pytest.raises(ParameterError, match=r"C\(r,g\)=6"):
            OperParams(5, 3, 2)

    def test_primality_enforced(self):
        with pytest.raises(ParameterError, match="not prime"):
            OperParams(9, 2, 2)

    def test_rank_dividing_p_rejected(self):
        with pytest.raises(ParameterError):
            OperParams(2, 2, 2)

    def test_derived_fields(self):
        params = OperParams(7, 2, 3)
        assert params.threshold == 0
        assert params.line_degree == -2
        assert params.pushforward_degree == 10


class TestDormantDegree:
    def test_genus2_rank2_closed_form(self):
        assert dormant_degree(5, 2, 2) == 5
        assert dormant_degree(7, 2, 2) == 14

    def test_genus3_rank2_csc4_oracle(self):
        # p^2 (p^2 - 1)(p^2 + 11) / 1440 from the csc^4 sum identity
        assert dormant_degree(5, 2, 3) == 15

    def test_threshold_error(self):
        with pytest.raises(ParameterError):
            dormant_degree(5, 3, 2)

    def test_nonprime_error(self):
        with pytest.raises(ParameterError):
            dormant_degree(15, 2, 2)

    @pytest.mark.parametrize(
        "p,expected", [(5, 5), (7, 14), (11, 55), (13, 91), (17, 204)]
    )
    def test_closed_form_regression(self, p, expected):
        assert dormant_degree(p, 2, 2) == Fraction(p**3 - p, 24) == expected

    def test_integrality_grid(self):
        for p in (5, 7, 11, 13):
            for r in (2, 3):
                for g in (2, 3):
                    if p <= oper_threshold(r, g) or p <= r:
                        continue
                    value = dormant_degree(p, r, g)
                    assert value.denominator == 1 and value >= 0, (p, r, g)

    def test_float_backend_agrees(self):
        assert dormant_degree_float(7, 2, 2, 160) == 14

    def test_dormant_parameterization(self):
        for p, r, g in [(5, 2, 2), (13, 3, 3), (11, 2, 3)]:
            params = derive_params(p, (p - r) * (g - 1), r, g)
            assert params.b == r * (g - 1)
            assert params.a == g - 1


class TestSlOperDegree:
    def test_values(self):
        assert sl_oper_degree(5, 2, 2) == 80
        assert sl_oper_degree(7, 2, 2) == 224
        assert sl_oper_degree(5, 2, 3) == 960

    @pytest.mark.parametrize("p,r,g", [(5, 2, 2), (7, 3, 2), (13, 3, 3)])
    def test_ratio_is_r_to_the_2g(self, p, r, g):
        assert sl_oper_degree(p, r, g) == r ** (2 * g) * dormant_degree(p, r, g)


class TestQuotScale:
    def test_values(self):
        assert quot_scale_check(5, 2, 2) == 125
        assert quot_scale_check(7, 2, 2) == 686
        assert quot_scale_check(5, 2, 3) == 1875

    def test_wrong_count_trips_the_check(self):
        with pytest.raises(FormulaDomainError):
            quot_scale_check(5, 2, 2, gamma_count=24)


class TestSubbundleInvariants:
    def test_dormant_point(self):
        inv = subbundle_invariants(5, 3, 2, 2)
        assert (inv.epsilon, inv.s_r, inv.e_max, inv.mukai_bound) == (0, 6, 0, 12)

    def test_congruence_solve(self):
        inv = subbundle_invariants(4, 1, 2, 2)
        assert (inv.epsilon, inv.s_r, inv.e_max) == (2, 6, -1)

    def test_pushforward_of_rank_two(self):
        inv = subbundle_invariants(10, 8, 2, 2)
        assert (inv.epsilon, inv.s_r, inv.e_max) == (0, 16, 0)

    def test_epsilon_unique_by_exhaustive_scan(self):
        for n in range(2, 51):
            for d in (-7, 0, 3, n - 1):
                for r in (1, n // 2, n - 1):
                    if not 1 <= r < n:
                        continue
                    inv = subbundle_invariants(n, d, r, 2)
                    candidates = [
                        e
                        for e in range(n)
                        if (r * (n - r) + e - r * d) % n == 0
                    ]
                    assert candidates == [inv.epsilon]
                    assert inv.s_r <= inv.mukai_bound

    def test_rank_bounds(self):
        with pytest.raises(ParameterError):
            subbundle_invariants(5, 3, 5, 2)


class TestFrobeniusFiberDegree:
    def test_p5_csc2_oracle(self):
        # sum = 10 * (1/4) * (100-1)/3 = 165/2, prefactor 100/25 = 4
        assert frobenius_fiber_degree(5, 2, 2) == 330

    def test_p3_csc2_oracle(self):
        # sum = 6 * (1/4) * (35/3) = 35/2, prefactor 36/9 = 4
        assert frobenius_fiber_degree(3, 2, 2) == 70

    def test_factorial_convention_halves_rank_two(self):
        assert frobenius_fiber_degree(5, 2, 2, "with_factorial") == 165

    def test_unknown_convention(self):
        with pytest.raises(ParameterError):
            frobenius_fiber_degree(5, 2, 2, "ordered")  # type: ignore[arg-type]

    def test_coprimality_required(self):
        with pytest.raises(ParameterError):
            frobenius_fiber_degree(2, 2, 2)

    def test_float_brute_force_agrees(self):
        assert frobenius_fiber_degree_float(5, 2, 2, precision_bits=128) == 330
        assert frobenius_fiber_degree_float(3, 2, 2, precision_bits=128) == 70

    @pytest.mark.parametrize(
        "p,g,expected",
        [
            # genus 2: 2 p^2 (4p^2 - 1) csc^2 identity; genus 3: csc^4 identity
            (3, 2, 70),
            (5, 2, 330),
            (7, 2, 910),
            (3, 3, 658),
            (5, 3, 12210),
            (7, 3, 87906),
        ],
    )
    def test_rank_two_integrality_grid(self, p, g, expected):
        value = frobenius_fiber_degree(p, 2, g)
        assert value == expected
        assert value.denominator == 1
