"""The cancellation prover is exact rational arithmetic end to end, so most
checks here are equalities. The two numeric tests cross-validate the symbolic
coefficients against high-precision finite differences and brute-force sums.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from mpmath import mp, mpf, workprec

from meansinc.expansion import (
    CancellationReport,
    PiSeries,
    SummandCoefficient,
    a3_numeric_consistency,
    a5_check,
    a5_sides,
    a6_factorial_identity,
    a6_sides,
    id2_cancellation,
    sin_sq_half_series,
    summand_series,
    zeta_map,
)


# -------------------------------------------------------------------- PiSeries


def test_pi_series_validation():
    with pytest.raises(ValueError):
        PiSeries(0, ())
    with pytest.raises(ValueError):
        PiSeries(2, (Fraction(1),))


def test_pi_series_add_pads_to_longer_order():
    a = PiSeries(2, (Fraction(1), Fraction(2)))
    b = PiSeries(3, (Fraction(1, 2), Fraction(0), Fraction(5)))
    s = a + b
    assert s.order == 3
    assert s.coeffs == (Fraction(3, 2), Fraction(2), Fraction(5))


def test_pi_series_mul_grading():
    # each factor carries one power of pi^2 x^2, so a product of first-order
    # terms lands at second order
    a = PiSeries(1, (Fraction(3),))
    b = PiSeries(1, (Fraction(5),))
    p = a * b
    assert p.order == 2
    assert p.coefficient(1) == 0
    assert p.coefficient(2) == 15


def test_pi_series_coefficient_beyond_order_is_zero():
    a = PiSeries(2, (Fraction(1), Fraction(2)))
    assert a.coefficient(7) == 0
    with pytest.raises(ValueError):
        a.coefficient(0)


# ----------------------------------------------------------- series producers


def test_sin_sq_half_low_orders():
    s = sin_sq_half_series(3)
    assert s.coefficient(1) == Fraction(1, 4)
    assert s.coefficient(2) == Fraction(-1, 48)
    assert s.coefficient(3) == Fraction(1, 1440)


def test_sin_sq_half_matches_numeric_series():
    # evaluate the truncated series at a small x and compare to sin^2(pi x/2)
    s = sin_sq_half_series(12)
    with workprec(400):
        x = mpf(1) / 64
        acc = mpf(0)
        for n in range(1, 13):
            acc += mpf(s.coefficient(n).numerator) / s.coefficient(n).denominator * (mp.pi * x) ** (2 * n)
        want = mp.sin(mp.pi * x / 2) ** 2
        # remaining error is the first dropped term, ~ (pi x)^26 / (2*26!)
        assert abs(acc - want) < mpf("1e-55")


def test_summand_series_low_orders():
    coeffs = {c.n: c.terms for c in summand_series(4)}
    assert coeffs[2] == {(2, 2): Fraction(1, 16)}
    assert coeffs[3] == {(2, 4): Fraction(-1, 32)}
    assert coeffs[4] == {(2, 6): Fraction(5, 256), (4, 4): Fraction(-1, 768)}


def test_summand_series_grading_and_convergence():
    for c in summand_series(12):
        for (pi_power, inv_l_power) in c.terms:
            assert pi_power % 2 == 0 and inv_l_power % 2 == 0
            assert pi_power + inv_l_power == 2 * c.n
            assert inv_l_power >= 2
        c.assert_convergent()


def test_summand_series_requires_order_two():
    with pytest.raises(ValueError):
        summand_series(1)


def test_summand_coefficient_rejects_bad_grading():
    with pytest.raises(ValueError):
        SummandCoefficient(n=2, terms={(2, 4): Fraction(1)})
    with pytest.raises(ValueError):
        SummandCoefficient(n=2, terms={(1, 3): Fraction(1)})
    with pytest.raises(ValueError):
        SummandCoefficient(n=2, terms={(2, 2): 0.5})


def test_assert_convergent_flags_divergent_powers():
    bad = SummandCoefficient(n=1, terms={(2, 0): Fraction(1)})
    with pytest.raises(AssertionError):
        bad.assert_convergent()


def test_coefficient_oracle_finite_differences():
    # spot-check the exact coefficients against numeric Taylor coefficients of
    # sin^2(phi_l/2) in the variable u = x^2, via high-precision differences
    coeffs = summand_series(6)
    for l in (3, 7):
        with workprec(640):
            def f(u, l=l):
                phi = mp.pi * u / (mp.sqrt(l * l + u) + l)
                return mp.sin(phi / 2) ** 2

            for c in coeffs:
                want = mp.diff(f, 0, c.n, direction=0) / math.factorial(c.n)
                got = c.evaluate(l, 512)
                assert abs(got - want) < mpf("1e-30"), (c.n, l)


def test_numeric_symbolic_closure():
    # zeta_map's x^(2n) output against a brute-force sum over l <= 10^5 of the
    # per-l coefficients, within the integral-test tail bound
    coeffs = summand_series(6)
    l = np.arange(1, 10**5 + 1, dtype=np.float64)
    for c in coeffs:
        brute = 0.0
        tail = 0.0
        for (pi_power, inv_l_power), value in c.terms.items():
            v = float(Fraction(value))
            brute += v * math.pi**pi_power * float(np.sum(l ** (-float(inv_l_power))))
            tail += abs(v) * math.pi**pi_power * 10.0 ** (-5 * (inv_l_power - 1)) / (inv_l_power - 1)
        brute *= 2.0
        tail *= 2.0
        mapped = zeta_map([c]).coefficient(c.n)
        numeric = float(mapped) * math.pi ** (2 * c.n)
        assert abs(numeric - brute) <= tail + 1e-12 * abs(numeric), c.n


# ------------------------------------------------------------------- zeta map


def test_zeta_map_first_nontrivial_order():
    mapped = zeta_map(summand_series(2))
    assert mapped.coefficient(2) == Fraction(1, 48)  # 2 * (1/16) * (1/6)


def test_zeta_map_trivial_zero_rule():
    # a formally divergent l^(+2) entry maps to zeta(-2) = 0
    artificial = SummandCoefficient(n=1, terms={(4, -2): Fraction(7)})
    mapped = zeta_map([artificial])
    assert mapped.coefficient(1) == 0


def test_zeta_map_rejects_l_power_zero():
    artificial = SummandCoefficient(n=1, terms={(2, 0): Fraction(1)})
    with pytest.raises(ValueError):
        zeta_map([artificial])


def test_zeta_map_empty_input():
    assert zeta_map([]).coefficient(1) == 0


# ------------------------------------------------------------- the main claim


@pytest.mark.parametrize("N", [2, 3, 5, 8, 12])
def test_cancellation_small_orders(N):
    rep = id2_cancellation(N)
    assert isinstance(rep, CancellationReport)
    assert rep.coefficient_of_x2 == Fraction(1, 4)
    assert rep.all_cancelled
    assert rep.residuals == (Fraction(0),) * (N - 1)
    assert rep.negative_zeta_uses == 0


def test_cancellation_requires_order_two():
    with pytest.raises(ValueError):
        id2_cancellation(1)


# ----------------------------------------------------------------- identities


def test_a5_all_orders():
    for n in range(51):
        lhs, rhs = a5_sides(n)
        assert lhs == rhs, n
        assert a5_check(n)


def test_a5_first_values():
    # 1/(2n+1)!! for n = 0, 1, 2
    assert a5_sides(0)[0] == Fraction(1)
    assert a5_sides(1)[0] == Fraction(1, 3)
    assert a5_sides(2)[0] == Fraction(1, 15)


def test_a6_all_orders():
    for n in range(51):
        lhs, rhs = a6_sides(n)
        assert lhs == rhs == math.factorial(2 * n + 1), n
        assert a6_factorial_identity(n)


def test_identity_domain_errors():
    with pytest.raises(ValueError):
        a5_sides(-1)
    with pytest.raises(ValueError):
        a6_sides(-1)


# ------------------------------------------------------------ numeric bridge


def test_a3_consistency_shrinks_with_order():
    d2 = a3_numeric_consistency(3, mpf("0.5"), 2)
    d6 = a3_numeric_consistency(3, mpf("0.5"), 6)
    assert d6 < d2
    assert d6 < 1e-8


def test_a3_consistency_small_x():
    assert a3_numeric_consistency(1, mpf("0.1"), 5) < 1e-14


def test_a3_domain():
    with pytest.raises(ValueError):
        a3_numeric_consistency(0, mpf("0.1"), 3)
    with pytest.raises(ValueError):
        a3_numeric_consistency(3, mpf(2), 3)  # needs x < l/2
    with pytest.raises(ValueError):
        a3_numeric_consistency(3, mpf("0.5"), 0)
