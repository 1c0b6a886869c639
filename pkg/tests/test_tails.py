"""Internal tail machinery: Euler-Maclaurin power tails, truncated series
algebra, Cauchy envelopes. The Hurwitz tails are checked against mpmath's
independent zeta implementation."""

import pytest
from mpmath import mp, mpf, workprec

from meansinc.tails import (
    TruncSeries,
    clausen_cos,
    even_tail_remainder,
    hurwitz_tail,
    mixed_tail_remainder,
    phase_core_series,
    phase_envelope,
    sin_ratio_outer,
)


@pytest.mark.parametrize("s", [2, 3, 5, 7, 11, 16])
@pytest.mark.parametrize("a", [1, 2, 63, 64, 65, 500])
def test_hurwitz_tail_against_mpmath(s, a):
    value, err = hurwitz_tail(s, a, 256)
    with workprec(400):
        want = mp.zeta(s, a)
    assert abs(value - want) <= err, (s, a)
    assert err < mpf(2) ** (-200) * max(1, want)


def test_hurwitz_tail_error_is_small_at_high_s():
    value, err = hurwitz_tail(40, 100, 256)
    # mpmath's zeta loses relative accuracy for large s unless pushed to a
    # much higher working precision, so the oracle runs at 700 bits
    with workprec(700):
        want = mp.zeta(40, 100)
    assert abs(value - want) <= err
    assert err <= mpf(2) ** (-240) * want


def test_hurwitz_tail_domain():
    with pytest.raises(ValueError):
        hurwitz_tail(1, 10, 256)
    with pytest.raises(ValueError):
        hurwitz_tail(3, 0, 256)


def test_series_ring_axioms():
    f = TruncSeries([mpf(1), mpf(2), mpf(-1), mpf(3)])
    g = TruncSeries([mpf(4), mpf(0), mpf(1), mpf(-2)])
    assert (f + g).coeffs == [5, 2, 0, 1]
    assert (f - g).coeffs == [-3, 2, -2, 5]
    assert (f * g).coeffs == [4, 8, -3, 12]
    # commutativity and scalar mul
    assert (f * g).coeffs == (g * f).coeffs
    assert (f * 3).coeffs == [3, 6, -3, 9]


def test_series_recip():
    f = TruncSeries([mpf(2), mpf(1), mpf(-4), mpf(5), mpf(0)])
    prod = f * f.recip()
    assert prod.coeffs[0] == 1
    for c in prod.coeffs[1:]:
        assert abs(c) < mpf(2) ** (-40)


def test_series_recip_rejects_zero_constant():
    with pytest.raises(ZeroDivisionError):
        TruncSeries([mpf(0), mpf(1)]).recip()


def test_series_compose_entire():
    # compose t with exp coefficients: exp(t) = 1 + t + t^2/2 + t^3/6
    t = TruncSeries([mpf(0), mpf(1), mpf(0), mpf(0)])
    outer = [mpf(1), mpf(1), mpf(1) / 2, mpf(1) / 6]
    e = t.compose_entire(outer)
    assert e.coeffs == [1, 1, mpf(1) / 2, mpf(1) / 6]
    with pytest.raises(ValueError):
        TruncSeries([mpf(1), mpf(1)]).compose_entire(outer)


def test_series_shift_and_overflow():
    f = TruncSeries([mpf(1), mpf(2), mpf(3)])
    assert f.shift(1).coeffs == [0, 1, 2]
    assert f.shift(5).coeffs == [0, 0, 0]


def test_phase_core_series_matches_phase_excess():
    # g(1/l^2)/l should reproduce phi_l for l in the convergence region;
    # phase_core_series computes at the ambient precision, so pin it
    with workprec(300):
        x = mpf("0.7")
        _, g = phase_core_series(x, 8)
        for l in (3, 5, 11):
            v = mpf(1) / (l * l)
            acc = mpf(0)
            for c in reversed(g.coeffs):
                acc = acc * v + c
            phi_series = acc / l
            phi_true = mp.pi * x * x / (mp.sqrt(l * l + x * x) + l)
            # truncation error ~ (x/l)^(2*9)
            assert abs(phi_series - phi_true) < (x / l) ** 16, l


def test_sin_ratio_outer_values():
    c = sin_ratio_outer(3)
    assert c[0] == 1
    assert c[1] == -mpf(1) / 6
    assert c[2] == mpf(1) / 120
    assert c[3] == -mpf(1) / 5040


def test_phase_envelope_dominates_samples():
    # Phi must bound |phi(u)| = |pi x^2/(1 + sqrt(1+x^2 u^2))| on |u| = r;
    # sample real u = +-r where the bound is tightest to verify and rho < 1
    x = mpf(2)
    r = mpf(1) / 5
    Phi, rho = phase_envelope(x, r)
    assert rho < 1
    for u in (r, -r):
        val = mp.pi * x * x * abs(u) / abs(1 + mp.sqrt(1 + x * x * u * u))
        assert val <= Phi
    with pytest.raises(ValueError):
        phase_envelope(mpf(4), mpf(1))


def test_tail_remainders_decrease_with_l():
    menv = mpf("0.5")
    r = mpf(1) / 4
    prev_e = prev_m = None
    for L in (16, 64, 256, 1024):
        e = even_tail_remainder(menv, r, L, 6, 256)
        m = mixed_tail_remainder(menv, r, L, 6, 256)
        assert e > 0 and m > 0
        assert m >= e  # the mixed geometric factor is never smaller
        if prev_e is not None:
            assert e < prev_e and m < prev_m
        prev_e, prev_m = e, m
    with pytest.raises(ValueError):
        even_tail_remainder(menv, r, 3, 6, 256)


def test_clausen_cos_closed_forms():
    with workprec(280):
        theta = mpf(1) / 3
        # s=1: -log(2 sin(theta/2))
        got = clausen_cos(1, theta, 256)
        assert abs(got + mp.log(2 * mp.sin(theta / 2))) < mpf(2) ** (-240)
        # s=1 zero of the log form at theta = pi/3
        assert abs(clausen_cos(1, mp.pi / 3, 256)) < mpf(2) ** (-240)
        # s=2: pi^2/6 - pi*theta/2 + theta^2/4 on (0, 2pi)
        for th in (mpf("0.25"), mpf(2), mpf(5)):
            got = clausen_cos(2, th, 256)
            want = mp.pi**2 / 6 - mp.pi * th / 2 + th * th / 4
            assert abs(got - want) < mpf(2) ** (-240)
