import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf, workprec

from meansinc.specfun import (
    bessel_j_half,
    phase_excess,
    sinc,
    spherical_bessel_cos_coeffs,
    spherical_bessel_j,
)

PREC = 256
EPS = mpf(2) ** (-PREC)


def test_sinc_at_zero():
    assert sinc(0) == 1


def test_sinc_known_points():
    with workprec(300):
        assert abs(sinc(mp.pi) - 0) < 10 * EPS
        assert abs(sinc(mp.pi / 2) - 2 / mp.pi) < 10 * EPS
        assert abs(sinc(1) - mp.sin(1)) < 10 * EPS


def test_sinc_tiny_argument_branch():
    # below the 2^(-prec/4) threshold the Taylor branch takes over; it must
    # agree with sin(z)/z computed at doubled precision
    for e in (-70, -100, -200):
        z = mpf(2) ** e
        got = sinc(z, PREC)
        with workprec(2 * PREC):
            want = mp.sin(z) / z
        assert abs(got - want) <= 4 * EPS


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-50, max_value=50, allow_nan=False))
def test_sinc_even_and_bounded(z):
    a = sinc(z)
    b = sinc(-z)
    assert abs(a - b) <= 4 * EPS * (1 + abs(a))
    assert abs(a) <= 1 + 4 * EPS


def test_j0_is_sinc():
    for z in (0.3, 1.0, 7.5, 40.0):
        assert abs(spherical_bessel_j(0, z) - sinc(z)) <= 10 * EPS


def test_j1_at_pi():
    with workprec(300):
        assert abs(spherical_bessel_j(1, mp.pi) - 1 / mp.pi) < 10 * EPS


def test_jn_parity():
    for n in range(0, 7):
        for z in (0.4, 3.0, 11.0):
            a = spherical_bessel_j(n, -z)
            b = spherical_bessel_j(n, z)
            assert abs(a - (-1) ** n * b) <= 10 * EPS


def test_jn_recurrence():
    # j_{n-1}(z) + j_{n+1}(z) = ((2n+1)/z) j_n(z). Each value carries a few ulp
    # of its own magnitude and the two left terms can nearly cancel, so the
    # deviation is measured against the largest participating term.
    zs = [mpf("0.1"), mpf("0.9"), mpf(3), mpf(10), mpf(31), mpf(100)]
    for n in range(1, 31):
        for z in zs:
            a = spherical_bessel_j(n - 1, z)
            b = spherical_bessel_j(n + 1, z)
            rhs = (2 * n + 1) / z * spherical_bessel_j(n, z)
            scale = max(abs(a), abs(b), abs(rhs), mpf(2) ** (-PREC // 2))
            assert abs(a + b - rhs) <= 10 * mpf(2) ** (-PREC) * scale, (n, z)


def test_jn_against_mpmath():
    # cross-library check, including the Miller-recurrence regime n >> z
    cases = [(0, 0.7), (1, 2.0), (2, 9.0), (5, 1.0), (12, 3.5), (25, 60.0), (40, 1.5)]
    for n, z in cases:
        zw = mpf(str(z))  # same argument object on both sides
        got = spherical_bessel_j(n, zw, PREC)
        with workprec(PREC + 64):
            want = mp.sqrt(mp.pi / (2 * zw)) * mp.besselj(n + mpf(1) / 2, zw)
        assert abs(got - want) <= 16 * EPS * max(1, abs(want)), (n, z)


def test_jn_at_zero():
    assert spherical_bessel_j(0, 0) == 1
    for n in range(1, 6):
        assert spherical_bessel_j(n, 0) == 0


def test_bessel_j_half_against_mpmath():
    for n, z in [(1, 3.14), (3, 9.42), (6, 1.0)]:
        zw = mpf(str(z))
        got = bessel_j_half(n, zw, PREC)
        with workprec(PREC + 64):
            want = mp.besselj(n + mpf(1) / 2, zw)
        assert abs(got - want) <= 16 * EPS * max(1, abs(want))


def test_bessel_j_half_requires_positive_argument():
    with pytest.raises(ValueError):
        bessel_j_half(1, 0)


def test_cos_coeffs_low_orders():
    # closed forms: B_0 = 0, B_1 = -w, B_2 = -3w^2, B_3 = w - 15w^3
    assert spherical_bessel_cos_coeffs(0) == (0,)
    assert spherical_bessel_cos_coeffs(1) == (0, -1)
    assert spherical_bessel_cos_coeffs(2) == (0, 0, -3)
    assert spherical_bessel_cos_coeffs(3) == (0, 1, 0, -15)


def test_cos_coeffs_parity_structure():
    # only powers w^j with n+j even appear
    for n in range(0, 12):
        coeffs = spherical_bessel_cos_coeffs(n)
        for j, c in enumerate(coeffs):
            if (n + j) % 2 == 1:
                assert c == 0, (n, j)


def test_cos_coeffs_reproduce_jn_at_pi_l():
    # at z = pi*l the sine part drops out: j_n(pi l) = (-1)^l B_n(1/(pi l))
    with workprec(320):
        for n in range(0, 9):
            coeffs = spherical_bessel_cos_coeffs(n)
            for l in (1, 2, 3, 5, 8):
                w = 1 / (mp.pi * l)
                poly = mpf(0)
                for c in reversed(coeffs):
                    poly = poly * w + c
                direct = spherical_bessel_j(n, mp.pi * l, 300)
                assert abs(direct - (-1) ** l * poly) <= mpf(2) ** (-280), (n, l)


def test_cos_coeffs_rejects_negative():
    with pytest.raises(ValueError):
        spherical_bessel_cos_coeffs(-1)


def test_phase_excess_pythagorean_triple():
    # l=3, x=4: sqrt(l^2+x^2) = 5 exactly, so phi = 2*pi
    ph = phase_excess(3, 4)
    with workprec(300):
        assert abs(ph.phi - 2 * mp.pi) <= 4 * EPS * ph.phi
    assert ph.l == 3


def test_phase_excess_l_zero():
    ph = phase_excess(0, mpf("1.5"))
    with workprec(300):
        assert abs(ph.phi - mp.pi * mpf("1.5")) <= 4 * EPS * ph.phi


def test_phase_excess_matches_naive_at_doubled_precision():
    for l in (0, 1, 7, 100, 10**6):
        for x in ("0.1", "1", "9.75"):
            ph = phase_excess(l, mpf(x), PREC)
            with workprec(2 * PREC):
                xw = mpf(x)
                naive = mp.pi * (mp.sqrt(l * l + xw * xw) - l)
            assert abs(ph.phi - naive) <= 4 * EPS * abs(naive), (l, x)


def test_phase_excess_decreasing_in_l():
    xs = [mpf("0.3"), mpf(2)]
    for x in xs:
        prev = phase_excess(1, x).phi
        for l in range(2, 40):
            cur = phase_excess(l, x).phi
            assert cur < prev
            prev = cur


def test_phase_excess_rejects_bad_inputs():
    with pytest.raises(ValueError):
        phase_excess(-1, 1)
    with pytest.raises(ValueError):
        phase_excess(1, -0.5)


def test_shifted_sine_identity():
    # sin(pi l + phi) = (-1)^l sin(phi), cos likewise; this is what makes the
    # phase-excess form equivalent to the literal alternating terms
    with workprec(320):
        for l in (1, 2, 3, 10, 47, 100):
            phi = phase_excess(l, mpf("1.3"), 300).phi
            assert abs(mp.sin(mp.pi * l + phi) - (-1) ** l * mp.sin(phi)) < mpf(2) ** (-290)
            assert abs(mp.cos(mp.pi * l + phi) - (-1) ** l * mp.cos(phi)) < mpf(2) ** (-290)
