"""High-precision real special functions: sinc, spherical Bessel j_n, half-integer
Bessel J_{n+1/2}, and the cancellation-free phase excess pi*(sqrt(l^2+x^2) - l).

All functions take and return ``mpmath.mpf`` values (floats/ints/strings are
accepted and converted). Each public function evaluates internally with guard
bits and rounds its result to the requested precision, so results are correct
to within a few ulp at ``prec`` bits. Everything is a pure function of its
arguments; no shared mutable state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf, workprec

DEFAULT_PRECISION_BITS = 256

_GUARD_BITS = 16

__all__ = [
    "DEFAULT_PRECISION_BITS",
    "PhaseExcess",
    "to_mpf",
    "sinc",
    "spherical_bessel_j",
    "spherical_bessel_cos_coeffs",
    "bessel_j_half",
    "phase_excess",
]


def to_mpf(value) -> mpf:
    """Convert int/float/str/Fraction/mpf to mpf at the current working precision."""
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


def _rounded(value, prec: int):
    with workprec(prec):
        return +value


def sinc(z, prec: int = DEFAULT_PRECISION_BITS) -> mpf:
    """sin(z)/z with the removable singularity filled in: sinc(0) = 1.

    Below |z| = 2^(-prec/4) the quotient loses nothing, but the Taylor series
    needs only a handful of terms there and avoids any branch-dependent
    accuracy cliff; the series is truncated once the next term drops below
    2^(-prec-8) relative.
    """
    with workprec(prec + _GUARD_BITS):
        z = to_mpf(z)
        if abs(z) < mpf(2) ** (-(prec // 4)):
            z2 = z * z
            term = mpf(1)
            total = mpf(1)
            k = 1
            eps = mpf(2) ** (-(prec + 8))
            while True:
                term *= -z2 / ((2 * k) * (2 * k + 1))
                if abs(term) < eps:
                    break
                total += term
                k += 1
            result = total
        else:
            result = mp.sin(z) / z
    return _rounded(result, prec)


def _jn_series(n: int, z, prec: int):
    # ascending series j_n(z) = z^n/(2n+1)!! * sum_k (-z^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1));
    # used when z^2 < 4n+6 so terms shrink from the start and there is no cancellation blow-up
    dfact = mpf(1)
    for i in range(2 * n + 1, 0, -2):
        dfact *= i
    term = z**n / dfact
    total = term
    z2h = z * z / 2
    eps = mpf(2) ** (-(prec + 8))
    k = 1
    while True:
        term *= -z2h / (k * (2 * n + 2 * k + 1))
        total += term
        if abs(term) <= eps * abs(total):
            return total
        k += 1


def _jn_upward(n: int, z, prec: int):
    jm = mp.sin(z) / z
    if n == 0:
        return jm
    jc = jm / z - mp.cos(z) / z
    for k in range(1, n):
        jm, jc = jc, (2 * k + 1) / z * jc - jm
    return jc


def _jn_downward(n: int, z, prec: int):
    # Miller's algorithm: recurse j_{k-1} = (2k+1)/z j_k - j_{k+1} from a trial
    # start, rescale against a closed-form reference order, raise the start
    # until two runs agree. j_0 vanishes at z = l*pi (exactly the arguments the
    # sums evaluate), so normalize by whichever of j_0, j_1 is larger; their
    # zeros never coincide.
    eps = mpf(2) ** (-(prec + 4))
    j0 = mp.sin(z) / z
    j1 = j0 / z - mp.cos(z) / z
    prev = None
    start = n + max(24, int(prec * 0.8))
    while True:
        jp = mpf(0)
        jc = mpf(2) ** (-2 * (prec + 64))
        jn_t = None
        j1_t = None
        for k in range(start, 0, -1):
            if k == n:
                jn_t = jc
            if k == 1:
                j1_t = jc
            jp, jc = jc, (2 * k + 1) / z * jc - jp
        if abs(j0) >= abs(j1):
            result = jn_t * (j0 / jc)
        else:
            result = jn_t * (j1 / j1_t)
        if prev is not None and abs(result - prev) <= eps * abs(result):
            return result
        prev = result
        start += 32


def spherical_bessel_j(n: int, z, prec: int = DEFAULT_PRECISION_BITS) -> mpf:
    """Spherical Bessel function j_n(z) for n >= 0 and real z.

    Ascending series for small z, closed trigonometric forms for n <= 2,
    upward recurrence when z >= n, downward (Miller) recurrence otherwise;
    upward recurrence is unstable for n much larger than z.
    """
    if n < 0:
        raise ValueError("spherical_bessel_j requires n >= 0")
    with workprec(prec + 2 * _GUARD_BITS):
        z = to_mpf(z)
        neg = z < 0
        z = abs(z)
        if z == 0:
            result = mpf(1) if n == 0 else mpf(0)
        elif z * z < 4 * n + 6:
            result = _jn_series(n, z, prec)
        elif n == 0:
            result = mp.sin(z) / z
        elif n == 1:
            result = mp.sin(z) / z**2 - mp.cos(z) / z
        elif n == 2:
            result = (3 / z**3 - 1 / z) * mp.sin(z) - 3 / z**2 * mp.cos(z)
        elif z >= n:
            result = _jn_upward(n, z, prec)
        else:
            result = _jn_downward(n, z, prec)
        if neg and n % 2 == 1:
            result = -result  # j_n has parity (-1)^n
    return _rounded(result, prec)


@lru_cache(maxsize=None)
def spherical_bessel_cos_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of the cosine part of j_n in closed form.

    Writing j_n(z) = A_n(w) sin z + B_n(w) cos z with w = 1/z, this returns the
    coefficient tuple (b_0, ..., b_n) of B_n(w) = sum_j b_j w^j. Both polynomial
    families satisfy P_{n+1} = (2n+1) w P_n - P_{n-1} with seeds A_{-1} = 0,
    B_{-1} = w (from j_{-1} = cos z / z) and A_0 = w, B_0 = 0. At z = pi*l the
    sine part drops out, so j_n(pi*l) = (-1)^l B_n(1/(pi*l)) exactly; only b_j
    with j = n (mod 2) are nonzero.
    """
    if n < 0:
        raise ValueError("spherical_bessel_cos_coeffs requires n >= 0")
    b_prev = (0, 1)  # B_{-1}
    b_cur = (0,)  # B_0
    for m in range(n):
        shifted = (0,) + tuple((2 * m + 1) * c for c in b_cur)
        width = max(len(shifted), len(b_prev))
        nxt = tuple(
            (shifted[j] if j < len(shifted) else 0) - (b_prev[j] if j < len(b_prev) else 0)
            for j in range(width)
        )
        b_prev, b_cur = b_cur, nxt
    return b_cur


def bessel_j_half(n: int, z, prec: int = DEFAULT_PRECISION_BITS) -> mpf:
    """Half-integer Bessel function J_{n+1/2}(z) = sqrt(2z/pi) j_n(z), z > 0."""
    with workprec(prec + _GUARD_BITS):
        z = to_mpf(z)
        if z <= 0:
            raise ValueError("bessel_j_half requires z > 0")
        result = mp.sqrt(2 * z / mp.pi) * spherical_bessel_j(n, z, prec + _GUARD_BITS)
    return _rounded(result, prec)


@dataclass(frozen=True)
class PhaseExcess:
    """phi = pi*(sqrt(l^2 + x^2) - l), the deviation of the rms argument from pi*l."""

    l: int
    x: mpf
    phi: mpf


def phase_excess(l: int, x, prec: int = DEFAULT_PRECISION_BITS) -> PhaseExcess:
    """Cancellation-free phase excess phi = pi*x^2 / (sqrt(l^2+x^2) + l).

    Algebraically identical to pi*(sqrt(l^2+x^2) - l) but avoids the subtractive
    cancellation that form suffers for l >> x.
    """
    if l < 0:
        raise ValueError("phase_excess requires l >= 0")
    with workprec(prec + _GUARD_BITS):
        x = to_mpf(x)
        if x < 0:
            raise ValueError("phase_excess requires x >= 0")
        if x == 0:
            phi = mpf(0)
        else:
            phi = mp.pi * x * x / (mp.sqrt(mpf(l) ** 2 + x * x) + l)
        phi = _rounded(phi, prec)
    return PhaseExcess(l=l, x=_rounded(x, prec), phi=phi)
