"""Tail machinery shared by the sum evaluators: Euler-Maclaurin power tails with
rigorous remainders, truncated power-series arithmetic for asymptotic expansion
coefficients, and Cauchy-estimate envelopes that bound what the truncated
expansions discard.

The summands handled here are analytic, even functions of u = 1/l on a disk
|u| < 1/x, so they admit expansions sum_m c_m u^(2m). The partial sums over
l <= L are evaluated directly; the discarded l > L tail is rebuilt from the
c_m via tails sum_{l>L} l^(-s), and the expansion's own truncation error is
bounded through Cauchy's coefficient estimate on a circle |u| = r inside the
disk. Every bound returned here dominates the quantity it bounds.
"""

from __future__ import annotations

from math import factorial

from mpmath import mp, mpf, workprec

from .exactmath import bernoulli
from .specfun import to_mpf

__all__ = [
    "hurwitz_tail",
    "TruncSeries",
    "phase_core_series",
    "sin_ratio_outer",
    "cos_outer",
    "phase_envelope",
    "even_tail_remainder",
    "mixed_tail_remainder",
    "clausen_cos",
]


def hurwitz_tail(s: int, a: int, prec: int) -> tuple[mpf, mpf]:
    """sum_{l >= a} l^(-s) for integer s >= 2, with a rigorous error bound.

    Euler-Maclaurin about a: integral + half endpoint + Bernoulli corrections.
    For f(y) = y^(-s) every derivative has constant sign on [a, inf), so the
    remainder after K correction terms is bounded in magnitude by the first
    omitted term; that magnitude is what the second return value reports.
    """
    if s < 2:
        raise ValueError("hurwitz_tail requires s >= 2")
    if a < 1:
        raise ValueError("hurwitz_tail requires a >= 1")
    guard = 32
    with workprec(prec + guard):
        direct = mpf(0)
        a0 = a
        if a0 < 64:
            # shift the expansion point so the correction terms shrink fast
            for l in range(a0, 64):
                direct += mpf(l) ** (-s)
            a0 = 64
        af = mpf(a0)
        total = af ** (1 - s) / (s - 1) + af ** (-s) / 2
        rising = mpf(s)  # (s)_{2k-1} at k = 1
        apow = af ** (-s - 1)
        inv_a2 = 1 / (af * af)
        eps = mpf(2) ** (-(prec + guard - 8))
        prev_mag = None
        err = None
        k = 1
        while True:
            term = to_mpf(bernoulli(2 * k)) * rising * apow / factorial(2 * k)
            mag = abs(term)
            if (prev_mag is not None and mag >= prev_mag) or mag <= eps * total or k > 256:
                err = mag
                break
            total += term
            prev_mag = mag
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            apow *= inv_a2
            k += 1
        value = direct + total
        err = err + value * mpf(2) ** (-(prec + guard - 8))
        return value, err


class TruncSeries:
    """Power series in one variable truncated at a fixed order, dense coefficients.

    Coefficients may be mpf or mpc; arithmetic happens at the caller's working
    precision. Only the operations the tail expansions need are provided.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        coeffs = list(coeffs)
        if order is not None:
            if len(coeffs) < order + 1:
                coeffs += [mpf(0)] * (order + 1 - len(coeffs))
            else:
                coeffs = coeffs[: order + 1]
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int) -> "TruncSeries":
        return cls([to_mpf(value)] + [mpf(0)] * order)

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])
        return TruncSeries([self.coeffs[0] + other] + self.coeffs[1:])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, TruncSeries):
            return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])
        return TruncSeries([self.coeffs[0] - other] + self.coeffs[1:])

    def __rsub__(self, other):
        return TruncSeries([other - self.coeffs[0]] + [-c for c in self.coeffs[1:]])

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c * other for c in self.coeffs])
        n = min(self.order, other.order)
        out = [mpf(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncSeries(out)

    __rmul__ = __mul__

    def recip(self) -> "TruncSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        p = self.coeffs
        if p[0] == 0:
            raise ZeroDivisionError("series has zero constant term")
        q = [1 / p[0]]
        for n in range(1, self.order + 1):
            acc = sum(p[j] * q[n - j] for j in range(1, n + 1) if p[j] != 0)
            q.append(-acc / p[0])
        return TruncSeries(q)

    def compose_entire(self, outer_coeffs) -> "TruncSeries":
        """sum_k outer_coeffs[k] * self^k via Horner; requires zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("composition requires zero constant term")
        order = self.order
        acc = TruncSeries.constant(outer_coeffs[-1], order)
        for c in reversed(outer_coeffs[:-1]):
            acc = acc * self + c
        return acc

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by t^k (keeping the truncation order)."""
        if k > self.order:
            return TruncSeries([mpf(0)] * (self.order + 1))
        return TruncSeries([mpf(0)] * k + self.coeffs[: self.order + 1 - k])


def phase_core_series(x, order: int) -> tuple[TruncSeries, TruncSeries]:
    """Series pieces of the phase excess in v = 1/l^2.

    Returns (A, g) with A(v) = sqrt(1 + x^2 v) and g(v) = pi x^2 / (1 + A(v)),
    so that phi(1/l) = g(v)/l. Both truncated at v^order.
    """
    x2 = x * x
    coeffs = [mpf(1)]
    b = mpf(1)
    p = mpf(1)
    for m in range(1, order + 1):
        b *= (mpf(3) / 2 - m) / m  # C(1/2, m) from C(1/2, m-1)
        p *= x2
        coeffs.append(b * p)
    a_series = TruncSeries(coeffs)
    g_series = (mp.pi * x2) * (a_series + 1).recip()
    return a_series, g_series


def sin_ratio_outer(order: int) -> list[mpf]:
    """Taylor coefficients of sin(sqrt(y))/sqrt(y) = sum_k (-1)^k y^k/(2k+1)!."""
    return [mpf((-1) ** k) / factorial(2 * k + 1) for k in range(order + 1)]


def cos_outer(order: int) -> list[mpf]:
    """Taylor coefficients of cos(sqrt(y)) = sum_k (-1)^k y^k/(2k)!."""
    return [mpf((-1) ** k) / factorial(2 * k) for k in range(order + 1)]


def phase_envelope(x, r) -> tuple[mpf, mpf]:
    """(Phi, rho): |phi(u)| <= Phi on the circle |u| = r, with rho = x^2 r^2 < 1.

    On |u| = r the argument 1 + x^2 u^2 stays in the disk of radius rho about 1,
    so |sqrt(1+x^2 u^2)| >= sqrt(1-rho) and its real part is >= sqrt((1-rho)/2);
    hence |1 + sqrt(1 + x^2 u^2)| >= 1 + sqrt((1-rho)/2).
    """
    rho = x * x * r * r
    if rho >= 1:
        raise ValueError("envelope requires x*r < 1")
    dlow = 1 + mp.sqrt((1 - rho) / 2)
    return mp.pi * x * x * r / dlow, rho


def even_tail_remainder(menv, r, L: int, first_power: int, prec: int) -> mpf:
    """Bound on sum_{l>L} of the discarded part of an even expansion.

    If |t(u)| <= menv on |u| = r then Cauchy gives |c_j| <= menv / r^j, and for
    an even function the discarded terms start at u^first_power, so
    |remainder(1/l)| <= menv (1/(l r))^p / (1 - 1/(L r)^2). Summing over l > L
    uses the Euler-Maclaurin tail of l^(-p).
    """
    kappa = 1 / (mpf(L) * r)
    if kappa >= 1:
        raise ValueError("even_tail_remainder requires L*r > 1")
    z_val, z_err = hurwitz_tail(first_power, L + 1, prec)
    return menv / (1 - kappa * kappa) * r ** (-first_power) * (z_val + z_err)


def mixed_tail_remainder(menv, r, L: int, first_power: int, prec: int) -> mpf:
    """Like even_tail_remainder, but for a series with terms of both parities:
    the discarded powers start at u^first_power and step by one, giving the
    geometric factor 1/(1 - kappa) instead of 1/(1 - kappa^2)."""
    kappa = 1 / (mpf(L) * r)
    if kappa >= 1:
        raise ValueError("mixed_tail_remainder requires L*r > 1")
    z_val, z_err = hurwitz_tail(first_power, L + 1, prec)
    return menv / (1 - kappa) * r ** (-first_power) * (z_val + z_err)


def clausen_cos(s: int, theta, prec: int) -> mpf:
    """sum_{l>=1} cos(l theta)/l^s; the s = 1 case is the elementary log form."""
    with workprec(prec):
        theta = to_mpf(theta)
        if s == 1:
            return -mp.log(2 * mp.sin(theta / 2))
        return mp.clcos(s, theta)
