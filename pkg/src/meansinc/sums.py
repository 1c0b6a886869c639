"""Evaluators for the alternating mean-argument sums and their closed forms.

Four sum families share one engine (phi_l = pi*(sqrt(l^2+x^2) - l)):

  id1 : sinc(pi x) + 2 sum_{l>=1} (-1)^l sinc(pi sqrt(l^2+x^2))      -> 1
  id2 : sin^2(pi x/2) + 2 sum_{l>=1} sin^2(phi_l/2)                  -> pi^2 x^2 / 4
  b3  : x sum_{l in Z} (-1)^l cos(pi sqrt(l^2+x^2)) / (l^2+x^2)      -> pi/sinh(pi x)
  b4  : x sum_{l in Z} (-1)^l sinc(pi sqrt(l^2+x^2)) / (l^2+x^2)     -> pi/sinh(pi x)

The alternating factor is absorbed exactly: sin(pi sqrt(l^2+x^2)) equals
(-1)^l sin(phi_l), and likewise for the cosine, so each term is computed
without cancellation against its neighbours. The head l <= L is accumulated
directly with guard bits. The tail l > L uses the expansion of the summand in
powers of 1/l^2: retained orders are summed exactly with Euler-Maclaurin power
tails, and the discarded orders are bounded through a Cauchy coefficient
estimate on a circle |u| = r inside the summand's analyticity disk (|u| < 1/x).
Every reported error_bound dominates the true truncation plus roundoff error.

The Bessel sum sum_l (-1)^l l^(-n-1/2) J_{n+1/2}(pi l) is handled separately:
at z = pi*l the spherical Bessel function collapses to its cosine-part
polynomial, making the summand an exact finite combination of powers l^(-n-j),
so the tail beyond the directly summed head is itself an exact power-tail
evaluation rather than an asymptotic approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf, workprec

from .specfun import (
    DEFAULT_PRECISION_BITS,
    _rounded,
    phase_excess,
    sinc,
    spherical_bessel_cos_coeffs,
    to_mpf,
)
from .tails import (
    TruncSeries,
    cos_outer,
    even_tail_remainder,
    hurwitz_tail,
    phase_core_series,
    phase_envelope,
    sin_ratio_outer,
)

__all__ = [
    "SumConfig",
    "SumResult",
    "ConvergenceError",
    "reformulated_summand",
    "id1_rhs",
    "id2_rhs",
    "cos_mean_sum",
    "sinc_mean_sum",
    "bessel_alt_sum",
    "id1_derivative_fd",
]

_GUARD = 32

_FAMILIES = ("id1", "id2", "b3", "b4")

# lowest power of 1/l in each family's tail basis, divided by two
_FIRST_M = {"id1": 1, "id2": 1, "b3": 1, "b4": 2}


@dataclass(frozen=True)
class SumConfig:
    """Evaluation budget shared by all sum evaluators.

    tolerance is absolute, on the returned value; tail_order is the number of
    asymptotic orders kept when rebuilding the tail (0 disables acceleration
    and falls back to integral-test bounds).
    """

    tolerance: float = 1e-12
    max_terms: int = 10**7
    tail_order: int = 6
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be a positive integer")
        if not 0 <= self.tail_order <= 12:
            raise ValueError("tail_order must lie in 0..12")
        if self.precision_bits < 16:
            raise ValueError("precision_bits must be at least 16")


@dataclass(frozen=True)
class SumResult:
    """A sum value with a rigorous absolute error bound.

    method is "tail_accelerated" when asymptotic tail rebuilding contributed,
    "direct" when the head plus an integral-test bound sufficed (or the value
    is exact).
    """

    value: mpf
    error_bound: mpf
    terms_used: int
    method: str


class ConvergenceError(RuntimeError):
    """Requested tolerance was not reached within max_terms.

    The best result achieved (with its honest bound) rides along in .best.
    """

    def __init__(self, message: str, best: SumResult):
        super().__init__(message)
        self.best = best


def _term(family: str, l: int, x2, pi):
    # sign-free l>=1 summand; x2 = x*x at working precision
    d = l * l + x2
    s = mp.sqrt(d)
    phi = pi * x2 / (s + l)
    if family == "id1":
        return mp.sin(phi) / (pi * s)
    if family == "id2":
        return mp.sin(phi / 2) ** 2
    if family == "b3":
        return mp.cos(phi) / d
    return mp.sin(phi) / (pi * s * d)


def reformulated_summand(family: str, l: int, x, prec: int = DEFAULT_PRECISION_BITS) -> mpf:
    """Sign-free l-th term of one of the sum families ("id1", "id2", "b3", "b4").

    Equals the literal alternating term of that family with its (-1)^l factor
    folded into the phase excess; e.g. for "id1" this is sin(phi_l)/(pi
    sqrt(l^2+x^2)) = (-1)^l sinc(pi sqrt(l^2+x^2)). The b3/b4 terms exclude the
    overall factor x and the l=0 term of the bilateral sums.
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if l < 1:
        raise ValueError("reformulated_summand requires l >= 1")
    with workprec(prec + _GUARD):
        xw = to_mpf(x)
        if xw < 0:
            raise ValueError("x must be non-negative")
        value = _term(family, l, xw * xw, mp.pi)
    return _rounded(value, prec)


def _tail_coeffs(family: str, x, order: int) -> list:
    """Coefficients c_m of u^(2m), m = 1..order, of the summand at u = 1/l."""
    if order < 1:
        return []
    a, g = phase_core_series(x, order)
    h = (g * g).shift(1)  # phi^2 = u^2 g(u^2)^2, as a series in v = u^2
    x2 = x * x
    if family == "id1":
        t = g * h.compose_entire(sin_ratio_outer(order)) * a.recip() * (1 / mp.pi)
        return [t.coeffs[m - 1] for m in range(1, order + 1)]
    if family == "id2":
        t = (1 - h.compose_entire(cos_outer(order))) * (mpf(1) / 2)
        return [t.coeffs[m] for m in range(1, order + 1)]
    rational = TruncSeries([mpf(1), x2], order).recip()  # 1/(1 + x^2 v)
    if family == "b3":
        t = h.compose_entire(cos_outer(order)) * rational
        return [t.coeffs[m - 1] for m in range(1, order + 1)]
    t = g * h.compose_entire(sin_ratio_outer(order)) * a.recip() * rational * (1 / mp.pi)
    return [mpf(0) if m < 2 else t.coeffs[m - 2] for m in range(1, order + 1)]


def _envelope(family: str, x, r):
    """max of |summand(u)| on the circle |u| = r, for the Cauchy estimate."""
    phi_max, rho = phase_envelope(x, r)
    root = mp.sqrt(1 - rho)
    if family == "id1":
        return r * mp.sinh(phi_max) / (mp.pi * root)
    if family == "id2":
        return mp.sinh(phi_max / 2) ** 2
    if family == "b3":
        return mp.cosh(phi_max) * r * r / (1 - rho)
    return mp.sinh(phi_max) * r**3 / (mp.pi * root * (1 - rho))


def _integral_tail_bound(family: str, x2, L: int):
    # |term_l| is dominated by a monotone power law for every l >= 1:
    # phi_l <= pi x^2/(2l) and |sin phi| <= phi, |cos phi| <= 1
    Lf = mpf(L)
    if family == "id1":
        return x2 / (2 * Lf)
    if family == "id2":
        return mp.pi**2 * x2 * x2 / (16 * Lf)
    if family == "b3":
        return 1 / Lf
    return x2 / (6 * Lf**3)


def _sum_part(family: str, xw, tol_part, cfg: SumConfig, prec_work: int):
    """Evaluate S = sum_{l>=1} term_l with a rigorous bound, at work precision.

    Returns (value, bound, terms_used, method). The head length L is chosen on
    a doubling ladder using the cheapest bound candidate; the final bound takes
    the best (smallest) candidate among tail orders m <= cfg.tail_order, with
    the tail value rebuilt to exactly that order so value and bound agree.
    """
    x2 = xw * xw
    order = cfg.tail_order
    r = min(1 / (2 * xw), mpf(1) / 4)
    menv = _envelope(family, xw, r) if order >= 1 else None
    target = tol_part / 2

    def cheap_candidate(L):
        best = _integral_tail_bound(family, x2, L)
        if order >= 1 and mpf(L) * r >= 2:
            best = min(best, even_tail_remainder(menv, r, L, 2 * order + 2, prec_work))
        return best

    L = min(64, cfg.max_terms)
    while cheap_candidate(L) > target and 2 * L <= cfg.max_terms:
        L *= 2

    # head: direct sign-free accumulation
    head = mpf(0)
    abs_sum = mpf(0)
    pi = +mp.pi
    for l in range(1, L + 1):
        t = _term(family, l, x2, pi)
        head += t
        abs_sum += abs(t)

    # tail candidates: m = 0 is the integral test, m >= 1 keeps m asymptotic
    # orders exactly and bounds the rest via the Cauchy estimate
    candidates = [(_integral_tail_bound(family, x2, L), 0)]
    zeta_tails = []
    if order >= 1 and mpf(L) * r >= 2:
        coeffs = _tail_coeffs(family, xw, order)
        zerr_cum = mpf(0)
        for m in range(1, order + 1):
            zval, zerr = hurwitz_tail(2 * m, L + 1, prec_work)
            zeta_tails.append(zval)
            zerr_cum += abs(coeffs[m - 1]) * zerr
            remainder = even_tail_remainder(menv, r, L, 2 * m + 2, prec_work)
            candidates.append((remainder + zerr_cum, m))
    bound, m_star = min(candidates, key=lambda c: (c[0], c[1]))
    value = head
    if m_star >= 1:
        for m in range(1, m_star + 1):
            value += coeffs[m - 1] * zeta_tails[m - 1]
    # accumulation roundoff: every head term and tail term is formed from O(1)
    # operations at prec_work bits
    slop = 8 * (L + order + 2) * (abs_sum + abs(value)) * mpf(2) ** (-prec_work)
    method = "tail_accelerated" if m_star >= 1 else "direct"
    return value, bound + slop, L, method


def _finish(value, bound, terms: int, method: str, tol, prec: int, what: str) -> SumResult:
    # the returned value is rounded to prec bits, so grant it one final ulp
    bound = bound + abs(value) * mpf(2) ** (1 - prec)
    result = SumResult(
        value=_rounded(value, prec),
        error_bound=_rounded(bound * (1 + mpf(2) ** (8 - prec)), prec),
        terms_used=terms,
        method=method,
    )
    if not result.error_bound <= tol:
        raise ConvergenceError(
            f"{what}: error bound {mp.nstr(result.error_bound, 8)} exceeds "
            f"tolerance {mp.nstr(to_mpf(tol), 8)} within max_terms",
            result,
        )
    return result


def id1_rhs(x, cfg: SumConfig | None = None) -> SumResult:
    """sinc(pi x) + 2 sum_{l>=1} (-1)^l sinc(pi sqrt(l^2+x^2)); equals 1 for all x."""
    cfg = cfg or SumConfig()
    prec = cfg.precision_bits
    with workprec(prec + _GUARD):
        xw = to_mpf(x)
        if xw < 0:
            raise ValueError("id1_rhs requires x >= 0")
        tol = to_mpf(cfg.tolerance)
        if xw == 0:
            return SumResult(mpf(1), mpf(0), 0, "direct")
        lead = sinc(mp.pi * xw, prec + _GUARD)
        s, bound, terms, method = _sum_part("id1", xw, tol / 4, cfg, prec + _GUARD)
        value = lead + 2 * s
        err = 2 * bound + 8 * (abs(lead) + abs(value)) * mpf(2) ** (-(prec + _GUARD))
        return _finish(value, err, terms, method, tol, prec, "id1_rhs")


def id2_rhs(x, cfg: SumConfig | None = None) -> SumResult:
    """sin^2(pi x/2) + 2 sum_{l>=1} sin^2(phi_l/2); equals pi^2 x^2/4."""
    cfg = cfg or SumConfig()
    prec = cfg.precision_bits
    with workprec(prec + _GUARD):
        xw = to_mpf(x)
        if xw < 0:
            raise ValueError("id2_rhs requires x >= 0")
        tol = to_mpf(cfg.tolerance)
        if xw == 0:
            return SumResult(mpf(0), mpf(0), 0, "direct")
        lead = mp.sin(mp.pi * xw / 2) ** 2
        s, bound, terms, method = _sum_part("id2", xw, tol / 4, cfg, prec + _GUARD)
        value = lead + 2 * s
        err = 2 * bound + 8 * (abs(lead) + abs(value)) * mpf(2) ** (-(prec + _GUARD))
        return _finish(value, err, terms, method, tol, prec, "id2_rhs")


def _bilateral(family: str, x, cfg: SumConfig, what: str) -> SumResult:
    cfg = cfg or SumConfig()
    prec = cfg.precision_bits
    with workprec(prec + _GUARD):
        xw = to_mpf(x)
        if not xw > 0:
            raise ValueError(f"{what} requires x > 0 (the l=0 term diverges at x=0)")
        tol = to_mpf(cfg.tolerance)
        pix = mp.pi * xw
        if family == "b3":
            lead = mp.cos(pix) / xw  # x * cos(pi x)/x^2
        else:
            lead = sinc(pix, prec + _GUARD) / xw
        s, bound, terms, method = _sum_part(family, xw, tol / (4 * (1 + xw)), cfg, prec + _GUARD)
        value = lead + 2 * xw * s
        err = 2 * xw * bound + 8 * (abs(lead) + abs(value)) * mpf(2) ** (-(prec + _GUARD))
        return _finish(value, err, terms, method, tol, prec, what)


def cos_mean_sum(x, cfg: SumConfig | None = None) -> SumResult:
    """x sum_{l in Z} (-1)^l cos(pi sqrt(l^2+x^2))/(l^2+x^2); equals pi/sinh(pi x)."""
    return _bilateral("b3", x, cfg, "cos_mean_sum")


def sinc_mean_sum(x, cfg: SumConfig | None = None) -> SumResult:
    """x sum_{l in Z} (-1)^l sinc(pi sqrt(l^2+x^2))/(l^2+x^2); equals pi/sinh(pi x)."""
    return _bilateral("b4", x, cfg, "sinc_mean_sum")


def bessel_alt_sum(n: int, cfg: SumConfig | None = None) -> SumResult:
    """sum_{l>=1} (-1)^l l^(-n-1/2) J_{n+1/2}(pi l); equals -pi^n/(sqrt(2)(2n+1)!!).

    With J_{n+1/2}(pi l) = sqrt(2l) j_n(pi l) and j_n(pi l) = (-1)^l B_n(1/(pi l))
    (cosine-part polynomial), the summand is exactly sqrt(2) l^(-n) B_n(1/(pi l)):
    a finite combination of powers l^(-n-j) with n+j even. The head is summed
    directly from that form; the tail is the same combination of exact power
    tails, so the only error is Euler-Maclaurin roundoff.
    """
    cfg = cfg or SumConfig()
    if n < 1:
        raise ValueError("bessel_alt_sum requires n >= 1")
    prec = cfg.precision_bits
    prec_work = prec + _GUARD
    with workprec(prec_work):
        tol = to_mpf(cfg.tolerance)
        poly = spherical_bessel_cos_coeffs(n)
        sqrt2 = mp.sqrt(2)
        L = min(256, cfg.max_terms)
        head = mpf(0)
        abs_sum = mpf(0)
        for l in range(1, L + 1):
            w = 1 / (mp.pi * l)
            b = mpf(0)
            for c in reversed(poly):
                b = b * w + c
            t = sqrt2 * b / mpf(l) ** n
            head += t
            abs_sum += abs(t)
        tail = mpf(0)
        err = mpf(0)
        for j, c in enumerate(poly):
            if c == 0:
                continue
            zval, zerr = hurwitz_tail(n + j, L + 1, prec_work)
            scale = sqrt2 * abs(c) * mp.pi ** (-j)
            tail += sqrt2 * c * mp.pi ** (-j) * zval
            err += scale * zerr
        value = head + tail
        err += 8 * (L + n + 2) * (abs_sum + abs(value)) * mpf(2) ** (-prec_work)
        return _finish(value, err, L, "tail_accelerated", tol, prec, f"bessel_alt_sum(n={n})")


def id1_derivative_fd(x, h, cfg: SumConfig | None = None) -> mpf:
    """Central difference (id1_rhs(x+h) - id1_rhs(x-h)) / (2h).

    The underlying function is identically 1, so this measures 0 up to the two
    evaluation bounds divided by 2h plus curvature of order h^2 (both zero in
    exact arithmetic).
    """
    cfg = cfg or SumConfig()
    prec = cfg.precision_bits
    with workprec(prec + _GUARD):
        xw = to_mpf(x)
        hw = to_mpf(h)
        if not (hw > 0 and hw < xw / 4):
            raise ValueError("id1_derivative_fd requires 0 < h < x/4")
        plus = id1_rhs(xw + hw, cfg)
        minus = id1_rhs(xw - hw, cfg)
        fd = (plus.value - minus.value) / (2 * hw)
    return _rounded(fd, prec)
