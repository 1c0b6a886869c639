"""Exact power-series verification that the squared-sine sum collapses to its
leading term.

Everything here is Fraction arithmetic over a graded ring: a monomial carries a
power of pi, a power of x^2, and a power of 1/l^2, and pi is never evaluated
numerically. Expanding sin^2(phi_l/2) with phi_l = pi(sqrt(l^2+x^2) - l) in
powers of x^2 gives, at x^(2n), a polynomial in 1/l^2; summing over l >= 1
replaces each l^(-s) by zeta(s), whose even values are rational multiples of
pi^s, keeping the grading pi_power + inv_l_power = 2n homogeneous. Added to
the series of sin^2(pi x/2), every coefficient beyond x^2 cancels exactly,
which is the series-level statement that the full sum equals pi^2 x^2/4.

Also here: the exact Bernoulli-number identity behind that cancellation, the
odd-factorial identity that closes it, and a numeric consistency check of the
operator expansion of sinc(pi sqrt(l^2+x^2)) in scaled half-integer Bessel
values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from mpmath import mp, mpf, workprec

from .exactmath import Rational, bernoulli, double_factorial, zeta_even_pi_coeff
from .specfun import DEFAULT_PRECISION_BITS, _rounded, bessel_j_half, sinc, to_mpf

__all__ = [
    "PiSeries",
    "SummandCoefficient",
    "CancellationReport",
    "sin_sq_half_series",
    "summand_series",
    "zeta_map",
    "id2_cancellation",
    "a5_sides",
    "a5_check",
    "a6_sides",
    "a6_factorial_identity",
    "a3_numeric_consistency",
]


@dataclass(frozen=True)
class PiSeries:
    """Truncated even series sum_{n=1}^{order} coeffs[n-1] * pi^(2n) * x^(2n).

    Exact rational coefficients; the pi-power always matches the x-power, so a
    single coefficient sequence suffices.
    """

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("PiSeries order must be >= 1")
        if len(self.coeffs) != self.order:
            raise ValueError("coefficient count must equal order")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def __add__(self, other: "PiSeries") -> "PiSeries":
        order = max(self.order, other.order)
        out = [Fraction(0)] * order
        for series in (self, other):
            for i, c in enumerate(series.coeffs):
                out[i] += c
        return PiSeries(order, tuple(out))

    def __mul__(self, other: "PiSeries") -> "PiSeries":
        # grading: (pi^2 x^2)^a * (pi^2 x^2)^b lands at index a+b
        order = self.order + other.order
        out = [Fraction(0)] * order
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j + 1] += a * b
        return PiSeries(order, tuple(out))

    def coefficient(self, n: int) -> Fraction:
        """Coefficient of pi^(2n) x^(2n); zero beyond the truncation order."""
        if n < 1:
            raise ValueError("n must be >= 1")
        return self.coeffs[n - 1] if n <= self.order else Fraction(0)


@dataclass(frozen=True)
class SummandCoefficient:
    """Coefficient of x^(2n) in the expansion of sin^2(phi_l/2).

    terms maps (pi_power, inv_l_power) -> rational coefficient; both powers are
    even and sum to 2n (checked on construction). Convergence of the l-sum
    additionally needs inv_l_power >= 2, which the producing expansion
    guarantees; assert_convergent enforces it.
    """

    n: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        for (pi_power, inv_l_power), value in self.terms.items():
            if pi_power % 2 or inv_l_power % 2:
                raise ValueError("powers must be even")
            if pi_power + inv_l_power != 2 * self.n:
                raise ValueError(
                    f"grading violated at x^{2*self.n}: pi^{pi_power} l^-{inv_l_power}"
                )
            if not isinstance(value, (Fraction, int)):
                raise ValueError("coefficients must be exact rationals")

    def assert_convergent(self):
        """Hard check that every l-power actually gives a convergent sum."""
        for (_, inv_l_power) in self.terms:
            assert inv_l_power >= 2, (
                f"x^{2*self.n} term carries l^{-inv_l_power}: divergent sum over l"
            )
        return self

    def evaluate(self, l: int, prec: int = DEFAULT_PRECISION_BITS) -> mpf:
        """Numeric value of this x^(2n) coefficient at a concrete l."""
        with workprec(prec + 16):
            total = mpf(0)
            for (pi_power, inv_l_power), value in self.terms.items():
                total += to_mpf(Fraction(value)) * mp.pi**pi_power / mpf(l) ** inv_l_power
        return _rounded(total, prec)


@dataclass(frozen=True)
class CancellationReport:
    """Outcome of the order-N cancellation check.

    negative_zeta_uses counts summand entries that needed the zeta(-2m) = 0
    rule; the convergent pipeline is expected to never exercise it.
    """

    order: int
    coefficient_of_x2: Fraction
    residuals: tuple
    all_cancelled: bool
    negative_zeta_uses: int = 0


def sin_sq_half_series(N: int) -> PiSeries:
    """Series of sin^2(pi x/2): coefficient of pi^(2n) x^(2n) is (-1)^(n+1)/(2 (2n)!)."""
    if N < 1:
        raise ValueError("sin_sq_half_series requires N >= 1")
    coeffs = tuple(
        Fraction((-1) ** (n + 1), 2 * factorial(2 * n)) for n in range(1, N + 1)
    )
    return PiSeries(N, coeffs)


def _binomial_half_coeffs(N: int) -> list:
    # C(1/2, m) for m = 0..N: coefficients of (1+w)^(1/2)
    out = [Fraction(1)]
    for m in range(1, N + 1):
        out.append(out[-1] * (Fraction(1, 2) - (m - 1)) / m)
    return out


def _trunc_mul(a: list, b: list, N: int) -> list:
    out = [Fraction(0)] * (N + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > N:
            continue
        for j in range(min(len(b), N + 1 - i)):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def summand_series(N: int):
    """Exact x^(2n) coefficients, n = 2..N, of sin^2(phi_l/2) as graded polynomials.

    phi_l = pi l W(x^2/l^2) with W(w) = sum_{m>=1} C(1/2, m) w^m, so
    sin^2(phi_l/2) = sum_{k>=1} (-1)^(k+1) phi_l^(2k) / (2 (2k)!) and the
    x^(2n) coefficient of phi_l^(2k) is pi^(2k) l^(2k-2n) [w^n] W^(2k). Powers
    of W are built by truncated polynomial multiplication; W^(2k) starts at
    w^(2k), so only k <= n/2 contributes and every surviving l-power is <= -2.
    """
    if N < 2:
        raise ValueError("summand_series requires N >= 2")
    w = _binomial_half_coeffs(N)
    w[0] = Fraction(0)  # W has no constant term
    w_sq = _trunc_mul(w, w, N)
    terms_by_n = {n: {} for n in range(2, N + 1)}
    power = [Fraction(1)] + [Fraction(0)] * N  # W^0
    for k in range(1, N // 2 + 1):
        power = _trunc_mul(power, w_sq, N)  # W^(2k)
        scale = Fraction((-1) ** (k + 1), 2 * factorial(2 * k))
        for n in range(max(2, 2 * k), N + 1):
            c = power[n]
            if c:
                terms_by_n[n][(2 * k, 2 * n - 2 * k)] = scale * c
    return [
        SummandCoefficient(n=n, terms=terms_by_n[n]).assert_convergent()
        for n in range(2, N + 1)
    ]


def zeta_map(coeffs) -> PiSeries:
    """Sum each coefficient over l >= 1 (doubled), exactly.

    Each l^(-s) becomes zeta(s): for even s >= 2 the known rational multiple of
    pi^s, for even s < 0 exactly zero (the trivial zeros, covering formally
    divergent sums); the factor 2 accounts for sum over l >= 1 appearing
    doubled in the identity. Grading makes the output homogeneous: the
    contribution of (pi_power, inv_l_power) at x^(2n) lands at pi^(2n).
    """
    coeffs = list(coeffs)
    if not coeffs:
        return PiSeries(1, (Fraction(0),))
    order = max(c.n for c in coeffs)
    out = [Fraction(0)] * order
    for coeff in coeffs:
        for (pi_power, inv_l_power), value in coeff.terms.items():
            if inv_l_power == 0:
                raise ValueError("inv_l_power 0 would need zeta(0); not produced by the expansion")
            out[coeff.n - 1] += 2 * Fraction(value) * zeta_even_pi_coeff(inv_l_power)
    return PiSeries(order, tuple(out))


def id2_cancellation(N: int) -> CancellationReport:
    """Check that the series of the full sum is exactly pi^2 x^2/4 through x^(2N)."""
    if N < 2:
        raise ValueError("id2_cancellation requires N >= 2")
    summand = summand_series(N)
    negative_uses = sum(
        1 for c in summand for (_, inv_l_power) in c.terms if inv_l_power < 0
    )
    total = sin_sq_half_series(N) + zeta_map(summand)
    residuals = tuple(total.coefficient(n) for n in range(2, N + 1))
    return CancellationReport(
        order=N,
        coefficient_of_x2=total.coefficient(1),
        residuals=residuals,
        all_cancelled=all(r == 0 for r in residuals),
        negative_zeta_uses=negative_uses,
    )


def a5_sides(n: int) -> tuple:
    """Both sides of the Bernoulli identity, exactly: (1/(2n+1)!!, rhs).

    rhs = (-2)^(n+1) sum_{k=0}^{n} B_(n+k+1)/(k!(n-k)!(n+k+1)), with B_1 = -1/2;
    the n = 0 case holds only under that convention.
    """
    if n < 0:
        raise ValueError("a5_sides requires n >= 0")
    rhs = Fraction(0)
    for k in range(n + 1):
        rhs += bernoulli(n + k + 1) / (factorial(k) * factorial(n - k) * (n + k + 1))
    rhs *= Fraction(-2) ** (n + 1)
    return Fraction(1, double_factorial(2 * n + 1)), rhs


def a5_check(n: int) -> bool:
    """Exact Bernoulli identity 1/(2n+1)!! = (-2)^(n+1) sum_k B_(n+k+1)/(k!(n-k)!(n+k+1))."""
    lhs, rhs = a5_sides(n)
    return lhs == rhs


def a6_sides(n: int) -> tuple:
    """Both sides of the odd-factorial identity: (n! 2^n (2n+1)!!, (2n+1)!)."""
    if n < 0:
        raise ValueError("a6_sides requires n >= 0")
    return factorial(n) * 2**n * double_factorial(2 * n + 1), factorial(2 * n + 1)


def a6_factorial_identity(n: int) -> bool:
    """Exact integer identity n! 2^n (2n+1)!! = (2n+1)!."""
    lhs, rhs = a6_sides(n)
    return lhs == rhs


def a3_numeric_consistency(
    l: int, x, N: int, prec: int = DEFAULT_PRECISION_BITS
) -> mpf:
    """|sinc(pi sqrt(l^2+x^2)) - its order-N scaled-Bessel expansion|.

    The expansion is sum_{n=1}^{N} ((-pi x^2)^n / (n! 2^n)) l^(-n) (2l)^(-1/2)
    J_{n+1/2}(pi l); the n = 0 term is sinc(pi l) = 0 and is omitted. The
    difference should shrink like x^(2N+2).
    """
    if l < 1:
        raise ValueError("a3_numeric_consistency requires l >= 1")
    if N < 1:
        raise ValueError("a3_numeric_consistency requires N >= 1")
    with workprec(prec + 32):
        xw = to_mpf(x)
        if not 0 < xw < mpf(l) / 2:
            raise ValueError("a3_numeric_consistency requires 0 < x < l/2")
        lhs = sinc(mp.pi * mp.sqrt(l * l + xw * xw), prec + 32)
        z = mp.pi * l
        base = -mp.pi * xw * xw
        total = mpf(0)
        for n in range(1, N + 1):
            coeff = base**n / (factorial(n) * mpf(2) ** n)
            total += coeff * mpf(l) ** (-n) / mp.sqrt(2 * l) * bessel_j_half(n, z, prec + 32)
        diff = abs(lhs - total)
    return _rounded(diff, prec)
