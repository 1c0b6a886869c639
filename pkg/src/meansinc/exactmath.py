"""Exact rational arithmetic: Bernoulli numbers, even-argument zeta values, double factorials.

Everything in this module is computed over ``fractions.Fraction``; no floating point
ever enters. That exactness is load-bearing: the series-cancellation prover consumes
these values and must distinguish "exactly zero" from "small".

Conventions:
  * B_1 = -1/2 (the recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0 fixes this).
  * zeta at a positive even argument 2m is represented by the rational c with
    zeta(2m) = c * pi^(2m); pi itself is never a stored constant here.
  * zeta at negative even arguments is exactly 0 (trivial zeros).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod

Rational = Fraction

__all__ = [
    "Rational",
    "BernoulliTable",
    "ZetaEvenValue",
    "bernoulli",
    "zeta_even_pi_coeff",
    "double_factorial",
]


@dataclass
class BernoulliTable:
    """Memo table of B_0..B_n, grown on demand, safe for concurrent readers."""

    values: list[Fraction] = field(default_factory=lambda: [Fraction(1)])
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def extend_to(self, n: int) -> None:
        with self._lock:
            while len(self.values) <= n:
                m = len(self.values)
                # sum_{j=0}^{m} C(m+1, j) B_j = 0  for m >= 1
                acc = sum(comb(m + 1, j) * self.values[j] for j in range(m))
                self.values.append(-acc / (m + 1))

    def __getitem__(self, n: int) -> Fraction:
        self.extend_to(n)
        return self.values[n]


@dataclass(frozen=True)
class ZetaEvenValue:
    """zeta(s) for even s, as the rational coefficient of pi^s (0 for even s < 0)."""

    argument: int
    pi_coefficient: Fraction


_BERNOULLI = BernoulliTable()


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n as an exact Fraction, convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    return _BERNOULLI[n]


def zeta_even_pi_coeff(s: int) -> Fraction:
    """Rational c with zeta(s) = c * pi^s for even s >= 2; exactly 0 for even s < 0.

    Uses zeta(2m) = (-1)^(m+1) B_{2m} (2 pi)^(2m) / (2 (2m)!). The argument s = 0
    is rejected: no in-scope expansion needs it, and silently returning zeta(0)
    would break the pi-grading.
    """
    if s % 2 != 0:
        raise ValueError(f"zeta_even_pi_coeff requires an even argument, got {s}")
    if s == 0:
        raise ValueError("zeta_even_pi_coeff is undefined at s = 0")
    if s < 0:
        return Fraction(0)
    m = s // 2
    sign = -1 if m % 2 == 0 else 1
    return Fraction(sign * 2**s, 2 * factorial(s)) * bernoulli(s)


def double_factorial(k: int) -> int:
    """k!! = k (k-2) (k-4) ... down to 2 or 1, with (-1)!! = 0!! = 1."""
    if k < -1:
        raise ValueError("double factorial requires k >= -1")
    if k <= 0:
        return 1
    return prod(range(k, 0, -2))
