"""Machine-readable verification reports.

Numbers are serialized as decimal strings with enough digits to round-trip the
working precision; native JSON floats would silently truncate 256-bit values.
The JSON field is named "pass" (a Python keyword), so the dataclass attribute
is ``passed`` and the serializer renames it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from mpmath import mp, workprec

from .specfun import DEFAULT_PRECISION_BITS, to_mpf

__all__ = ["VerificationReport", "decimal_str", "build_report"]


def decimal_str(value, prec: int = DEFAULT_PRECISION_BITS) -> str:
    """Decimal rendering of a real value with ~prec bits worth of digits."""
    with workprec(prec):
        return mp.nstr(+to_mpf(value), max(8, int(prec * 0.30103) + 3))


@dataclass(frozen=True)
class VerificationReport:
    """One check: computed vs expected with the bound that justifies the verdict."""

    check_name: str
    inputs: dict
    computed: str
    expected: str
    abs_error: str
    error_bound: str
    passed: bool
    terms_used: int
    elapsed_ms: int

    def to_json(self) -> str:
        payload = {
            "check_name": self.check_name,
            "inputs": self.inputs,
            "computed": self.computed,
            "expected": self.expected,
            "abs_error": self.abs_error,
            "error_bound": self.error_bound,
            "pass": self.passed,
            "terms_used": self.terms_used,
            "elapsed_ms": self.elapsed_ms,
        }
        return json.dumps(payload)


def build_report(
    check_name: str,
    inputs: dict,
    computed,
    expected,
    error_bound,
    tolerance,
    terms_used: int,
    elapsed_ms: int,
    prec: int = DEFAULT_PRECISION_BITS,
) -> VerificationReport:
    """Assemble a report; pass iff |computed - expected| <= max(bound, tolerance)."""
    with workprec(prec + 16):
        computed_w = to_mpf(computed)
        expected_w = to_mpf(expected)
        bound_w = to_mpf(error_bound)
        abs_error = abs(computed_w - expected_w)
        passed = bool(abs_error <= max(bound_w, to_mpf(tolerance)))
    return VerificationReport(
        check_name=check_name,
        inputs=inputs,
        computed=decimal_str(computed_w, prec),
        expected=decimal_str(expected_w, prec),
        abs_error=decimal_str(abs_error, prec),
        error_bound=decimal_str(bound_w, prec),
        passed=passed,
        terms_used=terms_used,
        elapsed_ms=elapsed_ms,
    )
