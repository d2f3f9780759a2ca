"""Exception hierarchy.

Errors split into two families.  Input/usage errors (unsupported root systems,
bad weights, mixed data) derive from :class:`MacdemazError` directly.  Errors
that can only be raised when a proven identity fails to hold numerically
derive from :class:`TheoremViolation`; the CLI maps those to exit code 4.
"""

from __future__ import annotations


class MacdemazError(Exception):
    pass


class UnsupportedType(MacdemazError):
    pass


class TypeLabelError(MacdemazError, ValueError):
    pass


class MixedRootSystem(MacdemazError):
    pass


class NonTermination(MacdemazError):
    pass


class NonIntegralChain(MacdemazError):
    pass


class GridError(MacdemazError):
    """An exponent fell off the q^(1/m) or t^(1/2) grid."""


class AlcoveViolation(MacdemazError):
    pass


class NotDominant(MacdemazError):
    pass


class NotAntidominant(MacdemazError):
    pass


class IndexOutOfRange(MacdemazError, IndexError):
    pass


class NonReducedType(MacdemazError):
    pass


class NegativePairing(MacdemazError):
    pass


class BudgetExceeded(MacdemazError):
    pass


class TheoremViolation(MacdemazError):
    pass


class PositiveExponent(TheoremViolation):
    def __init__(self, mode: str, detail: str = ""):
        self.mode = mode
        super().__init__(f"positive exponent survives {mode} specialization {detail}".strip())


class PositiveTExponent(PositiveExponent):
    def __init__(self, detail: str = ""):
        super().__init__("t-infinity", detail)


class NegativeCoefficient(TheoremViolation):
    pass


class TheoremMismatch(TheoremViolation):
    pass


class InvarianceFailure(TheoremViolation):
    pass
