"""Exception hierarchy.

Every domain error carries a short machine-readable ``name`` which the CLI
copies into its error JSON.
"""


class FoliationError(Exception):
    name = "FoliationError"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        out = {"error": self.name, "message": str(self)}
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(v):
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


class MixedRadicand(FoliationError, ValueError):
    name = "MixedRadicand"


class DivisionByZero(FoliationError, ZeroDivisionError):
    name = "DivisionByZero"


class ScalarSyntaxError(FoliationError, ValueError):
    name = "ScalarSyntaxError"


class Degenerate(FoliationError):
    """Exact coincidence that only happens for non-generic data."""
    name = "Degenerate"


class InvariantViolation(FoliationError):
    """Internal consistency check failed (a bug, not a user error)."""
    name = "InvariantViolation"


class NonTerminating(FoliationError):
    name = "NonTerminating"


class InvalidInstance(FoliationError, ValueError):
    name = "InvalidInstance"


class MeasureMismatch(FoliationError):
    name = "MeasureMismatch"


class UnknownGenerator(FoliationError, ValueError):
    name = "UnknownGenerator"


class CommonPower(FoliationError):
    name = "CommonPower"


class NotCoprime(FoliationError, ValueError):
    name = "NotCoprime"


class NonPositive(FoliationError, ValueError):
    name = "NonPositive"


class CapExceeded(FoliationError):
    name = "CapExceeded"


class ZeroWord(FoliationError):
    name = "ZeroWord"


class ClosedUp(FoliationError):
    name = "ClosedUp"


class InvalidCensus(FoliationError):
    name = "InvalidCensus"


class MaximalOddGenus(InvalidCensus):
    name = "MaximalOddGenus"


class GenusTooSmall(FoliationError, ValueError):
    name = "GenusTooSmall"


class ConservationViolated(FoliationError):
    name = "ConservationViolated"


class WindowExhausted(FoliationError):
    name = "WindowExhausted"


class UnexpectedStreetCount(FoliationError):
    name = "UnexpectedStreetCount"


class UnsupportedKind(FoliationError, ValueError):
    name = "UnsupportedKind"
