"""Exception types shared across the engine, service and CLI."""


class SkygraphError(Exception):
    """Base class for all errors raised by this package."""


class MalformedRow(SkygraphError):
    """A trajectory log row could not be parsed; the whole file is rejected."""

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class EmptyLog(SkygraphError):
    """A trajectory log contained no data rows."""


class UnknownVertex(SkygraphError):
    """A callsign was queried that is not a vertex of the snapshot."""


class TooFewVertices(SkygraphError):
    """Edge density is undefined for graphs with fewer than two vertices."""


class InvalidParams(SkygraphError):
    """Interdependency or run parameters violate their invariants."""


class InvalidWeights(SkygraphError):
    """Indicator weighting scheme is negative or vanishes on the active set."""


class InvalidBounds(SkygraphError):
    """Sensitivity sweep bounds are empty or inverted."""


class UnknownScenario(SkygraphError):
    """No stored scenario with the requested id."""


class UnknownRun(SkygraphError):
    """No stored run with the requested id."""


class NotReady(SkygraphError):
    """Run artifacts were requested before the run finished."""
