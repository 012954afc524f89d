"""Exception types raised across the package."""


class DaemonicError(ValueError):
    """Base class for every error raised by this package."""


class NonHermitianInput(DaemonicError):
    pass


class DimensionMismatch(DaemonicError):
    pass


class InvalidState(DaemonicError):
    """A matrix failed density-matrix validation.

    ``reason`` is one of ``"shape"``, ``"hermiticity"``, ``"trace"`` or
    ``"positivity"``.
    """

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__(f"invalid state ({reason}){': ' + detail if detail else ''}")


class InvalidProbabilityTable(DaemonicError):
    pass


class ParameterOutOfRange(DaemonicError):
    pass


class NotCPTP(DaemonicError):
    pass


class DegenerateOutcome(DaemonicError):
    pass


class ConsistencyError(RuntimeError):
    """Internal numerical consistency check failed (e.g. a clearly negative gain)."""
