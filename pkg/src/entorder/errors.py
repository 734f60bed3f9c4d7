"""Exception hierarchy shared by all entorder modules."""


class EntanglementError(Exception):
    """Base class for every error raised by entorder."""


class InvalidMatrix(EntanglementError, ValueError):
    """Wrong shape or non-finite entries."""


class NonHermitianInput(EntanglementError, ValueError):
    pass


class NoConvergence(EntanglementError, ArithmeticError):
    pass


class NegativeEigenvalue(EntanglementError, ValueError):
    pass


class RootFindingFailure(EntanglementError, ArithmeticError):
    pass


class ZeroVector(EntanglementError, ValueError):
    pass


class ParamOutOfRange(EntanglementError, ValueError):
    pass


class InvalidState(EntanglementError, ValueError):
    """A matrix failed a density-matrix invariant (Hermitian, unit trace, PSD)."""

    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        msg = f"density matrix invariant violated: {invariant}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotOrthogonal(EntanglementError, ValueError):
    pass


class NotSeparable(EntanglementError, ValueError):
    pass


class ConsistencyError(EntanglementError, ArithmeticError):
    """A computed measure left its admissible range by more than roundoff."""


class BandViolation(EntanglementError, ValueError):
    """A (C, N) point lies outside the allowed concurrence/negativity band."""
