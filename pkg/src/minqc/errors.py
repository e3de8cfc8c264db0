"""Exception types raised across the package."""


class NonUnitaryArgument(ValueError):
    """A matrix argument that must be unitary is not."""


class NonHermitianInput(ValueError):
    """A matrix argument that must be Hermitian is not."""


class DimensionMismatch(ValueError):
    """Operands have incompatible dimensions."""


class BadTargets(ValueError):
    """Gate application targets are out of range, repeated, or wrongly sized."""


class FactorizationFailure(RuntimeError):
    """An ancilla failed to decouple where the algebra guarantees it should.

    Indicates a convention bug (tensor-slot ordering), not a mathematical
    possibility for the constructions in this package.
    """


class SearchExhausted(RuntimeError):
    """Word search hit its depth bound without meeting the target accuracy."""


class ScheduleInvalid(ValueError):
    """A schedule violates its structural invariants."""


class ScheduleParseError(ScheduleInvalid):
    """A schedule file could not be parsed; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class AncillaEntangledAtExit(RuntimeError):
    """An ancilla exited a schedule still correlated with the register."""
