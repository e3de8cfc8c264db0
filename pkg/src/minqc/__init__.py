"""Minimal-control ancilla-mediated quantum computation toolkit.

Two models built on a single fixed register-ancilla interaction plus ancilla
preparation in the computational basis: a dressed controlled-Z interaction
(multiple ancillas per entangling gate, one per single-qubit gate) and a
dressed swap-and-phase interaction (three interactions per entangling gate,
two per single-qubit gate).  Includes the invariant machinery to certify
local equivalence and entangling power, a generator-word synthesizer, a
schedule simulator, and a verification CLI.
"""

from . import catalog, cz_model, gates, hamiltonian, linalg, locequiv, simulator, swap_model, synth
from .errors import (
    AncillaEntangledAtExit,
    BadTargets,
    DimensionMismatch,
    FactorizationFailure,
    NonHermitianInput,
    NonUnitaryArgument,
    ScheduleInvalid,
    ScheduleParseError,
    SearchExhausted,
)

__version__ = "0.1.0"

__all__ = [
    "catalog",
    "cz_model",
    "gates",
    "hamiltonian",
    "linalg",
    "locequiv",
    "simulator",
    "swap_model",
    "synth",
    "AncillaEntangledAtExit",
    "BadTargets",
    "DimensionMismatch",
    "FactorizationFailure",
    "NonHermitianInput",
    "NonUnitaryArgument",
    "ScheduleInvalid",
    "ScheduleParseError",
    "SearchExhausted",
    "__version__",
]
