"""Execute minimal-control schedules on explicit statevectors.

A schedule is a sequence of two-qubit interactions, each touching exactly one
register qubit and one ancilla; ancillas are prepared once in a computational
basis state and never operated on directly.  Ancillas attach to the live
statevector at first use and are factored out (with a purity check) right
after their last use, so the live dimension stays at
2^(register_size + concurrently live ancillas).

Text format, one directive per line ('#' starts a comment):

    REGISTER <n>
    PREP <ancilla> <bit>
    INT <interaction> <register_qubit> <ancilla>

PREP must precede the ancilla's first INT.  Serialization is canonical
(REGISTER first, each PREP immediately before the ancilla's first INT), so
round-trips are byte-exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AncillaEntangledAtExit, ScheduleInvalid, ScheduleParseError
from .linalg import StateVec, apply_gate, dist_phase

# Purity-deficit bands: below DECOUPLE_ATOL is clean product form, between the
# two the run proceeds with a warning, above WARN_ATOL the ancilla is declared
# entangled and the run aborts.
DECOUPLE_ATOL = 1e-10
WARN_ATOL = 1e-6


@dataclass(frozen=True)
class Step:
    interaction: str
    register_qubit: int
    ancilla: str


@dataclass
class Schedule:
    register_size: int
    preps: dict[str, int]
    steps: list[Step]
    interactions: dict[str, np.ndarray]

    def validate(self) -> None:
        if self.register_size < 1:
            raise ScheduleInvalid("register must hold at least one qubit")
        used = set()
        for i, step in enumerate(self.steps):
            if step.ancilla not in self.preps:
                raise ScheduleInvalid(f"step {i}: ancilla {step.ancilla!r} never prepared")
            if not (0 <= step.register_qubit < self.register_size):
                raise ScheduleInvalid(
                    f"step {i}: register qubit {step.register_qubit} out of range"
                )
            if step.interaction not in self.interactions:
                raise ScheduleInvalid(f"step {i}: unknown interaction {step.interaction!r}")
            g = self.interactions[step.interaction]
            if g.shape != (4, 4):
                raise ScheduleInvalid(f"interaction {step.interaction!r} is not a 4x4 matrix")
            used.add(step.ancilla)
        for ancilla, bit in self.preps.items():
            if bit not in (0, 1):
                raise ScheduleInvalid(f"ancilla {ancilla!r} prepared in non-bit {bit!r}")
            if ancilla not in used:
                raise ScheduleInvalid(f"ancilla {ancilla!r} prepared but never used")

    def interaction_count(self) -> int:
        return len(self.steps)

    def ancilla_count(self) -> int:
        return len(self.preps)


@dataclass
class RunReport:
    register_unitary: np.ndarray
    ancilla_exit_states: dict[str, np.ndarray]
    purity_deficits: dict[str, float]
    unitarity_residual: float
    warnings: list[str] = field(default_factory=list)
    residuals: dict[str, float] = field(default_factory=dict)


def _basis_bit(bit: int) -> np.ndarray:
    v = np.zeros(2, dtype=complex)
    v[bit] = 1.0
    return v


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    pivot = v[int(np.argmax(np.abs(v)))]
    return v * (abs(pivot) / pivot)


def run(schedule: Schedule, prep_overrides: dict[str, np.ndarray] | None = None) -> RunReport:
    """Simulate the schedule on all register basis inputs.

    Reconstructs the induced register operator column by column; each ancilla
    must exit in the same pure state for every register input (up to the one
    global phase that is factored into the register operator), otherwise
    :class:`AncillaEntangledAtExit` is raised naming the offending step.

    ``prep_overrides`` replaces selected ancillas' computational-basis
    preparations with arbitrary pure states (used to probe preparation
    freedom); overridden ancillas keep their schedule entry otherwise.
    """
    schedule.validate()
    overrides = prep_overrides or {}
    last_use = {step.ancilla: i for i, step in enumerate(schedule.steps)}

    reg_dim = 2**schedule.register_size
    register_unitary = np.empty((reg_dim, reg_dim), dtype=complex)
    exit_states: dict[str, np.ndarray] = {}
    deficits: dict[str, float] = {a: 0.0 for a in schedule.preps}
    warnings: list[str] = []

    for col in range(reg_dim):
        state = StateVec.basis(schedule.register_size, col)
        positions: dict[str, int] = {}

        for i, step in enumerate(schedule.steps):
            if step.ancilla not in positions:
                prep = overrides.get(step.ancilla)
                if prep is None:
                    prep = _basis_bit(schedule.preps[step.ancilla])
                else:
                    prep = np.asarray(prep, dtype=complex).reshape(2)
                    prep = prep / np.linalg.norm(prep)
                positions[step.ancilla] = state.num_qubits
                state = StateVec.from_amplitudes(np.kron(prep, state.amplitudes))
            gate = schedule.interactions[step.interaction]
            state = apply_gate(state, gate, [step.register_qubit, positions[step.ancilla]])

            if last_use[step.ancilla] == i:
                detached_pos = positions.pop(step.ancilla)
                state, chi, own_deficit, ref_deficit = _detach(
                    state, detached_pos, exit_states.get(step.ancilla)
                )
                positions.update(
                    {a: p - 1 for a, p in positions.items() if p > detached_pos}
                )
                if own_deficit >= WARN_ATOL:
                    raise AncillaEntangledAtExit(
                        f"ancilla {step.ancilla!r} exits step {i} entangled with the register "
                        f"(purity deficit {own_deficit:.3e}, register input {col})"
                    )
                if ref_deficit >= WARN_ATOL:
                    raise AncillaEntangledAtExit(
                        f"ancilla {step.ancilla!r} exits step {i} in a different state for "
                        f"register input {col} (residual {ref_deficit:.3e})"
                    )
                deficit = max(own_deficit, ref_deficit)
                if deficit >= DECOUPLE_ATOL:
                    warnings.append(
                        f"ancilla {step.ancilla!r}: purity deficit {deficit:.3e} above clean threshold"
                    )
                deficits[step.ancilla] = max(deficits[step.ancilla], deficit)
                exit_states.setdefault(step.ancilla, chi)

        register_unitary[:, col] = state.amplitudes

    unitarity_residual = float(
        np.linalg.norm(register_unitary.conj().T @ register_unitary - np.eye(reg_dim))
    )
    return RunReport(
        register_unitary=register_unitary,
        ancilla_exit_states=exit_states,
        purity_deficits=deficits,
        unitarity_residual=unitarity_residual,
        warnings=warnings,
    )


def _detach(state: StateVec, position: int, reference: np.ndarray | None):
    """Factor one qubit out of the state.

    Returns (rest, exit_state, own_deficit, ref_deficit): the purity deficit
    of the qubit's reduced state, and the residual against the pinned exit
    state.  The exit state is pinned on the first register column and reused
    for the rest, which both enforces a consistent exit across columns and
    keeps the factored phases coherent so the register operator is well
    defined up to one overall phase.
    """
    n = state.num_qubits
    axis = n - 1 - position
    block = np.moveaxis(state.amplitudes.reshape([2] * n), axis, 0).reshape(2, -1)
    rho = block @ block.conj().T
    evals, evecs = np.linalg.eigh(rho)
    own_deficit = float(max(0.0, 1.0 - evals[-1] / evals.sum()))
    chi = reference if reference is not None else _canonical_phase(evecs[:, -1])
    rest = chi.conj() @ block
    ref_deficit = float(max(0.0, 1.0 - np.linalg.norm(rest) ** 2 / evals.sum()))
    return StateVec.from_amplitudes(rest), chi, own_deficit, ref_deficit


def verify_against(report: RunReport, claimed: np.ndarray, tol: float, label: str = "claimed") -> bool:
    """Phase-insensitive comparison of the induced register operator."""
    claimed = np.asarray(claimed, dtype=complex)
    residual = dist_phase(report.register_unitary, claimed)
    report.residuals[label] = residual
    return residual < tol


def schedule_to_text(schedule: Schedule) -> str:
    """Canonical text form: REGISTER, then steps with PREP at first use."""
    lines = [f"REGISTER {schedule.register_size}"]
    prepped: set[str] = set()
    for step in schedule.steps:
        if step.ancilla not in prepped:
            prepped.add(step.ancilla)
            lines.append(f"PREP {step.ancilla} {schedule.preps[step.ancilla]}")
        lines.append(f"INT {step.interaction} {step.register_qubit} {step.ancilla}")
    return "\n".join(lines) + "\n"


def schedule_from_text(text: str, interactions: dict[str, np.ndarray]) -> Schedule:
    """Parse the line format; raises :class:`ScheduleParseError` with a line number."""
    register_size: int | None = None
    preps: dict[str, int] = {}
    steps: list[Step] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "REGISTER":
            if register_size is not None:
                raise ScheduleParseError(line_no, "duplicate REGISTER directive")
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ScheduleParseError(line_no, "expected: REGISTER <positive int>")
            register_size = int(tokens[1])
        elif kind == "PREP":
            if len(tokens) != 3 or tokens[2] not in ("0", "1"):
                raise ScheduleParseError(line_no, "expected: PREP <ancilla> <0|1>")
            if tokens[1] in preps:
                raise ScheduleParseError(line_no, f"ancilla {tokens[1]!r} prepared twice")
            preps[tokens[1]] = int(tokens[2])
        elif kind == "INT":
            if len(tokens) != 4:
                raise ScheduleParseError(line_no, "expected: INT <name> <register_qubit> <ancilla>")
            name, qubit_str, ancilla = tokens[1], tokens[2], tokens[3]
            try:
                qubit = int(qubit_str)
            except ValueError:
                raise ScheduleParseError(line_no, f"register qubit {qubit_str!r} is not an integer")
            if ancilla not in preps:
                raise ScheduleParseError(line_no, f"ancilla {ancilla!r} used before PREP")
            if name not in interactions:
                raise ScheduleParseError(line_no, f"unknown interaction {name!r}")
            steps.append(Step(name, qubit, ancilla))
        else:
            raise ScheduleParseError(line_no, f"unknown directive {kind!r}")
    if not steps:
        if register_size is None:
            raise ScheduleParseError(0, "empty schedule")
    if register_size is None:
        register_size = max(s.register_qubit for s in steps) + 1
    schedule = Schedule(register_size, preps, steps, dict(interactions))
    schedule.validate()
    return schedule
