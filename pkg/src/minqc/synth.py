"""Single-qubit generator analysis and gate-word synthesis.

A word over a two-element generator set lists generator indices in
*application order*: the word (k1, ..., kn) denotes the operator product
g_{kn} ... g_{k1}, i.e. k1 acts first.  Products are compared to targets up
to global phase throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SearchExhausted
from .linalg import dist_phase, require_unitary

PLAUSIBLY_UNIVERSAL = "plausibly-universal"
NOT_UNIVERSAL = "not-universal"
INCONCLUSIVE = "inconclusive"

RATIONAL_ANGLE_ATOL = 1e-9
RATIONAL_ANGLE_MAX_DEN = 64
AXIS_PARALLEL_ATOL = 1e-6
_WITNESS_DEPTH = 6

DEFAULT_MAX_WORD_LEN = 24


@dataclass(frozen=True)
class AxisAngle:
    """Rotation form of a 2x2 unitary: e^{i global_phase} e^{i phi (axis . sigma)}.

    phi is reduced to [0, pi/2] by the sign of the SU(2) representative; when
    sin(phi) vanishes the axis is undefined and reported as +z with
    ``degenerate`` set.
    """

    phi: float
    axis: np.ndarray
    global_phase: float
    degenerate: bool


def _su2_representative(g: np.ndarray) -> tuple[np.ndarray, float]:
    """Normalize det to 1 and pick the branch with non-negative real trace."""
    det = np.linalg.det(g)
    su = g / np.sqrt(det)
    phase = np.trace(g @ su.conj().T) / 2
    if np.real(np.trace(su)) < 0:
        su = -su
        phase = -phase
    return su, float(np.angle(phase))


def axis_angle(g: np.ndarray) -> AxisAngle:
    """Extract the rotation angle and unit axis of a 2x2 unitary."""
    g = require_unitary(g, "g")
    su, global_phase = _su2_representative(g)
    cos_phi = float(np.clip(np.real(su[0, 0] + su[1, 1]) / 2, -1.0, 1.0))
    phi = float(np.arccos(cos_phi))
    sin_phi = np.sin(phi)
    if sin_phi < 1e-9:
        return AxisAngle(phi, np.array([0.0, 0.0, 1.0]), global_phase, True)
    axis = np.array(
        [
            np.imag(su[0, 1] + su[1, 0]) / 2,
            np.real(su[0, 1] - su[1, 0]) / 2,
            np.imag(su[0, 0] - su[1, 1]) / 2,
        ]
    ) / sin_phi
    return AxisAngle(phi, axis / np.linalg.norm(axis), global_phase, False)


def from_axis_angle(aa: AxisAngle) -> np.ndarray:
    """Rebuild the matrix from its axis-angle form (inverse of :func:`axis_angle`)."""
    nx, ny, nz = aa.axis
    pauli_part = np.array([[nz, nx - 1j * ny], [nx + 1j * ny, -nz]], dtype=complex)
    su = np.cos(aa.phi) * np.eye(2) + 1j * np.sin(aa.phi) * pauli_part
    return np.exp(1j * aa.global_phase) * su


def _quaternion(g: np.ndarray) -> np.ndarray:
    """Projective unit quaternion (w, x, y, z) of a 2x2 unitary, sign-canonical."""
    su, _ = _su2_representative(g)
    q = np.array(
        [
            np.real(su[0, 0] + su[1, 1]) / 2,
            np.imag(su[0, 1] + su[1, 0]) / 2,
            np.real(su[0, 1] - su[1, 0]) / 2,
            np.imag(su[0, 0] - su[1, 1]) / 2,
        ]
    )
    for c in q:
        if abs(c) > 1e-9:
            if c < 0:
                q = -q
            break
    return q


def best_rational(x: float, max_den: int = RATIONAL_ANGLE_MAX_DEN) -> tuple[Fraction, float]:
    frac = Fraction(x).limit_denominator(max_den)
    return frac, abs(x - float(frac))


def _classify_angle_fraction(x: float) -> str:
    _, err = best_rational(x)
    if err < RATIONAL_ANGLE_ATOL:
        return "rational"
    if err < 10 * RATIONAL_ANGLE_ATOL:
        return "boundary"
    return "irrational"


@dataclass(frozen=True)
class UniversalityReport:
    """Outcome of the two-generator universality heuristic.

    phi_plus / phi_minus are the rotation angles of g0 g1 and g1 g0;
    axis_angle_between is the angle between the lines spanned by their axes.
    rational_angle_flag is set when either product angle over pi matches a
    rational with denominator <= 64.
    """

    phi0: float
    phi1: float
    phi_plus: float
    phi_minus: float
    axis_angle_between: float
    rational_angle_flag: bool
    verdict: str


def _line_angle(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.arccos(np.clip(abs(np.dot(a, b)), 0.0, 1.0)))


def universality_diagnostic(g0: np.ndarray, g1: np.ndarray) -> UniversalityReport:
    """Heuristic verdict on whether words over {g0, g1} are dense in SU(2).

    A pair of rotations with angles that are plausibly irrational multiples
    of pi about non-parallel axes certifies density.  The two generator
    products are tried first; if they fail (their angles can be rational even
    for universal pairs), all words up to a small depth are scanned for such
    a witness pair.  Commuting generators share an axis and are rejected
    outright.
    """
    g0 = require_unitary(g0, "g0")
    g1 = require_unitary(g1, "g1")
    plus = axis_angle(g0 @ g1)
    minus = axis_angle(g1 @ g0)
    between = _line_angle(plus.axis, minus.axis) if not (plus.degenerate or minus.degenerate) else 0.0
    kinds = (_classify_angle_fraction(plus.phi / np.pi), _classify_angle_fraction(minus.phi / np.pi))
    report = dict(
        phi0=axis_angle(g0).phi,
        phi1=axis_angle(g1).phi,
        phi_plus=plus.phi,
        phi_minus=minus.phi,
        axis_angle_between=between,
        rational_angle_flag="rational" in kinds,
    )

    if np.linalg.norm(g0 @ g1 - g1 @ g0) < 1e-10:
        return UniversalityReport(verdict=NOT_UNIVERSAL, **report)

    if kinds == ("irrational", "irrational") and not plus.degenerate and not minus.degenerate \
            and between > AXIS_PARALLEL_ATOL:
        return UniversalityReport(verdict=PLAUSIBLY_UNIVERSAL, **report)

    # Fallback witness scan over short words (includes the generators themselves).
    witnesses: list[AxisAngle] = []
    saw_boundary = "boundary" in kinds
    for _, product in _enumerate_words((g0, g1), _WITNESS_DEPTH):
        aa = axis_angle(product)
        if aa.degenerate:
            continue
        kind = _classify_angle_fraction(aa.phi / np.pi)
        if kind == "boundary":
            saw_boundary = True
        elif kind == "irrational":
            witnesses.append(aa)
    for a, b in itertools.combinations(witnesses, 2):
        if _line_angle(a.axis, b.axis) > AXIS_PARALLEL_ATOL:
            return UniversalityReport(verdict=PLAUSIBLY_UNIVERSAL, **report)
    verdict = INCONCLUSIVE if (saw_boundary or witnesses) else NOT_UNIVERSAL
    return UniversalityReport(verdict=verdict, **report)


@dataclass(frozen=True)
class GateWord:
    """Generator word (application order) with its certified distance to target."""

    bits: tuple[int, ...]
    distance: float

    def __len__(self) -> int:
        return len(self.bits)


def word_product(bits, g0: np.ndarray, g1: np.ndarray) -> np.ndarray:
    """Operator product of a word: later letters multiply on the left."""
    gens = (np.asarray(g0, dtype=complex), np.asarray(g1, dtype=complex))
    out = np.eye(2, dtype=complex)
    for k in bits:
        out = gens[k] @ out
    return out


class _WordLevels:
    """Length-graded products of a generator pair, deduplicated projectively.

    Level m holds all distinct products of length-m words, each tagged with
    the lexicographically first word producing it.  Duplicates merge only
    when their projective quaternions agree within ``dedup_atol``, so the
    lex-minimal candidate at any search level is preserved.
    """

    def __init__(self, g0: np.ndarray, g1: np.ndarray, dedup_atol: float = 1e-10):
        self.gens = (np.asarray(g0, dtype=complex), np.asarray(g1, dtype=complex))
        self.dedup_atol = dedup_atol
        identity = np.eye(2, dtype=complex)
        self.levels: list[list[tuple[tuple[int, ...], np.ndarray, np.ndarray]]] = [
            [((), identity, _quaternion(identity))]
        ]

    def _dedup_key(self, q: np.ndarray) -> tuple[int, ...]:
        return tuple(np.round(q / self.dedup_atol).astype(np.int64))

    def level(self, m: int) -> list[tuple[tuple[int, ...], np.ndarray, np.ndarray]]:
        while len(self.levels) <= m:
            seen: dict[tuple[int, ...], None] = {}
            nxt = []
            for bits, product, _ in self.levels[-1]:
                for k in (0, 1):
                    new_product = self.gens[k] @ product
                    q = _quaternion(new_product)
                    key = self._dedup_key(q)
                    if key not in seen:
                        seen[key] = None
                        nxt.append((bits + (k,), new_product, q))
            self.levels.append(nxt)
        return self.levels[m]


_LEVELS_CACHE: dict[tuple, _WordLevels] = {}


def _levels_for(g0: np.ndarray, g1: np.ndarray, dedup_atol: float = 1e-10) -> _WordLevels:
    key = (g0.tobytes(), g1.tobytes(), float(dedup_atol))
    if key not in _LEVELS_CACHE:
        _LEVELS_CACHE[key] = _WordLevels(g0.copy(), g1.copy(), dedup_atol)
    return _LEVELS_CACHE[key]


def _enumerate_words(gens: tuple[np.ndarray, np.ndarray], depth: int):
    """All deduplicated words of length 1..depth as (bits, product) pairs."""
    levels = _levels_for(gens[0], gens[1])
    for m in range(1, depth + 1):
        for bits, product, _ in levels.level(m):
            yield bits, product


_NEIGHBOR_OFFSETS = list(itertools.product(range(-3, 4), repeat=3))


class _GeoHash:
    """Bucket index over projective quaternions, keyed by the vector part.

    Bucket edge ``epsilon/4`` guarantees that any point within phase-distance
    ``epsilon`` of a query lies within 3 buckets per coordinate of the query's
    key (after sign alignment), so probing the fixed neighbor offsets for both
    quaternion signs finds every match.
    """

    def __init__(self, epsilon: float):
        self.edge = epsilon / 4
        self.buckets: dict[tuple[int, int, int], list[int]] = {}

    def _key(self, q: np.ndarray) -> tuple[int, int, int]:
        return tuple(np.round(q[1:] / self.edge).astype(np.int64))

    def insert(self, q: np.ndarray, index: int) -> None:
        self.buckets.setdefault(self._key(q), []).append(index)

    def probe(self, q: np.ndarray, epsilon: float):
        # Any match lies within epsilon/sqrt(2) per coordinate after sign
        # alignment; when the leading (scalar) component clears that band, the
        # stored canonical sign agrees with +q and the -q probe can be skipped.
        signs = (q,) if q[0] > 0.71 * epsilon + 1e-8 else (q, -q)
        for signed in signs:
            base = self._key(signed)
            for off in _NEIGHBOR_OFFSETS:
                hits = self.buckets.get((base[0] + off[0], base[1] + off[1], base[2] + off[2]))
                if hits:
                    yield from hits


def synthesize(
    g0: np.ndarray,
    g1: np.ndarray,
    target: np.ndarray,
    epsilon: float,
    max_len: int = DEFAULT_MAX_WORD_LEN,
) -> GateWord:
    """Shortest word over {g0, g1} within ``epsilon`` of ``target`` (mod phase).

    Bidirectional search: words of length n are split as prefix + suffix at
    n//2; prefix products are geometrically hashed and each suffix queries
    the hash with its pulled-back target.  Candidate distances are re-checked
    exactly, and ties at the minimal length break lexicographically (0 before
    1), so the result is deterministic.
    """
    g0 = require_unitary(g0, "g0")
    g1 = require_unitary(g1, "g1")
    target = require_unitary(target, "target")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")

    d = dist_phase(np.eye(2, dtype=complex), target)
    if d < epsilon:
        return GateWord((), d)

    levels = _levels_for(g0, g1, dedup_atol=min(1e-10, epsilon / 10))
    hashes: dict[int, _GeoHash] = {}

    def forward_hash(m: int) -> _GeoHash:
        if m not in hashes:
            gh = _GeoHash(epsilon)
            for idx, (_, _, q) in enumerate(levels.level(m)):
                gh.insert(q, idx)
            hashes[m] = gh
        return hashes[m]

    for n in range(1, max_len + 1):
        prefix_len = (n + 1) // 2
        suffix_len = n - prefix_len
        prefixes = levels.level(prefix_len)
        gh = forward_hash(prefix_len)
        candidates: list[tuple[tuple[int, ...], float]] = []
        for suffix_bits, suffix_product, _ in levels.level(suffix_len):
            pulled_back = suffix_product.conj().T @ target
            q = _quaternion(pulled_back)
            for idx in gh.probe(q, epsilon):
                prefix_bits, prefix_product, _ = prefixes[idx]
                dist = dist_phase(suffix_product @ prefix_product, target)
                if dist < epsilon:
                    candidates.append((prefix_bits + suffix_bits, dist))
        if candidates:
            bits, dist = min(candidates)
            return GateWord(bits, dist)
    raise SearchExhausted(
        f"no word of length <= {max_len} within {epsilon:g} of the target"
    )


def density_probe(
    g0: np.ndarray,
    g1: np.ndarray,
    depth: int,
    samples: int = 1000,
    seed: int = 20,
) -> float:
    """Covering-radius estimate of the word set at the given depth.

    Enumerates all (deduplicated) words up to ``depth``, then reports the
    maximum over a Haar sample of the phase-distance to the nearest word.
    Decreasing values with depth are empirical evidence of density in SU(2).
    """
    g0 = require_unitary(g0, "g0")
    g1 = require_unitary(g1, "g1")
    levels = _levels_for(g0, g1)
    quats = [levels.level(0)[0][2]]
    quats.extend(q for m in range(1, depth + 1) for (_, _, q) in levels.level(m))
    word_mat = np.array(quats)

    rng = np.random.default_rng(seed)
    sampled = []
    for _ in range(samples):
        z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
        q, r = np.linalg.qr(z)
        sampled.append(_quaternion(q * (np.diagonal(r) / np.abs(np.diagonal(r)))))
    sample_mat = np.array(sampled)

    # dist_phase(a, b) = 2 sqrt(1 - |<qa, qb>|) for 2x2 unitaries
    overlaps = np.abs(sample_mat @ word_mat.T)
    nearest = overlaps.max(axis=1)
    return float(np.max(2 * np.sqrt(np.maximum(0.0, 1.0 - nearest))))
