"""Domain types: inequalities, games, strategies, and value reports.

Conventions
-----------
* Parties, measurement settings / game inputs are indexed **1-based**, matching
  the usual matrix notation for inequality coefficients.
* A *setting vector* ``s = (s_1, ..., s_n)`` picks one setting per party.
  Maps keyed by setting vectors are iterated in lexicographic order wherever
  the order matters, so every derived artifact is deterministic.
* Outcome labels are plain integers.  Dichotomic outcomes use ``+1``/``-1``
  literally, so products of outputs are directly computable.
* Reals are double precision; numeric invariants are checked with absolute
  tolerance ``ATOL = 1e-9``.

Every type validates itself on construction: a constructor raises
:class:`~bellgame.errors.ValidationError` for any value that
:func:`validate` would flag, and ``validate`` on a constructed value always
returns an empty list.  Values are immutable; treat the contained mappings
and arrays as read-only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ValidationError

ATOL = 1e-9

SettingVector = tuple[int, ...]
OutcomeTuple = tuple[int, ...]


@dataclass(frozen=True)
class Violation:
    """One invariant failure, with a stable machine-readable code."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def setting_grid(setting_counts) -> Iterator[SettingVector]:
    """All setting vectors for the given per-party counts, lexicographically."""
    return itertools.product(*(range(1, m + 1) for m in setting_counts))


def _as_real(x) -> float:
    # +0.0 collapses -0.0 so equal values serialize identically
    return float(x) + 0.0


def _as_key(key) -> SettingVector:
    return tuple(int(k) for k in key)


def _key_in_range(key, setting_counts) -> bool:
    return len(key) == len(setting_counts) and all(
        1 <= k <= m for k, m in zip(key, setting_counts)
    )


def _check_shape(violations, parties, settings):
    if not isinstance(parties, int) or parties < 1:
        violations.append(Violation("bad-party-count", f"parties must be >= 1, got {parties!r}"))
        return False
    if len(settings) != parties or any(m < 1 for m in settings):
        violations.append(
            Violation("bad-setting-count", f"need {parties} per-party counts >= 1, got {settings!r}")
        )
        return False
    return True


def _check_alphabets(violations, parties, settings, alphabets):
    if len(alphabets) != parties or any(
        len(alphabets[i]) != settings[i] for i in range(parties)
    ):
        violations.append(
            Violation("bad-alphabet", "need one outcome alphabet per party per setting")
        )
        return False
    ok = True
    for i, per_input in enumerate(alphabets, start=1):
        for x, labels in enumerate(per_input, start=1):
            if not labels:
                violations.append(
                    Violation("bad-alphabet", f"empty alphabet for party {i}, input {x}")
                )
                ok = False
            if len(set(labels)) != len(labels):
                violations.append(
                    Violation(
                        "duplicate-outcome-label",
                        f"repeated label in alphabet of party {i}, input {x}",
                    )
                )
                ok = False
    return ok


def _tuple_in_alphabets(t, key, alphabets) -> bool:
    if len(t) != len(key):
        return False
    return all(t[i] in alphabets[i][key[i] - 1] for i in range(len(key)))


def _normalize_alphabets(alphabets):
    return tuple(
        tuple(tuple(int(l) for l in labels) for labels in per_input)
        for per_input in alphabets
    )


@dataclass(frozen=True)
class CorrelationInequality:
    """A full-correlation Bell inequality  |sum_s c_s <prod_i o_i>| <= C.

    All outputs are dichotomic with values +1/-1.  ``coefficients`` maps
    setting vectors to the reals ``c_s``; vectors absent from the map carry
    coefficient zero (exact zeros are dropped on construction).
    """

    parties: int
    settings: tuple[int, ...]
    coefficients: dict[SettingVector, float]
    classical_bound: float

    def __post_init__(self):
        object.__setattr__(self, "settings", tuple(int(m) for m in self.settings))
        coeffs = {
            _as_key(k): _as_real(v) for k, v in self.coefficients.items() if float(v) != 0.0
        }
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "classical_bound", _as_real(self.classical_bound))
        _raise_if_invalid(self)

    def coefficient(self, s) -> float:
        return self.coefficients.get(tuple(s), 0.0)

    def abs_coefficient_sum(self) -> float:
        """sum_s |c_s|, accumulated in lexicographic key order."""
        return math.fsum(abs(self.coefficients[s]) for s in sorted(self.coefficients))


@dataclass(frozen=True)
class WeightedSumInequality:
    """A setting-uniform weighted-sum Bell inequality.

    ``S_min <= sum_s w_s P(outputs at s land in winning_sets[s]) <= S_max``
    with one nonnegative weight per setting vector and extensionally stored
    winning sets drawn from the declared outcome alphabets.
    """

    parties: int
    settings: tuple[int, ...]
    outcome_alphabets: tuple[tuple[tuple[int, ...], ...], ...]
    weights: dict[SettingVector, float]
    winning_sets: dict[SettingVector, frozenset[OutcomeTuple]]
    s_min: float
    s_max: float

    def __post_init__(self):
        object.__setattr__(self, "settings", tuple(int(m) for m in self.settings))
        object.__setattr__(self, "outcome_alphabets", _normalize_alphabets(self.outcome_alphabets))
        object.__setattr__(
            self, "weights", {_as_key(k): _as_real(v) for k, v in self.weights.items()}
        )
        object.__setattr__(
            self,
            "winning_sets",
            {
                _as_key(k): frozenset(tuple(int(o) for o in t) for t in ts)
                for k, ts in self.winning_sets.items()
            },
        )
        object.__setattr__(self, "s_min", _as_real(self.s_min))
        object.__setattr__(self, "s_max", _as_real(self.s_max))
        _raise_if_invalid(self)

    def total_weight(self) -> float:
        """sum_s w_s, accumulated in lexicographic key order."""
        return math.fsum(self.weights[s] for s in sorted(self.weights))

    def alphabet(self, party: int, setting: int) -> tuple[int, ...]:
        return self.outcome_alphabets[party - 1][setting - 1]


@dataclass(frozen=True)
class NonlocalGame:
    """A cooperative game: a verifier samples one input per party from a joint
    distribution, players answer without communicating, and the truth table
    decides the win for each input vector."""

    parties: int
    inputs: tuple[int, ...]
    outcome_alphabets: tuple[tuple[tuple[int, ...], ...], ...]
    input_distribution: dict[SettingVector, float]
    truth_table: dict[SettingVector, frozenset[OutcomeTuple]]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(int(m) for m in self.inputs))
        object.__setattr__(self, "outcome_alphabets", _normalize_alphabets(self.outcome_alphabets))
        object.__setattr__(
            self,
            "input_distribution",
            {_as_key(k): _as_real(v) for k, v in self.input_distribution.items()},
        )
        object.__setattr__(
            self,
            "truth_table",
            {
                _as_key(k): frozenset(tuple(int(o) for o in t) for t in ts)
                for k, ts in self.truth_table.items()
            },
        )
        _raise_if_invalid(self)

    def support(self) -> list[SettingVector]:
        """Input vectors with positive probability, lexicographically."""
        return [s for s in sorted(self.input_distribution) if self.input_distribution[s] > 0.0]

    def alphabet(self, party: int, input_: int) -> tuple[int, ...]:
        return self.outcome_alphabets[party - 1][input_ - 1]


@dataclass(frozen=True)
class DeterministicStrategy:
    """A classical response table: for each party, one outcome per input."""

    responses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "responses",
            tuple(tuple(int(o) for o in per_party) for per_party in self.responses),
        )
        _raise_if_invalid(self)

    @property
    def parties(self) -> int:
        return len(self.responses)

    @property
    def input_counts(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.responses)

    def response(self, party: int, input_: int) -> int:
        return self.responses[party - 1][input_ - 1]

    def outputs(self, s) -> OutcomeTuple:
        return tuple(self.responses[i][s[i] - 1] for i in range(len(self.responses)))


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """An ordered complete set of orthogonal projectors, one per outcome label."""

    labels: tuple[int, ...]
    projectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(l) for l in self.labels))
        projs = []
        for p in self.projectors:
            arr = np.array(p, dtype=np.complex128)
            arr.setflags(write=False)
            projs.append(arr)
        object.__setattr__(self, "projectors", tuple(projs))


@dataclass(frozen=True, eq=False)
class QuantumStrategy:
    """A shared pure state plus per-party, per-input projective measurements.

    ``state`` is a unit vector on the tensor product of the local spaces in
    party-major (kron) basis order.  Each measurement's projectors must be
    Hermitian, idempotent, mutually orthogonal, and sum to the local identity,
    all within ``ATOL`` entrywise.
    """

    local_dims: tuple[int, ...]
    state: np.ndarray
    measurements: tuple[tuple[ProjectiveMeasurement, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "local_dims", tuple(int(d) for d in self.local_dims))
        state = np.array(self.state, dtype=np.complex128).reshape(-1)
        state.setflags(write=False)
        object.__setattr__(self, "state", state)
        object.__setattr__(self, "measurements", tuple(tuple(m) for m in self.measurements))
        _raise_if_invalid(self)

    @property
    def parties(self) -> int:
        return len(self.local_dims)

    @property
    def input_counts(self) -> tuple[int, ...]:
        return tuple(len(per_party) for per_party in self.measurements)

    def measurement(self, party: int, input_: int) -> ProjectiveMeasurement:
        return self.measurements[party - 1][input_ - 1]


QUANTUM_METHODS = ("exact-xor", "seesaw-lower-bound")


@dataclass(frozen=True, eq=False)
class ValueReport:
    """Classical and (optionally) quantum values of a game, with witnesses.

    ``quantum_method`` tags how ``quantum_value`` was obtained: ``exact-xor``
    for the two-party XOR vector optimization (exact in the converged limit)
    or ``seesaw-lower-bound`` for the general heuristic (a certified lower
    bound, evaluated from the witness)."""

    classical_max: float
    classical_min: float
    witness_classical: DeterministicStrategy
    quantum_value: float | None = None
    quantum_method: str | None = None
    advantage: float | None = None
    witness_quantum: QuantumStrategy | None = None

    def __post_init__(self):
        object.__setattr__(self, "classical_max", _as_real(self.classical_max))
        object.__setattr__(self, "classical_min", _as_real(self.classical_min))
        if self.quantum_value is not None:
            object.__setattr__(self, "quantum_value", _as_real(self.quantum_value))
        if self.advantage is not None:
            object.__setattr__(self, "advantage", _as_real(self.advantage))
        _raise_if_invalid(self)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _violations_correlation(x: CorrelationInequality) -> list[Violation]:
    v: list[Violation] = []
    if not _check_shape(v, x.parties, x.settings):
        return v
    if not x.coefficients:
        v.append(Violation("no-nonzero-coefficient", "all coefficients vanish"))
    for key, c in x.coefficients.items():
        if not _key_in_range(key, x.settings):
            v.append(Violation("setting-out-of-range", f"coefficient key {key} out of range"))
        if not math.isfinite(c):
            v.append(Violation("non-finite-value", f"coefficient at {key} is {c}"))
    if not math.isfinite(x.classical_bound) or x.classical_bound <= 0.0:
        v.append(
            Violation("nonpositive-bound", f"classical bound must be > 0, got {x.classical_bound}")
        )
    return v


def _violations_weighted(x: WeightedSumInequality) -> list[Violation]:
    v: list[Violation] = []
    if not _check_shape(v, x.parties, x.settings):
        return v
    if not _check_alphabets(v, x.parties, x.settings, x.outcome_alphabets):
        return v
    any_positive = False
    for key, w in x.weights.items():
        if not _key_in_range(key, x.settings):
            v.append(Violation("setting-out-of-range", f"weight key {key} out of range"))
            continue
        if not math.isfinite(w):
            v.append(Violation("non-finite-value", f"weight at {key} is {w}"))
        elif w < 0.0:
            v.append(Violation("negative-weight", f"weight at {key} is {w}"))
        elif w > 0.0:
            any_positive = True
            if key not in x.winning_sets:
                v.append(
                    Violation("missing-winning-set", f"no winning set for positive-weight {key}")
                )
    if not any_positive:
        v.append(Violation("all-weights-zero", "at least one weight must be positive"))
    for key, tuples in x.winning_sets.items():
        if not _key_in_range(key, x.settings):
            v.append(Violation("setting-out-of-range", f"winning-set key {key} out of range"))
            continue
        for t in tuples:
            if not _tuple_in_alphabets(t, key, x.outcome_alphabets):
                v.append(
                    Violation(
                        "outcome-not-in-alphabet",
                        f"tuple {t} at {key} uses labels outside the alphabets",
                    )
                )
    if not (math.isfinite(x.s_min) and math.isfinite(x.s_max)):
        v.append(Violation("non-finite-value", "s_min/s_max must be finite"))
    elif x.s_min > x.s_max:
        v.append(Violation("bounds-reversed", f"s_min {x.s_min} exceeds s_max {x.s_max}"))
    return v


def _violations_game(x: NonlocalGame) -> list[Violation]:
    v: list[Violation] = []
    if not _check_shape(v, x.parties, x.inputs):
        return v
    if not _check_alphabets(v, x.parties, x.inputs, x.outcome_alphabets):
        return v
    total = math.fsum(x.input_distribution[s] for s in sorted(x.input_distribution))
    for key, p in x.input_distribution.items():
        if not _key_in_range(key, x.inputs):
            v.append(Violation("setting-out-of-range", f"input key {key} out of range"))
        if not math.isfinite(p) or p < 0.0:
            v.append(Violation("negative-probability", f"probability at {key} is {p}"))
        elif p > 0.0 and key not in x.truth_table:
            v.append(
                Violation("truth-table-missing-setting", f"no truth-table entry for {key}")
            )
    if not math.isfinite(total) or abs(total - 1.0) > ATOL:
        v.append(
            Violation("distribution-not-normalized", f"input probabilities sum to {total!r}")
        )
    for key, tuples in x.truth_table.items():
        if not _key_in_range(key, x.inputs):
            v.append(Violation("setting-out-of-range", f"truth-table key {key} out of range"))
            continue
        for t in tuples:
            if not _tuple_in_alphabets(t, key, x.outcome_alphabets):
                v.append(
                    Violation(
                        "outcome-not-in-alphabet",
                        f"tuple {t} at {key} uses labels outside the alphabets",
                    )
                )
    return v


def _violations_deterministic(x: DeterministicStrategy) -> list[Violation]:
    v: list[Violation] = []
    if not x.responses or any(len(r) == 0 for r in x.responses):
        v.append(Violation("bad-response-table", "every party needs at least one response"))
    return v


def _violations_quantum(x: QuantumStrategy) -> list[Violation]:
    v: list[Violation] = []
    if any(d < 2 for d in x.local_dims) or not x.local_dims:
        v.append(Violation("bad-dimension", f"local dimensions must be >= 2, got {x.local_dims}"))
        return v
    dim = int(np.prod(x.local_dims))
    if x.state.shape != (dim,):
        v.append(Violation("bad-state-shape", f"state must have length {dim}"))
        return v
    norm = float(np.linalg.norm(x.state))
    if abs(norm - 1.0) > ATOL:
        v.append(Violation("state-not-normalized", f"state norm is {norm!r}"))
    if len(x.measurements) != len(x.local_dims):
        v.append(Violation("bad-measurement-shape", "need one measurement list per party"))
        return v
    for i, per_input in enumerate(x.measurements, start=1):
        d = x.local_dims[i - 1]
        if not per_input:
            v.append(Violation("bad-measurement-shape", f"party {i} has no measurements"))
            continue
        for xq, meas in enumerate(per_input, start=1):
            where = f"party {i}, input {xq}"
            if len(meas.labels) != len(meas.projectors) or not meas.labels:
                v.append(Violation("bad-measurement-shape", f"{where}: labels/projectors mismatch"))
                continue
            if len(set(meas.labels)) != len(meas.labels):
                v.append(Violation("duplicate-outcome-label", f"{where}: repeated label"))
            bad_shape = False
            for p in meas.projectors:
                if p.shape != (d, d):
                    v.append(Violation("bad-measurement-shape", f"{where}: projector is not {d}x{d}"))
                    bad_shape = True
            if bad_shape:
                continue
            total = np.zeros((d, d), dtype=np.complex128)
            for lab, p in zip(meas.labels, meas.projectors):
                if np.max(np.abs(p - p.conj().T)) > ATOL:
                    v.append(Violation("not-hermitian", f"{where}, outcome {lab}: P != P^dagger"))
                if np.max(np.abs(p @ p - p)) > ATOL:
                    v.append(Violation("not-projective", f"{where}, outcome {lab}: P^2 != P"))
                total += p
            for a in range(len(meas.projectors)):
                for b in range(a + 1, len(meas.projectors)):
                    if np.max(np.abs(meas.projectors[a] @ meas.projectors[b])) > ATOL:
                        v.append(
                            Violation(
                                "not-orthogonal",
                                f"{where}: projectors {meas.labels[a]} and {meas.labels[b]} overlap",
                            )
                        )
            if np.max(np.abs(total - np.eye(d))) > ATOL:
                v.append(Violation("not-complete", f"{where}: projectors do not sum to identity"))
    return v


def _violations_report(x: ValueReport) -> list[Violation]:
    v: list[Violation] = []
    if not (0.0 <= x.classical_min <= x.classical_max <= 1.0):
        v.append(
            Violation(
                "classical-window-invalid",
                f"need 0 <= min <= max <= 1, got [{x.classical_min}, {x.classical_max}]",
            )
        )
    if x.quantum_value is not None:
        if not (-ATOL <= x.quantum_value <= 1.0 + ATOL):
            v.append(Violation("quantum-out-of-range", f"quantum value {x.quantum_value}"))
        if x.quantum_method not in QUANTUM_METHODS:
            v.append(
                Violation("unknown-method", f"quantum_method must be one of {QUANTUM_METHODS}")
            )
    return v


_VALIDATORS = {
    CorrelationInequality: _violations_correlation,
    WeightedSumInequality: _violations_weighted,
    NonlocalGame: _violations_game,
    DeterministicStrategy: _violations_deterministic,
    QuantumStrategy: _violations_quantum,
    ValueReport: _violations_report,
}


def validate(value) -> list[Violation]:
    """Return every invariant violation of ``value`` (empty list = ok)."""
    try:
        checker = _VALIDATORS[type(value)]
    except KeyError:
        raise TypeError(f"not a domain value: {type(value).__name__}") from None
    return checker(value)


def _raise_if_invalid(value) -> None:
    violations = validate(value)
    if violations:
        raise ValidationError(violations)
