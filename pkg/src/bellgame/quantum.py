"""Quantum values of games and inequalities.

Two solvers are provided:

* :func:`xor_quantum_value` — for two-party full-correlation inequalities.
  The quantum bias  Q = max sum_ij c_ij <u_i, v_j>  over unit vectors is
  found by alternating maximization (fix one side, the optimal vector on the
  other side is the normalized coefficient-weighted sum), restarted from
  random points on the sphere.  This vector characterization is exact for
  two-party dichotomic correlations, and the winning probability follows as
  P = (Q + sum|c|) / (2 sum|c|).  A two-qubit strategy achieving the
  converged bias can be reconstructed with :func:`xor_to_quantum_witness`
  whenever the vectors fit in two dimensions.

* :func:`seesaw_quantum_value` — for general games in fixed local dimensions.
  Alternates (a) setting the shared state to the top eigenvector of the game
  operator  G = sum_s rho_s sum_{winning t} kron_i P^(i, s_i)_{t_i}  and
  (b) re-optimizing one measurement at a time against its effective
  (reduced) operators: exactly for dichotomic outcomes by projecting onto
  the nonnegative eigenspace of the operator difference, and by stochastic
  unitary ascent on the measurement basis for three or more outcomes.  The
  objective never decreases; the returned value is re-evaluated from the
  witness through the Born rule, so it is a certified lower bound.

Dense Hermitian eigendecomposition is exposed as :func:`hermitian_eig`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionCapExceeded,
    NotHermitian,
    NotTwoParty,
    ShapeMismatch,
    UnsupportedVectorDim,
    ValidationError,
)
from .model import (
    ATOL,
    CorrelationInequality,
    NonlocalGame,
    ProjectiveMeasurement,
    QuantumStrategy,
    Violation,
)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def hermitian_eig(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors (as columns) of a
    Hermitian matrix.

    The input may deviate from exact Hermiticity by at most 1e-9 entrywise
    (it is symmetrized internally); larger deviations raise
    :class:`NotHermitian`.
    """
    a = np.asarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {a.shape}")
    deviation = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if deviation > ATOL:
        raise NotHermitian(f"entrywise Hermiticity deviation {deviation:.3e} exceeds {ATOL}")
    sym = (a + a.conj().T) / 2.0
    return np.linalg.eigh(sym)


def _apply_local(mat: np.ndarray, tensor: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(mat, tensor, axes=([1], [axis])), 0, axis)


def _rng_for(seed: int, restart: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, restart])))


# ---------------------------------------------------------------------------
# two-party XOR solver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class XorSolveConfig:
    """Knobs of the vector alternation.  ``vector_dim=None`` means
    min(m_1, m_2), which suffices for the optima of the families shipped in
    the catalog."""

    vector_dim: int | None = None
    restarts: int = 32
    max_iters: int = 10_000
    tol: float = 1e-12
    rng_seed: int = 0

    def __post_init__(self):
        bad = []
        if self.vector_dim is not None and self.vector_dim < 1:
            bad.append(Violation("bad-dimension", "vector_dim must be >= 1"))
        if self.tol <= 0:
            bad.append(Violation("bad-tolerance", "tol must be positive"))
        if self.restarts < 1 or self.max_iters < 1:
            bad.append(Violation("bad-iteration-count", "restarts and max_iters must be >= 1"))
        if self.rng_seed < 0:
            bad.append(Violation("bad-seed", "rng_seed must be nonnegative"))
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True, eq=False)
class XorResult:
    """Converged bias Q, winning probability, and the witness vectors."""

    bias: float
    value: float
    row_vectors: np.ndarray
    col_vectors: np.ndarray
    best_restart: int


def _normalize_rows(m: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(m, axis=1)
    out = fallback.copy()
    mask = norms > 0.0
    out[mask] = m[mask] / norms[mask, None]
    return out


def _unit_rows(rows: int, dim: int) -> np.ndarray:
    # one basis vector per row (cycled), for rows with no coefficient signal
    out = np.zeros((rows, dim))
    out[np.arange(rows), np.arange(rows) % dim] = 1.0
    return out


def xor_quantum_value(
    ineq: CorrelationInequality, cfg: XorSolveConfig | None = None
) -> XorResult:
    """Quantum bias and winning probability of a two-party full-correlation
    inequality (see module docstring).  Raises :class:`NotTwoParty` unless
    the inequality has exactly two parties; outcomes are dichotomic by type.
    """
    if cfg is None:
        cfg = XorSolveConfig()
    if ineq.parties != 2:
        raise NotTwoParty(f"xor solver needs 2 parties, got {ineq.parties}")
    m1, m2 = ineq.settings
    coeff = np.zeros((m1, m2))
    for (i, j), c in ineq.coefficients.items():
        coeff[i - 1, j - 1] = c
    dim = cfg.vector_dim if cfg.vector_dim is not None else min(m1, m2)

    best_bias = -math.inf
    best = None
    for restart in range(cfg.restarts):
        rng = _rng_for(cfg.rng_seed, restart)
        u = _normalize_rows(rng.normal(size=(m1, dim)), _unit_rows(m1, dim))
        v = _normalize_rows(rng.normal(size=(m2, dim)), _unit_rows(m2, dim))
        bias = -math.inf
        for _ in range(cfg.max_iters):
            v = _normalize_rows(coeff.T @ u, v)
            u = _normalize_rows(coeff @ v, u)
            new_bias = float(np.sum(coeff * (u @ v.T)))
            if new_bias - bias < cfg.tol:
                bias = max(bias, new_bias)
                break
            bias = new_bias
        if bias > best_bias:
            best_bias = bias
            best = (u, v, restart)

    u, v, restart = best
    abs_sum = ineq.abs_coefficient_sum()
    return XorResult(
        bias=best_bias,
        value=(best_bias + abs_sum) / (2.0 * abs_sum),
        row_vectors=u,
        col_vectors=v,
        best_restart=restart,
    )


def xor_to_quantum_witness(row_vectors, col_vectors) -> QuantumStrategy:
    """Turn XOR witness vectors of dimension <= 2 into a two-qubit strategy.

    The parties share (|00> + |11>)/sqrt(2); a unit vector (a, b) becomes the
    observable  a Z + b X , whose +-1 eigenprojectors form the measurement.
    On that state  <A (x) B> = u . v  for real symmetric observables, so the
    strategy reproduces the vector bias exactly.  Vectors of dimension >= 3
    raise :class:`UnsupportedVectorDim`.
    """
    u = np.atleast_2d(np.asarray(row_vectors, dtype=float))
    v = np.atleast_2d(np.asarray(col_vectors, dtype=float))
    if u.shape[1] > 2 or v.shape[1] > 2:
        raise UnsupportedVectorDim(
            f"qubit reconstruction needs dimension <= 2, got {u.shape[1]} and {v.shape[1]}"
        )
    if u.shape[1] < 2:
        u = np.hstack([u, np.zeros((u.shape[0], 2 - u.shape[1]))])
    if v.shape[1] < 2:
        v = np.hstack([v, np.zeros((v.shape[0], 2 - v.shape[1]))])
    for name, vecs in (("row", u), ("col", v)):
        norms = np.linalg.norm(vecs, axis=1)
        if np.max(np.abs(norms - 1.0)) > ATOL:
            raise ValidationError(
                [Violation("vector-not-unit", f"{name} vectors must have unit norm")]
            )

    def measurement(vec) -> ProjectiveMeasurement:
        a, b = vec
        obs = np.array([[a, b], [b, -a]], dtype=np.complex128)
        eye = np.eye(2, dtype=np.complex128)
        return ProjectiveMeasurement(labels=(1, -1), projectors=((eye + obs) / 2, (eye - obs) / 2))

    state = np.array([1.0, 0.0, 0.0, 1.0], dtype=np.complex128) / math.sqrt(2.0)
    return QuantumStrategy(
        local_dims=(2, 2),
        state=state,
        measurements=(
            tuple(measurement(row) for row in u),
            tuple(measurement(col) for col in v),
        ),
    )


# ---------------------------------------------------------------------------
# Born rule
# ---------------------------------------------------------------------------

def check_strategy_shape(game: NonlocalGame, strategy: QuantumStrategy) -> None:
    """Raise :class:`ShapeMismatch` unless the measurements match the game's
    parties, inputs, and outcome labels."""
    if strategy.parties != game.parties or strategy.input_counts != game.inputs:
        raise ShapeMismatch(
            f"strategy shape {strategy.input_counts} does not match game inputs {game.inputs}"
        )
    for i in range(1, game.parties + 1):
        for x in range(1, game.inputs[i - 1] + 1):
            if set(strategy.measurement(i, x).labels) != set(game.alphabet(i, x)):
                raise ShapeMismatch(
                    f"measurement labels of party {i} at input {x} do not match the "
                    f"game alphabet {game.alphabet(i, x)}"
                )


def born_rule(strategy: QuantumStrategy, s) -> dict[tuple[int, ...], float]:
    """Joint outcome distribution of a quantum strategy at input vector ``s``:
    Pr(outcomes) = <psi| kron_i P^(i, s_i)_(outcome_i) |psi>.

    Keys are outcome-label tuples in measurement order; values sum to one
    within 1e-9 by completeness of the measurements.
    """
    s = tuple(int(x) for x in s)
    counts = strategy.input_counts
    if len(s) != strategy.parties or any(not 1 <= s[i] <= counts[i] for i in range(len(s))):
        raise ShapeMismatch(f"input vector {s} does not match strategy inputs {counts}")
    psi = strategy.state.reshape(strategy.local_dims)
    measurements = [strategy.measurement(i + 1, s[i]) for i in range(strategy.parties)]
    dist: dict[tuple[int, ...], float] = {}

    def recurse(party: int, labels: tuple[int, ...], tensor: np.ndarray) -> None:
        if party == strategy.parties:
            dist[labels] = float(np.linalg.norm(tensor) ** 2)
            return
        meas = measurements[party]
        for label, proj in zip(meas.labels, meas.projectors):
            recurse(party + 1, labels + (label,), _apply_local(proj, tensor, party))

    recurse(0, (), psi)
    return dist


def quantum_game_value(game: NonlocalGame, strategy: QuantumStrategy) -> float:
    """Exact winning probability of a quantum strategy:  sum_s rho_s *
    Pr(win | s)  with the per-input probabilities from the Born rule."""
    check_strategy_shape(game, strategy)
    total = []
    for s in game.support():
        dist = born_rule(strategy, s)
        win = math.fsum(dist[t] for t in sorted(game.truth_table[s]))
        total.append(game.input_distribution[s] * win)
    return math.fsum(total)


# ---------------------------------------------------------------------------
# see-saw for general games
# ---------------------------------------------------------------------------

MEASUREMENT_UPDATES = ("auto", "sign-split", "unitary-ascent")


@dataclass(frozen=True)
class SeesawConfig:
    """Knobs of the state/measurement alternation.

    ``measurement_update`` picks the per-measurement optimizer: ``sign-split``
    (exact, dichotomic outcomes only), ``unitary-ascent`` (any outcome
    count), or ``auto`` (sign-split where dichotomic, ascent elsewhere).
    The ascent applies ``ascent_trials`` random anti-Hermitian perturbations
    of size ``ascent_step`` per update, halving the step on non-improvement.
    """

    local_dims: tuple[int, ...]
    restarts: int = 16
    max_iters: int = 2000
    tol: float = 1e-10
    rng_seed: int = 0
    measurement_update: str = "auto"
    ascent_step: float = 0.1
    ascent_trials: int = 60
    dimension_cap: int = 64

    def __post_init__(self):
        object.__setattr__(self, "local_dims", tuple(int(d) for d in self.local_dims))
        bad = []
        if not self.local_dims or any(d < 2 for d in self.local_dims):
            bad.append(Violation("bad-dimension", "local dimensions must be >= 2"))
        if self.tol <= 0 or self.ascent_step <= 0:
            bad.append(Violation("bad-tolerance", "tol and ascent_step must be positive"))
        if self.restarts < 1 or self.max_iters < 1 or self.ascent_trials < 1:
            bad.append(Violation("bad-iteration-count", "counts must be >= 1"))
        if self.measurement_update not in MEASUREMENT_UPDATES:
            bad.append(
                Violation("unknown-method", f"measurement_update must be in {MEASUREMENT_UPDATES}")
            )
        if self.rng_seed < 0:
            bad.append(Violation("bad-seed", "rng_seed must be nonnegative"))
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True, eq=False)
class SeesawResult:
    """Certified lower bound on the quantum value with its witness.

    ``value`` equals the Born-rule evaluation of ``strategy`` on the game;
    ``history`` is the per-sweep objective of the winning restart and is
    non-decreasing; ``restart_values`` collects the converged value of every
    restart."""

    value: float
    strategy: QuantumStrategy
    best_restart: int
    history: tuple[float, ...]
    restart_values: tuple[float, ...]


def _column_blocks(n_outcomes: int, dim: int) -> list[np.ndarray]:
    base, extra = divmod(dim, n_outcomes)
    blocks, start = [], 0
    for k in range(n_outcomes):
        size = base + (1 if k < extra else 0)
        blocks.append(np.arange(start, start + size))
        start += size
    return blocks


def _random_basis(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def _expm_antihermitian(k: np.ndarray, scale: float) -> np.ndarray:
    w, v = np.linalg.eigh(1j * k)
    return (v * np.exp(-1j * scale * w)) @ v.conj().T


class _SeesawState:
    """One restart's working data: per-(party, input) bases and projectors."""

    def __init__(self, game: NonlocalGame, cfg: SeesawConfig, rng: np.random.Generator):
        self.game = game
        self.cfg = cfg
        self.rng = rng
        self.dims = cfg.local_dims
        self.total_dim = int(np.prod(self.dims))
        self.support = game.support()
        # winning tuples as alphabet-position indices, per setting
        self.win_indices = {}
        for s in self.support:
            index_of = [
                {lab: k for k, lab in enumerate(game.alphabet(i + 1, s[i]))}
                for i in range(game.parties)
            ]
            self.win_indices[s] = sorted(
                tuple(index_of[i][t[i]] for i in range(game.parties))
                for t in game.truth_table[s]
            )
        self.blocks = {}
        self.bases = {}
        self.projectors = {}
        for i in range(1, game.parties + 1):
            d = self.dims[i - 1]
            for x in range(1, game.inputs[i - 1] + 1):
                n_out = len(game.alphabet(i, x))
                self.blocks[i, x] = _column_blocks(n_out, d)
                self.bases[i, x] = _random_basis(rng, d)
                self._projectors_from_basis(i, x)
        self.psi = rng.normal(size=self.total_dim) + 1j * rng.normal(size=self.total_dim)
        self.psi /= np.linalg.norm(self.psi)

    def _projectors_from_basis(self, i: int, x: int) -> None:
        u = self.bases[i, x]
        projs = []
        for cols in self.blocks[i, x]:
            sub = u[:, cols]
            projs.append(sub @ sub.conj().T)
        self.projectors[i, x] = projs

    def game_operator(self) -> np.ndarray:
        g = np.zeros((self.total_dim, self.total_dim), dtype=np.complex128)
        for s in self.support:
            rho = self.game.input_distribution[s]
            for t in self.win_indices[s]:
                op = self.projectors[1, s[0]][t[0]]
                for i in range(1, self.game.parties):
                    op = np.kron(op, self.projectors[i + 1, s[i]][t[i]])
                g += rho * op
        return g

    def objective(self) -> float:
        g = self.game_operator()
        return float(np.real(np.vdot(self.psi, g @ self.psi)))

    def update_state(self) -> None:
        w, v = hermitian_eig(self.game_operator())
        self.psi = np.ascontiguousarray(v[:, -1])

    def effective_operators(self, party: int, x: int) -> list[np.ndarray]:
        """Reduced operators R_k on the party's space with the objective's
        dependence on its measurement equal to sum_k Tr[P_k R_k]."""
        d = self.dims[party - 1]
        n_out = len(self.game.alphabet(party, x))
        r = [np.zeros((d, d), dtype=np.complex128) for _ in range(n_out)]
        psi_t = self.psi.reshape(self.dims)
        axes = [a for a in range(self.game.parties) if a != party - 1]
        for s in self.support:
            if s[party - 1] != x:
                continue
            rho = self.game.input_distribution[s]
            for t in self.win_indices[s]:
                phi = psi_t
                for j in range(self.game.parties):
                    if j == party - 1:
                        continue
                    phi = _apply_local(self.projectors[j + 1, s[j]][t[j]], phi, j)
                partial = np.tensordot(psi_t.conj(), phi, axes=(axes, axes))
                r[t[party - 1]] += rho * partial.T
        return [(m + m.conj().T) / 2.0 for m in r]

    @staticmethod
    def _measurement_value(projs, ops) -> float:
        return float(np.real(sum(np.trace(p @ r) for p, r in zip(projs, ops))))

    def _sign_split(self, party: int, x: int, ops) -> None:
        w, v = hermitian_eig(ops[0] - ops[1])
        keep = w >= 0.0
        first = v[:, keep]
        second = v[:, ~keep]
        self.projectors[party, x] = [first @ first.conj().T, second @ second.conj().T]

    def _unitary_ascent(self, party: int, x: int, ops) -> None:
        d = self.dims[party - 1]
        u = self.bases[party, x]
        blocks = self.blocks[party, x]

        def value_of(basis):
            projs = [basis[:, cols] @ basis[:, cols].conj().T for cols in blocks]
            return self._measurement_value(projs, ops)

        best = value_of(u)
        step = self.cfg.ascent_step
        for _ in range(self.cfg.ascent_trials):
            z = self.rng.normal(size=(d, d)) + 1j * self.rng.normal(size=(d, d))
            k = (z - z.conj().T) / 2.0
            k /= np.linalg.norm(k)
            candidate = _expm_antihermitian(k, step) @ u
            val = value_of(candidate)
            if val > best:
                u, best = candidate, val
            else:
                step /= 2.0
                if step < 1e-9:
                    break
        self.bases[party, x] = u
        self._projectors_from_basis(party, x)

    def update_measurement(self, party: int, x: int) -> None:
        ops = self.effective_operators(party, x)
        mode = self.cfg.measurement_update
        dichotomic = len(ops) == 2
        if mode == "sign-split" and not dichotomic:
            raise ValidationError(
                [Violation("unknown-method", "sign-split requires dichotomic outcomes")]
            )
        if dichotomic and mode in ("auto", "sign-split"):
            self._sign_split(party, x, ops)
        else:
            self._unitary_ascent(party, x, ops)

    def to_strategy(self) -> QuantumStrategy:
        measurements = []
        for i in range(1, self.game.parties + 1):
            per_input = []
            for x in range(1, self.game.inputs[i - 1] + 1):
                per_input.append(
                    ProjectiveMeasurement(
                        labels=self.game.alphabet(i, x),
                        projectors=tuple(self.projectors[i, x]),
                    )
                )
            measurements.append(tuple(per_input))
        return QuantumStrategy(
            local_dims=self.dims, state=self.psi, measurements=tuple(measurements)
        )


def seesaw_quantum_value(game: NonlocalGame, cfg: SeesawConfig) -> SeesawResult:
    """Heuristic lower bound on the quantum value of a game in fixed local
    dimensions (see module docstring).  Raises :class:`DimensionCapExceeded`
    when the joint dimension exceeds ``cfg.dimension_cap`` and
    :class:`ShapeMismatch` when the dimension list does not match the game.
    """
    if len(cfg.local_dims) != game.parties:
        raise ShapeMismatch(
            f"need one local dimension per party, got {cfg.local_dims} for {game.parties} parties"
        )
    total_dim = int(np.prod(cfg.local_dims))
    if total_dim > cfg.dimension_cap:
        raise DimensionCapExceeded(
            f"joint dimension {total_dim} exceeds the cap {cfg.dimension_cap}"
        )

    best: tuple[float, QuantumStrategy, int, tuple[float, ...]] | None = None
    restart_values = []
    for restart in range(cfg.restarts):
        state = _SeesawState(game, cfg, _rng_for(cfg.rng_seed, restart))
        history: list[float] = []
        previous = -math.inf
        for _ in range(cfg.max_iters):
            state.update_state()
            for i in range(1, game.parties + 1):
                for x in range(1, game.inputs[i - 1] + 1):
                    state.update_measurement(i, x)
            value = state.objective()
            assert value >= previous - 1e-12, "see-saw objective decreased"
            history.append(value)
            if value - previous < cfg.tol:
                break
            previous = value
        strategy = state.to_strategy()
        final = quantum_game_value(game, strategy)
        restart_values.append(final)
        if best is None or final > best[0]:
            best = (final, strategy, restart, tuple(history))

    value, strategy, restart, history = best
    return SeesawResult(
        value=value,
        strategy=strategy,
        best_restart=restart,
        history=history,
        restart_values=tuple(restart_values),
    )
