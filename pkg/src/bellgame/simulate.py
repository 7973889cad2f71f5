"""Seeded Monte-Carlo referee.

Each round draws an input vector from the game's distribution, queries the
strategy (table lookup for deterministic strategies, Born-rule sampling for
quantum ones), and scores truth-table membership.  Rounds are processed in
batches of 2^16; batch ``b`` consumes the ``(seed, b)`` stream of
:mod:`bellgame.rng`, with round ``q`` of the batch using outputs ``2q`` (the
input draw) and ``2q + 1`` (the outcome draw).  Two uniforms are consumed per
round even when the strategy is deterministic, so the sampled input sequence
depends only on ``(seed, rounds)`` and not on the strategy under test.
Reports are therefore bit-identical for identical arguments, regardless of
how batches are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng as _rng
from .classical import check_strategy_shape as _check_deterministic_shape
from .classical import evaluate_strategy
from .errors import ShapeMismatch
from .model import DeterministicStrategy, NonlocalGame, QuantumStrategy
from .quantum import check_strategy_shape as _check_quantum_shape
from .quantum import born_rule, quantum_game_value

BATCH_ROUNDS = 1 << 16


@dataclass(frozen=True)
class SimReport:
    """Outcome of a simulation run.

    ``stderr`` is the binomial standard error sqrt(p (1 - p) / rounds) at the
    empirical rate; ``analytic_rate`` is the exact winning probability of the
    strategy when it is cheap to compute (always, for the strategies in this
    package)."""

    rounds: int
    wins: int
    empirical_rate: float
    analytic_rate: float | None
    stderr: float
    rng_seed: int

    def __post_init__(self):
        if self.rounds < 1 or not 0 <= self.wins <= self.rounds:
            raise ValueError(f"invalid counts: wins={self.wins}, rounds={self.rounds}")

    def kv_lines(self) -> str:
        """Canonical key-value rendering (17 significant digits, LF lines)."""
        lines = [
            f"rounds {self.rounds}",
            f"wins {self.wins}",
            f"empirical_rate {self.empirical_rate:.17g}",
        ]
        if self.analytic_rate is not None:
            lines.append(f"analytic_rate {self.analytic_rate:.17g}")
        lines.append(f"stderr {self.stderr:.17g}")
        lines.append(f"rng_seed {self.rng_seed}")
        return "\n".join(lines) + "\n"


def analytic_value(game: NonlocalGame, strategy) -> float:
    """Exact winning probability of a strategy, no sampling.

    Deterministic strategies evaluate through
    :func:`bellgame.classical.evaluate_strategy`; quantum strategies through
    the Born rule."""
    if isinstance(strategy, DeterministicStrategy):
        return evaluate_strategy(game, strategy)
    if isinstance(strategy, QuantumStrategy):
        return quantum_game_value(game, strategy)
    raise ShapeMismatch(f"not a strategy: {type(strategy).__name__}")


def simulate(game: NonlocalGame, strategy, rounds: int, seed: int) -> SimReport:
    """Play ``rounds`` rounds of the game with the given strategy (see the
    module docstring for the exact sampling contract)."""
    if rounds < 1:
        raise ValueError(f"rounds must be >= 1, got {rounds}")
    support = game.support()
    input_cumulative = _rng.cumulative_table([game.input_distribution[s] for s in support])

    if isinstance(strategy, DeterministicStrategy):
        _check_deterministic_shape(game, strategy)
        wins_by_input = np.array(
            [strategy.outputs(s) in game.truth_table[s] for s in support], dtype=bool
        )
        outcome_tables = None
    elif isinstance(strategy, QuantumStrategy):
        _check_quantum_shape(game, strategy)
        outcome_tables = []
        for s in support:
            dist = born_rule(strategy, s)
            tuples = list(dist)
            cum = _rng.cumulative_table([dist[t] for t in tuples])
            win = np.array([t in game.truth_table[s] for t in tuples], dtype=bool)
            outcome_tables.append((cum, win))
        wins_by_input = None
    else:
        raise ShapeMismatch(f"not a strategy: {type(strategy).__name__}")

    wins = 0
    for batch_start in range(0, rounds, BATCH_ROUNDS):
        batch = batch_start // BATCH_ROUNDS
        n = min(BATCH_ROUNDS, rounds - batch_start)
        uniforms = _rng.stream_uniforms(seed, batch, 0, 2 * n).reshape(n, 2)
        inputs = _rng.draw(input_cumulative, uniforms[:, 0])
        if wins_by_input is not None:
            wins += int(wins_by_input[inputs].sum())
        else:
            for k in range(len(support)):
                mask = inputs == k
                if not mask.any():
                    continue
                cum, win = outcome_tables[k]
                outcomes = _rng.draw(cum, uniforms[mask, 1])
                wins += int(win[outcomes].sum())

    rate = wins / rounds
    return SimReport(
        rounds=rounds,
        wins=wins,
        empirical_rate=rate,
        analytic_rate=analytic_value(game, strategy),
        stderr=math.sqrt(rate * (1.0 - rate) / rounds),
        rng_seed=seed,
    )
