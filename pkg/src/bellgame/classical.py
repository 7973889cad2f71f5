"""Exact classical values of nonlocal games by exhaustive enumeration of
deterministic strategies.

Enumeration order is an odometer over flattened response tables in
party-major, input-minor order, with each party's outcomes ranked by their
position in the declared alphabet.  The scan runs over flat strategy indices
in chunks; chunks can be evaluated concurrently and the merge compares
(value, flat index) pairs, so the argmax / argmin witnesses are independent
of the partitioning: ties within 1e-15 always resolve to the
lexicographically smallest response table.

Winning probabilities are reported exactly: the scan uses double-precision
accumulation to locate the witnesses, and the winner's value is then
re-aggregated in exact rational arithmetic as

    sum of rho_s over won settings  /  sum of all rho_s,

rounded once to double.  Dividing by the exact total makes the result
independent of the common representation error of the stored probabilities
(e.g. a uniform distribution over 9 inputs stores fl(1/9) per input, and the
ratio still comes out as the correctly rounded multiple of 1/9).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SearchSpaceTooLarge, ShapeMismatch
from .model import DeterministicStrategy, NonlocalGame

DEFAULT_CAP = 10**8
VALUE_TIE_TOL = 1e-15
_CHUNK = 1 << 20


@dataclass(frozen=True)
class ClassicalValues:
    """Exact classical window of a game with optimal witnesses."""

    p_max: float
    p_min: float
    argmax: DeterministicStrategy
    argmin: DeterministicStrategy

    def __iter__(self):
        return iter((self.p_max, self.p_min, self.argmax, self.argmin))


def check_strategy_shape(game: NonlocalGame, strat: DeterministicStrategy) -> None:
    """Raise :class:`ShapeMismatch` unless the response table matches the
    game's parties, inputs, and alphabets."""
    if strat.parties != game.parties or strat.input_counts != game.inputs:
        raise ShapeMismatch(
            f"strategy shape {strat.input_counts} does not match game inputs {game.inputs}"
        )
    for i in range(1, game.parties + 1):
        for x in range(1, game.inputs[i - 1] + 1):
            if strat.response(i, x) not in game.alphabet(i, x):
                raise ShapeMismatch(
                    f"response {strat.response(i, x)} of party {i} at input {x} "
                    f"is not in the game's alphabet {game.alphabet(i, x)}"
                )


def _exact_probability(game: NonlocalGame, won: list[tuple[int, ...]]) -> float:
    num = sum((Fraction(game.input_distribution[s]) for s in won), Fraction(0))
    den = sum(
        (Fraction(game.input_distribution[s]) for s in sorted(game.input_distribution)),
        Fraction(0),
    )
    return float(num / den)


def evaluate_strategy(game: NonlocalGame, strat: DeterministicStrategy) -> float:
    """Winning probability of a deterministic strategy (exact, see module
    docstring)."""
    check_strategy_shape(game, strat)
    won = [s for s in game.support() if strat.outputs(s) in game.truth_table[s]]
    return _exact_probability(game, won)


def _strategy_space_size(game: NonlocalGame) -> int:
    size = 1
    for i in range(1, game.parties + 1):
        for x in range(1, game.inputs[i - 1] + 1):
            size *= len(game.alphabet(i, x))
    return size


@dataclass
class _Candidate:
    value: float
    index: int


def _better_max(a: _Candidate, b: _Candidate) -> _Candidate:
    if a.value > b.value + VALUE_TIE_TOL:
        return a
    if b.value > a.value + VALUE_TIE_TOL:
        return b
    return a if a.index <= b.index else b


def _better_min(a: _Candidate, b: _Candidate) -> _Candidate:
    if a.value < b.value - VALUE_TIE_TOL:
        return a
    if b.value < a.value - VALUE_TIE_TOL:
        return b
    return a if a.index <= b.index else b


class _Enumerator:
    """Vectorized scan machinery shared by the chunks."""

    def __init__(self, game: NonlocalGame):
        self.game = game
        self.party_tables = []  # per party: (K_i, m_i) outcome-index array
        self.table_sizes = []
        for i in range(1, game.parties + 1):
            sizes = [len(game.alphabet(i, x)) for x in range(1, game.inputs[i - 1] + 1)]
            k_i = math.prod(sizes)
            digits = np.stack(
                np.unravel_index(np.arange(k_i), sizes), axis=1
            ).astype(np.int64)
            self.party_tables.append(digits)
            self.table_sizes.append(k_i)
        self.size = math.prod(self.table_sizes)
        # stride of party i in the flat strategy index (party-major odometer)
        self.strides = []
        for i in range(game.parties):
            self.strides.append(math.prod(self.table_sizes[i + 1 :]))

        self.support = game.support()
        self.per_setting = []
        for s in self.support:
            sizes = [len(game.alphabet(i + 1, s[i])) for i in range(game.parties)]
            flat_win = np.zeros(math.prod(sizes), dtype=np.float64)
            index_of = [
                {lab: k for k, lab in enumerate(game.alphabet(i + 1, s[i]))}
                for i in range(game.parties)
            ]
            for t in game.truth_table[s]:
                lin = 0
                for i in range(game.parties):
                    lin = lin * sizes[i] + index_of[i][t[i]]
                flat_win[lin] = 1.0
            factors = []
            for i in range(game.parties):
                factors.append(math.prod(sizes[i + 1 :]))
            self.per_setting.append(
                (s, game.input_distribution[s], flat_win, np.asarray(factors, dtype=np.int64))
            )

    def scan_chunk(self, start: int, stop: int) -> tuple[_Candidate, _Candidate]:
        flat = np.arange(start, stop, dtype=np.int64)
        digits = [
            (flat // self.strides[i]) % self.table_sizes[i]
            for i in range(self.game.parties)
        ]
        values = np.zeros(stop - start, dtype=np.float64)
        for s, rho, flat_win, factors in self.per_setting:
            lin = np.zeros(stop - start, dtype=np.int64)
            for i in range(self.game.parties):
                lin += factors[i] * self.party_tables[i][digits[i], s[i] - 1]
            values += rho * flat_win[lin]
        vmax = float(values.max())
        imax = int(np.argmax(values >= vmax - VALUE_TIE_TOL))
        vmin = float(values.min())
        imin = int(np.argmax(values <= vmin + VALUE_TIE_TOL))
        return (
            _Candidate(vmax, start + imax),
            _Candidate(vmin, start + imin),
        )

    def decode(self, flat_index: int) -> DeterministicStrategy:
        responses = []
        for i in range(self.game.parties):
            k = (flat_index // self.strides[i]) % self.table_sizes[i]
            idx = self.party_tables[i][k]
            responses.append(
                tuple(
                    self.game.alphabet(i + 1, x + 1)[idx[x]]
                    for x in range(self.game.inputs[i])
                )
            )
        return DeterministicStrategy(tuple(responses))


def classical_value(
    game: NonlocalGame, cap: int = DEFAULT_CAP, threads: int = 1
) -> ClassicalValues:
    """Exact max/min winning probability over all deterministic strategies.

    Raises :class:`SearchSpaceTooLarge` when the number of response tables
    exceeds ``cap`` (default 1e8).  ``threads`` splits the scan over chunks;
    the result is identical for any split.
    """
    enum = _Enumerator(game)
    if enum.size > cap:
        raise SearchSpaceTooLarge(enum.size, cap)

    chunks = [(g, min(g + _CHUNK, enum.size)) for g in range(0, enum.size, _CHUNK)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: enum.scan_chunk(*c), chunks))
    else:
        results = [enum.scan_chunk(*c) for c in chunks]

    best_max, best_min = results[0]
    for cand_max, cand_min in results[1:]:
        best_max = _better_max(best_max, cand_max)
        best_min = _better_min(best_min, cand_min)

    argmax = enum.decode(best_max.index)
    argmin = enum.decode(best_min.index)
    return ClassicalValues(
        p_max=evaluate_strategy(game, argmax),
        p_min=evaluate_strategy(game, argmin),
        argmax=argmax,
        argmin=argmin,
    )


def classical_bound(ineq, cap: int = DEFAULT_CAP, threads: int = 1) -> tuple[float, float]:
    """Exact weighted-sum bounds (S_max, S_min) of an inequality.

    Accepts a :class:`WeightedSumInequality` or a
    :class:`CorrelationInequality` (converted first).  The bounds are exact
    sums of the stored weights over the winning settings of the optimal
    strategies, so integer-weight inequalities give integer bounds; the
    classical bound of a correlation inequality is recovered as
    ``C = S_max - sum|c|``.
    """
    from .model import CorrelationInequality
    from .transform import bell_to_game, correlation_to_weighted

    if isinstance(ineq, CorrelationInequality):
        ineq = correlation_to_weighted(ineq)
    game, _ = bell_to_game(ineq)
    values = classical_value(game, cap=cap, threads=threads)
    support = game.support()
    s_max = math.fsum(
        ineq.weights[s] for s in support if values.argmax.outputs(s) in game.truth_table[s]
    )
    s_min = math.fsum(
        ineq.weights[s] for s in support if values.argmin.outputs(s) in game.truth_table[s]
    )
    return s_max, s_min
