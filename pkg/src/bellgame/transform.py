"""Bilateral conversion between inequality representations and nonlocal games.

The pipeline is::

    CorrelationInequality  <-->  WeightedSumInequality  <-->  NonlocalGame

For a full-correlation inequality  |sum_s c_s <prod_i o_i>| <= C  substitute
<prod o> = 2 P(prod o = sign(c_s)) - 1 term by term and rearrange; the
weighted-sum form has

    w_s = 2 |c_s|,   S_max = C + sum|c|,   S_min = sum|c| - C,

with the winning set at s equal to the full product-sign class
{outputs : prod_i o_i = sign(c_s)}.  Note the lower bound: each summand of the
correlation form ranges over [-sum|c|, +sum|c|], so -C <= sum c <prod o> <= C
pins the weighted sum S = sum c <prod o> + sum|c| inside
[sum|c| - C, sum|c| + C].  (A frequently quoted variant with
S_min = C - sum|c| has the sign reversed: for CHSH it would give -2, i.e. a
negative probability bound, instead of the correct window [1/4, 3/4].)

A weighted-sum inequality becomes a game by normalizing the weights into the
input distribution, rho_s = w_s / sum w; the winning sets become the truth
table verbatim.  The inverse map reads the distribution back as weights (so
the reconstructed inequality is normalized to total weight 1) and obtains the
bounds from an exact classical solver.

Sign convention: an inequality and its global sign flip (all c_s negated)
denote the same constraint, so :func:`correlation_to_weighted` normalizes the
overall sign to make the lexicographically first nonzero coefficient positive.
Both members of the sign pair therefore map to the identical game.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable

from .errors import MissingQuantumValue, NotDichotomic, NotProductForm, ZeroWeight
from .model import (
    CorrelationInequality,
    NonlocalGame,
    ValueReport,
    WeightedSumInequality,
    setting_grid,
)

DICHOTOMIC = (1, -1)


def product_sign_class(parties: int, sign: int) -> frozenset[tuple[int, ...]]:
    """All +1/-1 output tuples whose product equals ``sign``."""
    return frozenset(
        t for t in itertools.product(DICHOTOMIC, repeat=parties) if math.prod(t) == sign
    )


def correlation_to_weighted(ineq: CorrelationInequality) -> WeightedSumInequality:
    """Rewrite a full-correlation inequality as a weighted sum of win
    probabilities (see the module docstring for the formulas).

    Settings with c_s = 0 get weight 0 and an empty winning set.  The overall
    sign is normalized first; the result is identical for ``c`` and ``-c``.
    """
    coeffs = dict(ineq.coefficients)
    first = min(coeffs)
    if coeffs[first] < 0.0:
        coeffs = {s: -c for s, c in coeffs.items()}

    abs_sum = math.fsum(abs(coeffs[s]) for s in sorted(coeffs))
    weights: dict[tuple[int, ...], float] = {}
    winning: dict[tuple[int, ...], frozenset] = {}
    pos = product_sign_class(ineq.parties, +1)
    neg = product_sign_class(ineq.parties, -1)
    for s in setting_grid(ineq.settings):
        c = coeffs.get(s, 0.0)
        weights[s] = 2.0 * abs(c)
        winning[s] = frozenset() if c == 0.0 else (pos if c > 0.0 else neg)

    alphabets = tuple(tuple(DICHOTOMIC for _ in range(m)) for m in ineq.settings)
    return WeightedSumInequality(
        parties=ineq.parties,
        settings=ineq.settings,
        outcome_alphabets=alphabets,
        weights=weights,
        winning_sets=winning,
        s_min=abs_sum - ineq.classical_bound,
        s_max=ineq.classical_bound + abs_sum,
    )


def weighted_to_correlation(ineq: WeightedSumInequality) -> CorrelationInequality:
    """Invert :func:`correlation_to_weighted`:  c_s = sign(s) * w_s / 2 and
    C = S_max - sum|c|.

    Requires every alphabet to be exactly {+1, -1} and every positive-weight
    winning set to be a full product-sign class; raises
    :class:`NotDichotomic` / :class:`NotProductForm` otherwise.  Round-trips
    exactly with :func:`correlation_to_weighted` for inequalities in the
    canonical (first-nonzero-coefficient positive) sign form.
    """
    for i in range(1, ineq.parties + 1):
        for x in range(1, ineq.settings[i - 1] + 1):
            if set(ineq.alphabet(i, x)) != {1, -1}:
                raise NotDichotomic(
                    f"party {i}, setting {x} has alphabet {ineq.alphabet(i, x)}, need {{+1, -1}}"
                )
    pos = product_sign_class(ineq.parties, +1)
    neg = product_sign_class(ineq.parties, -1)
    coeffs: dict[tuple[int, ...], float] = {}
    for s in sorted(ineq.weights):
        w = ineq.weights[s]
        if w == 0.0:
            continue
        winning = ineq.winning_sets.get(s, frozenset())
        if winning == pos:
            sign = 1.0
        elif winning == neg:
            sign = -1.0
        else:
            raise NotProductForm(
                f"winning set at {s} is not a full product-sign class "
                f"({len(winning)} of {2 ** ineq.parties} tuples)"
            )
        coeffs[s] = sign * w / 2.0
    abs_sum = math.fsum(abs(coeffs[s]) for s in sorted(coeffs))
    return CorrelationInequality(
        parties=ineq.parties,
        settings=ineq.settings,
        coefficients=coeffs,
        classical_bound=ineq.s_max - abs_sum,
    )


def bell_to_game(
    ineq: WeightedSumInequality,
) -> tuple[NonlocalGame, tuple[float, float]]:
    """Turn a weighted-sum inequality into a game: rho_s = w_s / sum w, truth
    table = winning sets.

    Returns the game together with its classical window
    ``(S_min / sum w, S_max / sum w)``.  Zero-weight settings are kept with
    probability 0 (the verifier never asks them).
    """
    total = ineq.total_weight()
    if total <= 0.0:
        raise ZeroWeight("all weights vanish; no input distribution exists")
    rho = {s: w / total for s, w in ineq.weights.items()}
    game = NonlocalGame(
        parties=ineq.parties,
        inputs=ineq.settings,
        outcome_alphabets=ineq.outcome_alphabets,
        input_distribution=rho,
        truth_table=dict(ineq.winning_sets),
    )
    return game, (ineq.s_min / total, ineq.s_max / total)


def game_to_bell(
    game: NonlocalGame,
    classical_solver: Callable[[NonlocalGame], tuple[float, float]] | None = None,
) -> WeightedSumInequality:
    """Read a game back as a weighted-sum inequality with w_s = rho_s (total
    weight 1, the canonical normalization).

    The bounds S_max/S_min are taken from ``classical_solver`` (a callable
    returning the game's exact maximal and minimal classical values); by
    default the exhaustive enumeration of :func:`bellgame.classical
    .classical_value` is used, re-aggregated over the witness strategies so
    the bounds are exact sums of the stored weights.
    """
    if classical_solver is None:
        from . import classical

        def classical_solver(g: NonlocalGame) -> tuple[float, float]:
            result = classical.classical_value(g)
            support = g.support()
            s_max = math.fsum(
                g.input_distribution[s]
                for s in support
                if result.argmax.outputs(s) in g.truth_table[s]
            )
            s_min = math.fsum(
                g.input_distribution[s]
                for s in support
                if result.argmin.outputs(s) in g.truth_table[s]
            )
            return s_max, s_min

    s_max, s_min = classical_solver(game)
    return WeightedSumInequality(
        parties=game.parties,
        settings=game.inputs,
        outcome_alphabets=game.outcome_alphabets,
        weights=dict(game.input_distribution),
        winning_sets=dict(game.truth_table),
        s_min=s_min,
        s_max=s_max,
    )


def advantage(report: ValueReport) -> float:
    """Quantum-over-classical gain:  quantum_value - classical_max."""
    if report.quantum_value is None:
        raise MissingQuantumValue("report has no quantum value")
    return report.quantum_value - report.classical_max
