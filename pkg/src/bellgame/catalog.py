"""Built-in inequalities: CHSH, the Gisin n x n family, and a three-qutrit
weighted-sum inequality, plus the continuum limit of the Gisin game as a
predicate.

Setting indices are 1-based so coefficient matrices can be read off directly.
"""

from __future__ import annotations

import itertools
import math

from .errors import BadN, OutOfRange
from .model import CorrelationInequality, WeightedSumInequality

DICHOTOMIC = (1, -1)


def chsh() -> CorrelationInequality:
    """The CHSH inequality: coefficients +1, +1, +1, -1 with bound 2."""
    return CorrelationInequality(
        parties=2,
        settings=(2, 2),
        coefficients={(1, 1): 1.0, (1, 2): 1.0, (2, 1): 1.0, (2, 2): -1.0},
        classical_bound=2.0,
    )


def gisin(n: int) -> CorrelationInequality:
    """The two-qubit n x n-settings family with c_ij = +1 iff i + j <= n.

    The classical bound is n^2/2 for even n and (n^2 + 1)/2 for odd n.
    ``gisin(2)`` is the CHSH inequality up to relabeling the settings of both
    parties and a global sign flip.
    """
    if not isinstance(n, int) or n < 2:
        raise BadN(f"family is defined for integer n >= 2, got {n!r}")
    coeffs = {
        (i, j): (1.0 if i + j <= n else -1.0)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }
    bound = n * n / 2 if n % 2 == 0 else (n * n + 1) / 2
    return CorrelationInequality(
        parties=2, settings=(n, n), coefficients=coeffs, classical_bound=bound
    )


def gisin_quantum_max(n: int) -> float:
    """Closed-form maximal quantum winning probability of the Gisin game:

        cos(pi / 2n) / (n sin(pi / n)) + 1/2

    As n grows this converges to 1/2 + 1/pi (about 0.8183).
    """
    if not isinstance(n, int) or n < 2:
        raise BadN(f"family is defined for integer n >= 2, got {n!r}")
    return math.cos(math.pi / (2 * n)) / (n * math.sin(math.pi / n)) + 0.5


QUTRIT_LABELS = (1, 0, -1)

# per setting vector: weight and the mod-3 condition on o_A + o_B + o_C
_QUTRIT_CONDITIONS = (
    ((1, 1, 1), 1.0, ("eq", 0)),
    ((1, 1, 2), 1.0, ("ne", 2)),
    ((1, 2, 1), 1.0, ("ne", 2)),
    ((1, 2, 2), 1.0, ("eq", 1)),
    ((2, 1, 1), 1.0, ("ne", 2)),
    ((2, 1, 2), 1.0, ("eq", 1)),
    ((2, 2, 1), 1.0, ("eq", 1)),
    ((2, 2, 2), 2.0, ("eq", 0)),
)


def _mod3_tuples(kind: str, residue: int) -> frozenset[tuple[int, ...]]:
    out = []
    for t in itertools.product(QUTRIT_LABELS, repeat=3):
        r = sum(t) % 3
        if (r == residue) if kind == "eq" else (r != residue):
            out.append(t)
    return frozenset(out)


def three_qutrit() -> WeightedSumInequality:
    """A three-party inequality with ternary outcomes {1, 0, -1} over two
    settings per party.

    Winning sets are mod-3 conditions on the sum of the three outputs; every
    weight is 1 except setting (2,2,2), which carries weight 2.  The bounds
    are 0 <= S <= 6 with total weight 9, so the classical game window is
    [0, 2/3].
    """
    weights = {s: w for s, w, _ in _QUTRIT_CONDITIONS}
    winning = {s: _mod3_tuples(kind, r) for s, _, (kind, r) in _QUTRIT_CONDITIONS}
    alphabet = tuple((QUTRIT_LABELS, QUTRIT_LABELS) for _ in range(3))
    return WeightedSumInequality(
        parties=3,
        settings=(2, 2, 2),
        outcome_alphabets=alphabet,
        weights=weights,
        winning_sets=winning,
        s_min=0.0,
        s_max=6.0,
    )


def continuum_gisin_predicate(alpha: float, beta: float, o_a: int, o_b: int) -> bool:
    """Continuum limit of the Gisin game: inputs become reals in [0, 1] and the
    players win by returning identical outputs when alpha + beta <= 1 and
    opposite outputs otherwise.  The boundary alpha + beta = 1 belongs to the
    identical-output region.

    Demo predicate only; no solver operates on the continuum game.
    """
    if not (0.0 <= alpha <= 1.0) or not (0.0 <= beta <= 1.0):
        raise OutOfRange(f"inputs must lie in [0, 1], got ({alpha!r}, {beta!r})")
    if o_a not in (1, -1) or o_b not in (1, -1):
        raise OutOfRange(f"outputs must be +1 or -1, got ({o_a!r}, {o_b!r})")
    return (o_a == o_b) != (alpha + beta > 1.0)
