"""Shared fixtures and random-instance generators.

Random games carry dyadic input probabilities (integer counts over a
power-of-two denominator), so their distributions sum to exactly 1.0 in
double precision and conversion round trips are exact.  Random correlation
inequalities use dyadic coefficients in canonical sign form (first nonzero
coefficient positive) for the same reason.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

import bellgame as bg


@pytest.fixture
def chsh_ineq():
    return bg.chsh()


@pytest.fixture
def chsh_game(chsh_ineq):
    game, _ = bg.bell_to_game(bg.correlation_to_weighted(chsh_ineq))
    return game


@pytest.fixture
def qutrit_ineq():
    return bg.three_qutrit()


@pytest.fixture
def qutrit_game(qutrit_ineq):
    game, _ = bg.bell_to_game(qutrit_ineq)
    return game


@pytest.fixture(scope="session")
def chsh_quantum_witness():
    result = bg.xor_quantum_value(bg.chsh(), bg.XorSolveConfig(rng_seed=11))
    return bg.xor_to_quantum_witness(result.row_vectors, result.col_vectors)


@pytest.fixture(scope="session")
def qutrit_seesaw():
    """Converged see-saw on the three-qutrit game (shared: it is the slow one)."""
    game, _ = bg.bell_to_game(bg.three_qutrit())
    cfg = bg.SeesawConfig(local_dims=(3, 3, 3), restarts=6, rng_seed=7)
    return bg.seesaw_quantum_value(game, cfg)


LABEL_POOL = (-3, -2, -1, 0, 1, 2, 3)


def random_game(rng: np.random.Generator, denom: int = 64) -> bg.NonlocalGame:
    parties = int(rng.integers(1, 4))
    inputs = tuple(int(rng.integers(1, 4)) for _ in range(parties))
    alphabets = []
    for i in range(parties):
        per_input = []
        for _ in range(inputs[i]):
            k = int(rng.integers(1, 4))
            labels = rng.choice(LABEL_POOL, size=k, replace=False)
            per_input.append(tuple(int(l) for l in labels))
        alphabets.append(tuple(per_input))
    settings = list(itertools.product(*(range(1, m + 1) for m in inputs)))
    counts = rng.multinomial(denom, [1.0 / len(settings)] * len(settings))
    rho = {s: int(c) / denom for s, c in zip(settings, counts)}
    truth = {}
    for s in settings:
        tuples = list(itertools.product(*(alphabets[i][s[i] - 1] for i in range(parties))))
        keep = [t for t in tuples if rng.random() < 0.5]
        truth[s] = frozenset(keep)
    return bg.NonlocalGame(
        parties=parties,
        inputs=inputs,
        outcome_alphabets=tuple(alphabets),
        input_distribution=rho,
        truth_table=truth,
    )


def random_correlation(rng: np.random.Generator) -> bg.CorrelationInequality:
    parties = int(rng.integers(1, 4))
    settings = tuple(int(rng.integers(1, 4)) for _ in range(parties))
    grid = list(itertools.product(*(range(1, m + 1) for m in settings)))
    coeffs = {}
    for s in grid:
        if rng.random() < 0.7:
            c = int(rng.integers(1, 9)) / 4.0
            coeffs[s] = c if rng.random() < 0.5 else -c
    if not coeffs:
        coeffs[grid[0]] = 1.0
    first = min(coeffs)
    if coeffs[first] < 0:
        coeffs = {s: -c for s, c in coeffs.items()}
    abs_sum = sum(abs(c) for c in coeffs.values())
    bound = int(rng.integers(1, max(2, int(abs_sum * 4)))) / 4.0
    return bg.CorrelationInequality(
        parties=parties, settings=settings, coefficients=coeffs, classical_bound=bound
    )


def random_deterministic(rng: np.random.Generator, game: bg.NonlocalGame):
    responses = []
    for i in range(1, game.parties + 1):
        row = []
        for x in range(1, game.inputs[i - 1] + 1):
            alphabet = game.alphabet(i, x)
            row.append(alphabet[int(rng.integers(0, len(alphabet)))])
        responses.append(tuple(row))
    return bg.DeterministicStrategy(tuple(responses))


def games_close(g1: bg.NonlocalGame, g2: bg.NonlocalGame, tol: float = 1e-12) -> bool:
    if (
        g1.parties != g2.parties
        or g1.inputs != g2.inputs
        or g1.outcome_alphabets != g2.outcome_alphabets
        or g1.truth_table != g2.truth_table
        or set(g1.input_distribution) != set(g2.input_distribution)
    ):
        return False
    return all(
        abs(g1.input_distribution[s] - g2.input_distribution[s]) <= tol
        for s in g1.input_distribution
    )
