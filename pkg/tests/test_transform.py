import itertools
import math

import numpy as np
import pytest

import bellgame as bg
from bellgame.transform import product_sign_class

from conftest import games_close, random_correlation, random_game


EQUAL_PAIRS = frozenset({(1, 1), (-1, -1)})
UNEQUAL_PAIRS = frozenset({(1, -1), (-1, 1)})


class TestCorrelationToWeighted:
    def test_chsh(self, chsh_ineq):
        w = bg.correlation_to_weighted(chsh_ineq)
        assert all(w.weights[s] == 2.0 for s in w.weights) and len(w.weights) == 4
        assert (w.s_min, w.s_max) == (2.0, 6.0)
        for s in ((1, 1), (1, 2), (2, 1)):
            assert w.winning_sets[s] == EQUAL_PAIRS
        assert w.winning_sets[(2, 2)] == UNEQUAL_PAIRS

    def test_single_party(self):
        ineq = bg.CorrelationInequality(
            parties=1, settings=(1,), coefficients={(1,): 1.0}, classical_bound=1.0
        )
        w = bg.correlation_to_weighted(ineq)
        assert w.weights == {(1,): 2.0}
        assert (w.s_min, w.s_max) == (0.0, 2.0)
        assert w.winning_sets[(1,)] == frozenset({(1,)})

    def test_gisin3_bounds(self):
        w = bg.correlation_to_weighted(bg.gisin(3))
        assert all(value == 2.0 for value in w.weights.values())
        assert w.s_max == 14.0  # bound 5 plus |c| sum 9
        assert w.s_min == 4.0

    def test_zero_coefficient_setting_gets_zero_weight(self):
        ineq = bg.CorrelationInequality(
            parties=2, settings=(2, 2), coefficients={(1, 1): 1.0}, classical_bound=1.0
        )
        w = bg.correlation_to_weighted(ineq)
        assert w.weights[(2, 2)] == 0.0
        assert w.winning_sets[(2, 2)] == frozenset()


class TestWeightedToCorrelation:
    def test_chsh_round_trip_exact(self, chsh_ineq):
        assert bg.weighted_to_correlation(bg.correlation_to_weighted(chsh_ineq)) == chsh_ineq

    def test_three_outcome_inequality_rejected(self, qutrit_ineq):
        with pytest.raises(bg.NotDichotomic):
            bg.weighted_to_correlation(qutrit_ineq)

    def test_partial_winning_set_rejected(self, chsh_ineq):
        w = bg.correlation_to_weighted(chsh_ineq)
        tampered = dict(w.winning_sets)
        tampered[(1, 1)] = frozenset({(1, 1)})
        broken = bg.WeightedSumInequality(
            parties=w.parties,
            settings=w.settings,
            outcome_alphabets=w.outcome_alphabets,
            weights=w.weights,
            winning_sets=tampered,
            s_min=w.s_min,
            s_max=w.s_max,
        )
        with pytest.raises(bg.NotProductForm):
            bg.weighted_to_correlation(broken)


class TestBellToGame:
    def test_chsh_window(self, chsh_ineq):
        game, window = bg.bell_to_game(bg.correlation_to_weighted(chsh_ineq))
        assert window == (0.25, 0.75)
        assert all(game.input_distribution[s] == 0.25 for s in game.input_distribution)

    def test_gisin_distribution_uniform(self):
        for n in (2, 3, 4):
            game, _ = bg.bell_to_game(bg.correlation_to_weighted(bg.gisin(n)))
            assert all(p == 1.0 / n**2 for p in game.input_distribution.values())

    def test_three_qutrit_distribution_and_window(self, qutrit_ineq):
        game, window = bg.bell_to_game(qutrit_ineq)
        for s, p in game.input_distribution.items():
            assert p == (2.0 / 9.0 if s == (2, 2, 2) else 1.0 / 9.0)
        assert window == (0.0, 6.0 / 9.0)

    def test_distribution_normalized(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            ineq = bg.correlation_to_weighted(random_correlation(rng))
            game, _ = bg.bell_to_game(ineq)
            total = math.fsum(sorted(game.input_distribution.values()))
            assert abs(total - 1.0) <= 1e-12


class TestGameToBell:
    def test_chsh_round_trip_scales_weights(self, chsh_ineq):
        w = bg.correlation_to_weighted(chsh_ineq)
        game, _ = bg.bell_to_game(w)
        back = bg.game_to_bell(game)
        assert back.winning_sets == w.winning_sets
        for s in w.weights:
            assert back.weights[s] == w.weights[s] / 8.0
        assert back.s_max == w.s_max / 8.0 and back.s_min == w.s_min / 8.0

    def test_always_winning_game(self):
        all_pairs = frozenset(itertools.product((1, -1), repeat=2))
        game = bg.NonlocalGame(
            parties=2,
            inputs=(1, 1),
            outcome_alphabets=(((1, -1),), ((1, -1),)),
            input_distribution={(1, 1): 1.0},
            truth_table={(1, 1): all_pairs},
        )
        back = bg.game_to_bell(game)
        assert back.s_min == back.s_max == 1.0

    def test_three_qutrit_s_max(self, qutrit_game):
        back = bg.game_to_bell(qutrit_game)
        assert back.s_max == 2.0 / 3.0

    def test_custom_solver_is_used(self, chsh_game):
        calls = []

        def fake_solver(game):
            calls.append(game)
            return 0.9, 0.1

        back = bg.game_to_bell(chsh_game, classical_solver=fake_solver)
        assert calls and (back.s_max, back.s_min) == (0.9, 0.1)


class TestAdvantage:
    def test_chsh_gap(self, chsh_ineq):
        xor = bg.xor_quantum_value(chsh_ineq)
        report = bg.ValueReport(
            classical_max=0.75,
            classical_min=0.25,
            witness_classical=bg.DeterministicStrategy(((1, 1), (1, 1))),
            quantum_value=xor.value,
            quantum_method="exact-xor",
        )
        assert bg.advantage(report) == pytest.approx(0.10355339059, abs=1e-9)

    def test_equal_values_give_zero(self):
        report = bg.ValueReport(
            classical_max=0.5,
            classical_min=0.5,
            witness_classical=bg.DeterministicStrategy(((1,),)),
            quantum_value=0.5,
            quantum_method="seesaw-lower-bound",
        )
        assert bg.advantage(report) == 0.0

    def test_missing_quantum_value(self):
        report = bg.ValueReport(
            classical_max=0.5,
            classical_min=0.5,
            witness_classical=bg.DeterministicStrategy(((1,),)),
        )
        with pytest.raises(bg.MissingQuantumValue):
            bg.advantage(report)


class TestRoundTripProperties:
    def test_correlation_round_trip_exact(self):
        rng = np.random.default_rng(101)
        for _ in range(100):
            ineq = random_correlation(rng)
            again = bg.weighted_to_correlation(bg.correlation_to_weighted(ineq))
            assert again == ineq

    def test_game_round_trip_close(self):
        rng = np.random.default_rng(202)
        for _ in range(100):
            game = random_game(rng)
            rebuilt, _ = bg.bell_to_game(bg.game_to_bell(game))
            assert games_close(game, rebuilt, tol=1e-12)

    def test_sign_flip_gives_identical_game(self):
        rng = np.random.default_rng(303)
        for _ in range(100):
            ineq = random_correlation(rng)
            flipped = bg.CorrelationInequality(
                parties=ineq.parties,
                settings=ineq.settings,
                coefficients={s: -c for s, c in ineq.coefficients.items()},
                classical_bound=ineq.classical_bound,
            )
            game, window = bg.bell_to_game(bg.correlation_to_weighted(ineq))
            game_flipped, window_flipped = bg.bell_to_game(
                bg.correlation_to_weighted(flipped)
            )
            assert game == game_flipped
            assert window == window_flipped

    def test_window_matches_bounds_exactly(self):
        rng = np.random.default_rng(404)
        for _ in range(50):
            weighted = bg.correlation_to_weighted(random_correlation(rng))
            _, window = bg.bell_to_game(weighted)
            total = weighted.total_weight()
            assert window == (weighted.s_min / total, weighted.s_max / total)


def test_product_sign_class_sizes():
    for n in range(1, 5):
        pos = product_sign_class(n, +1)
        neg = product_sign_class(n, -1)
        assert len(pos) + len(neg) == 2**n
        assert len(pos) == 2 ** (n - 1)
        assert all(math.prod(t) == 1 for t in pos)
        assert all(math.prod(t) == -1 for t in neg)
