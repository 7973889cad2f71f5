import itertools
import math

import pytest

import bellgame as bg


class TestChsh:
    def test_coefficients_and_bound(self):
        ineq = bg.chsh()
        assert ineq.coefficients == {(1, 1): 1.0, (1, 2): 1.0, (2, 1): 1.0, (2, 2): -1.0}
        assert ineq.classical_bound == 2.0

    def test_equals_gisin2_up_to_relabeling(self):
        # relabel both parties' settings i -> 3-i and flip the global sign
        chsh = bg.chsh()
        relabeled = {
            (3 - i, 3 - j): -c for (i, j), c in chsh.coefficients.items()
        }
        assert relabeled == bg.gisin(2).coefficients
        # the derived games have identical value windows
        _, chsh_window = bg.bell_to_game(bg.correlation_to_weighted(chsh))
        _, gisin_window = bg.bell_to_game(bg.correlation_to_weighted(bg.gisin(2)))
        assert chsh_window == gisin_window

    def test_game_window(self):
        _, window = bg.bell_to_game(bg.correlation_to_weighted(bg.chsh()))
        assert window == (0.25, 0.75)


class TestGisin:
    def test_matrix_n2(self):
        ineq = bg.gisin(2)
        assert ineq.coefficients == {(1, 1): 1.0, (1, 2): -1.0, (2, 1): -1.0, (2, 2): -1.0}
        assert ineq.classical_bound == 2.0

    def test_bounds_follow_parity(self):
        assert bg.gisin(3).classical_bound == 5.0
        assert bg.gisin(4).classical_bound == 8.0
        assert bg.gisin(7).classical_bound == 25.0

    def test_sign_pattern(self):
        n = 6
        ineq = bg.gisin(n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert ineq.coefficients[(i, j)] == (1.0 if i + j <= n else -1.0)

    def test_sign_counts(self):
        # i + j <= n has n(n-1)/2 solutions in the n x n grid
        for n in range(2, 21):
            coeffs = bg.gisin(n).coefficients
            positive = sum(1 for c in coeffs.values() if c > 0)
            negative = sum(1 for c in coeffs.values() if c < 0)
            assert positive == n * (n - 1) // 2
            assert negative == n * (n + 1) // 2

    def test_enumerated_bound_matches_closed_form(self):
        for n in range(2, 7):
            s_max, _ = bg.classical_bound(bg.gisin(n))
            ineq = bg.gisin(n)
            assert s_max - ineq.abs_coefficient_sum() == ineq.classical_bound

    def test_bad_n(self):
        with pytest.raises(bg.BadN):
            bg.gisin(1)
        with pytest.raises(bg.BadN):
            bg.gisin_quantum_max(0)


class TestGisinQuantumMax:
    def test_small_n(self):
        assert bg.gisin_quantum_max(2) == pytest.approx(0.8535534, abs=1e-7)
        assert bg.gisin_quantum_max(3) == pytest.approx(5.0 / 6.0, abs=1e-12)

    def test_large_n_limit(self):
        assert bg.gisin_quantum_max(10**6) == pytest.approx(0.5 + 1.0 / math.pi, abs=1e-9)

    def test_decreasing_in_n(self):
        values = [bg.gisin_quantum_max(n) for n in range(2, 30)]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestThreeQutrit:
    def test_weights_and_bounds(self):
        ineq = bg.three_qutrit()
        assert ineq.weights[(2, 2, 2)] == 2.0
        assert sum(ineq.weights.values()) == 9.0
        assert (ineq.s_min, ineq.s_max) == (0.0, 6.0)
        assert ineq.alphabet(1, 1) == (1, 0, -1)

    def test_winning_set_sizes(self):
        ineq = bg.three_qutrit()
        expected_sizes = {
            (1, 1, 1): 9,
            (1, 1, 2): 18,
            (1, 2, 1): 18,
            (1, 2, 2): 9,
            (2, 1, 1): 18,
            (2, 1, 2): 9,
            (2, 2, 1): 9,
            (2, 2, 2): 9,
        }
        for s, size in expected_sizes.items():
            assert len(ineq.winning_sets[s]) == size

    def test_first_setting_is_sum_zero(self):
        ineq = bg.three_qutrit()
        expected = frozenset(
            t
            for t in itertools.product((1, 0, -1), repeat=3)
            if sum(t) % 3 == 0
        )
        assert ineq.winning_sets[(1, 1, 1)] == expected

    def test_mixed_setting_is_sum_not_two(self):
        ineq = bg.three_qutrit()
        expected = frozenset(
            t
            for t in itertools.product((1, 0, -1), repeat=3)
            if sum(t) % 3 != 2
        )
        assert ineq.winning_sets[(1, 1, 2)] == expected

    def test_game_distribution(self):
        game, _ = bg.bell_to_game(bg.three_qutrit())
        assert game.input_distribution[(2, 2, 2)] == 2.0 / 9.0
        assert game.input_distribution[(1, 2, 1)] == 1.0 / 9.0


class TestContinuumPredicate:
    def test_identical_outputs_win_below_diagonal(self):
        assert bg.continuum_gisin_predicate(0.3, 0.4, 1, 1)

    def test_opposite_outputs_win_above_diagonal(self):
        assert bg.continuum_gisin_predicate(0.7, 0.7, 1, -1)

    def test_boundary_counts_as_identical_region(self):
        assert not bg.continuum_gisin_predicate(0.5, 0.5, 1, -1)
        assert bg.continuum_gisin_predicate(0.5, 0.5, -1, -1)

    def test_out_of_range(self):
        with pytest.raises(bg.OutOfRange):
            bg.continuum_gisin_predicate(1.5, 0.0, 1, 1)
        with pytest.raises(bg.OutOfRange):
            bg.continuum_gisin_predicate(0.5, 0.5, 2, 1)
