import numpy as np
import pytest

import bellgame as bg
from bellgame.model import ProjectiveMeasurement


def test_catalog_values_validate_clean():
    for value in (bg.chsh(), bg.gisin(4), bg.three_qutrit()):
        assert bg.validate(value) == []


def test_zero_coefficients_dropped():
    ineq = bg.CorrelationInequality(
        parties=1, settings=(2,), coefficients={(1,): 1.0, (2,): 0.0}, classical_bound=1.0
    )
    assert ineq.coefficients == {(1,): 1.0}
    assert ineq.coefficient((2,)) == 0.0


def test_all_zero_coefficients_rejected():
    with pytest.raises(bg.ValidationError) as err:
        bg.CorrelationInequality(
            parties=1, settings=(1,), coefficients={(1,): 0.0}, classical_bound=1.0
        )
    assert "no-nonzero-coefficient" in err.value.codes


def test_coefficient_key_out_of_range():
    with pytest.raises(bg.ValidationError) as err:
        bg.CorrelationInequality(
            parties=2, settings=(2, 2), coefficients={(3, 1): 1.0}, classical_bound=1.0
        )
    assert "setting-out-of-range" in err.value.codes


def test_nonpositive_bound_rejected():
    with pytest.raises(bg.ValidationError) as err:
        bg.CorrelationInequality(
            parties=1, settings=(1,), coefficients={(1,): 1.0}, classical_bound=0.0
        )
    assert "nonpositive-bound" in err.value.codes


def _tiny_game_kwargs(rho):
    return dict(
        parties=1,
        inputs=(2,),
        outcome_alphabets=(((1, -1), (1, -1)),),
        input_distribution=rho,
        truth_table={(1,): frozenset({(1,)}), (2,): frozenset({(-1,)})},
    )


def test_unnormalized_distribution_flagged():
    with pytest.raises(bg.ValidationError) as err:
        bg.NonlocalGame(**_tiny_game_kwargs({(1,): 0.25, (2,): 0.25}))
    assert "distribution-not-normalized" in err.value.codes


def test_negative_probability_flagged():
    with pytest.raises(bg.ValidationError) as err:
        bg.NonlocalGame(**_tiny_game_kwargs({(1,): 1.5, (2,): -0.5}))
    assert "negative-probability" in err.value.codes


def test_truth_table_must_cover_support():
    kwargs = _tiny_game_kwargs({(1,): 0.5, (2,): 0.5})
    del kwargs["truth_table"][(2,)]
    with pytest.raises(bg.ValidationError) as err:
        bg.NonlocalGame(**kwargs)
    assert "truth-table-missing-setting" in err.value.codes


def test_zero_probability_needs_no_truth_entry():
    kwargs = _tiny_game_kwargs({(1,): 1.0, (2,): 0.0})
    del kwargs["truth_table"][(2,)]
    game = bg.NonlocalGame(**kwargs)
    assert game.support() == [(1,)]


def test_winning_tuple_outside_alphabet():
    kwargs = _tiny_game_kwargs({(1,): 1.0, (2,): 0.0})
    kwargs["truth_table"][(1,)] = frozenset({(7,)})
    with pytest.raises(bg.ValidationError) as err:
        bg.NonlocalGame(**kwargs)
    assert "outcome-not-in-alphabet" in err.value.codes


def test_negative_weight_flagged():
    with pytest.raises(bg.ValidationError) as err:
        bg.WeightedSumInequality(
            parties=1,
            settings=(1,),
            outcome_alphabets=(((1, -1),),),
            weights={(1,): -2.0},
            winning_sets={(1,): frozenset({(1,)})},
            s_min=0.0,
            s_max=1.0,
        )
    assert "negative-weight" in err.value.codes


def test_reversed_bounds_flagged():
    with pytest.raises(bg.ValidationError) as err:
        bg.WeightedSumInequality(
            parties=1,
            settings=(1,),
            outcome_alphabets=(((1, -1),),),
            weights={(1,): 1.0},
            winning_sets={(1,): frozenset({(1,)})},
            s_min=2.0,
            s_max=1.0,
        )
    assert "bounds-reversed" in err.value.codes


def _qubit_measurement():
    eye = np.eye(2, dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)
    return ProjectiveMeasurement(labels=(1, -1), projectors=((eye + z) / 2, (eye - z) / 2))


def test_quantum_strategy_accepts_projective_measurements():
    state = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    strat = bg.QuantumStrategy(
        local_dims=(2, 2),
        state=state,
        measurements=((_qubit_measurement(),), (_qubit_measurement(),)),
    )
    assert bg.validate(strat) == []
    assert not strat.state.flags.writeable


def test_non_idempotent_projector_flagged():
    bad = ProjectiveMeasurement(
        labels=(1, -1),
        projectors=(np.array([[0.5, 0], [0, 0]]), np.array([[0.5, 0], [0, 1]])),
    )
    with pytest.raises(bg.ValidationError) as err:
        bg.QuantumStrategy(
            local_dims=(2, 2),
            state=np.array([1, 0, 0, 0], dtype=complex),
            measurements=((bad,), (_qubit_measurement(),)),
        )
    assert "not-projective" in err.value.codes


def test_unnormalized_state_flagged():
    with pytest.raises(bg.ValidationError) as err:
        bg.QuantumStrategy(
            local_dims=(2, 2),
            state=np.array([1, 0, 0, 1], dtype=complex),
            measurements=((_qubit_measurement(),), (_qubit_measurement(),)),
        )
    assert "state-not-normalized" in err.value.codes


def test_incomplete_measurement_flagged():
    half = ProjectiveMeasurement(
        labels=(1, -1),
        projectors=(np.diag([1.0, 0.0]).astype(complex), np.zeros((2, 2), dtype=complex)),
    )
    with pytest.raises(bg.ValidationError) as err:
        bg.QuantumStrategy(
            local_dims=(2, 2),
            state=np.array([1, 0, 0, 0], dtype=complex),
            measurements=((half,), (_qubit_measurement(),)),
        )
    assert "not-complete" in err.value.codes


def test_value_report_window_check():
    witness = bg.DeterministicStrategy(((1,),))
    with pytest.raises(bg.ValidationError) as err:
        bg.ValueReport(classical_max=0.2, classical_min=0.4, witness_classical=witness)
    assert "classical-window-invalid" in err.value.codes
    report = bg.ValueReport(
        classical_max=0.75,
        classical_min=0.25,
        witness_classical=witness,
        quantum_value=0.85,
        quantum_method="exact-xor",
    )
    assert bg.validate(report) == []


def test_value_report_unknown_method():
    witness = bg.DeterministicStrategy(((1,),))
    with pytest.raises(bg.ValidationError) as err:
        bg.ValueReport(
            classical_max=0.5,
            classical_min=0.5,
            witness_classical=witness,
            quantum_value=0.6,
            quantum_method="guesswork",
        )
    assert "unknown-method" in err.value.codes


def test_values_are_frozen(chsh_ineq):
    with pytest.raises(AttributeError):
        chsh_ineq.classical_bound = 3.0


def test_negative_zero_is_normalized():
    ineq = bg.WeightedSumInequality(
        parties=1,
        settings=(1,),
        outcome_alphabets=(((1, -1),),),
        weights={(1,): 1.0},
        winning_sets={(1,): frozenset({(1,)})},
        s_min=-0.0,
        s_max=1.0,
    )
    assert str(ineq.s_min) == "0.0"  # -0.0 collapses so equal values serialize equally


def test_validate_rejects_foreign_types():
    with pytest.raises(TypeError):
        bg.validate(42)
