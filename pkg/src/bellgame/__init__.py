"""bellgame: Bell inequalities <-> nonlocal games, with value solvers.

The package converts full-correlation Bell inequalities to setting-uniform
weighted-sum inequalities and on to nonlocal games (and back), computes exact
classical game values by enumerating deterministic strategies, estimates
quantum values (exactly for two-party XOR games via the vector
characterization, by see-saw lower bounds in general), and referees seeded
Monte-Carlo play.
"""

from .catalog import (
    chsh,
    continuum_gisin_predicate,
    gisin,
    gisin_quantum_max,
    three_qutrit,
)
from .classical import ClassicalValues, classical_bound, classical_value, evaluate_strategy
from .errors import (
    BadN,
    BellGameError,
    BellSpecSyntaxError,
    DimensionCapExceeded,
    MissingQuantumValue,
    NotDichotomic,
    NotHermitian,
    NotProductForm,
    NotTwoParty,
    OutOfRange,
    SearchSpaceTooLarge,
    ShapeMismatch,
    UnsupportedVectorDim,
    ValidationError,
    VersionUnsupported,
    ZeroWeight,
)
from .bellspec import parse, serialize
from .model import (
    CorrelationInequality,
    DeterministicStrategy,
    NonlocalGame,
    ProjectiveMeasurement,
    QuantumStrategy,
    ValueReport,
    Violation,
    WeightedSumInequality,
    validate,
)
from .quantum import (
    SeesawConfig,
    SeesawResult,
    XorResult,
    XorSolveConfig,
    born_rule,
    hermitian_eig,
    quantum_game_value,
    seesaw_quantum_value,
    xor_quantum_value,
    xor_to_quantum_witness,
)
from .simulate import SimReport, analytic_value, simulate
from .transform import (
    advantage,
    bell_to_game,
    correlation_to_weighted,
    game_to_bell,
    weighted_to_correlation,
)

__version__ = "0.1.0"

__all__ = [
    "BadN",
    "BellGameError",
    "BellSpecSyntaxError",
    "ClassicalValues",
    "CorrelationInequality",
    "DeterministicStrategy",
    "DimensionCapExceeded",
    "MissingQuantumValue",
    "NonlocalGame",
    "NotDichotomic",
    "NotHermitian",
    "NotProductForm",
    "NotTwoParty",
    "OutOfRange",
    "ProjectiveMeasurement",
    "QuantumStrategy",
    "SearchSpaceTooLarge",
    "SeesawConfig",
    "SeesawResult",
    "ShapeMismatch",
    "SimReport",
    "UnsupportedVectorDim",
    "ValidationError",
    "ValueReport",
    "VersionUnsupported",
    "Violation",
    "WeightedSumInequality",
    "XorResult",
    "XorSolveConfig",
    "ZeroWeight",
    "advantage",
    "analytic_value",
    "bell_to_game",
    "born_rule",
    "chsh",
    "classical_bound",
    "classical_value",
    "continuum_gisin_predicate",
    "correlation_to_weighted",
    "evaluate_strategy",
    "game_to_bell",
    "gisin",
    "gisin_quantum_max",
    "hermitian_eig",
    "parse",
    "quantum_game_value",
    "seesaw_quantum_value",
    "serialize",
    "simulate",
    "three_qutrit",
    "validate",
    "weighted_to_correlation",
    "xor_quantum_value",
    "xor_to_quantum_witness",
]
