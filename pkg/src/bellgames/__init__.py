"""Bayesian games as Bell scenarios.

Average payoffs of a two-player Bayesian game are Bell expressions, so the
payoffs reachable with classical, quantum or no-signaling advice are bounded
by the corresponding local, quantum and no-signaling values.
"""

__version__ = "0.1.0"

from .bell import BellExpression, FacetInequality, combine_payoffs, evaluate, payoff_to_bell
from .classical import (
    ClassicalMixture,
    DeterministicStrategy,
    PayoffPolytope,
    classical_payoff_polytope,
    enumerate_deterministic,
    facet_check,
    local_bound,
)
from .equilibrium import (
    EquilibriumReport,
    check_classical_equilibrium,
    check_quantum_equilibrium,
    check_wiring_equilibrium,
)
from .errors import (
    BellGameError,
    DimensionError,
    GameSyntaxError,
    GameValidationError,
    InvalidBehaviorError,
    ResourceLimitError,
    SignalingError,
    UnsupportedScenarioError,
)
from .game import (
    Behavior,
    Game,
    PayoffVector,
    average_payoffs,
    correlator,
    is_no_signaling,
    validate_game,
)
from .gamefile import format_game, load_bundled, parse_game
from .nosignaling import NSConstraintSystem, ns_maximize, ns_payoff_point, pr_box
from .quantum import (
    OptimizationResult,
    QuantumStrategy,
    chsh_optimal_strategy,
    quantum_behavior,
    quantum_best_response,
    quantum_payoff_region_boundary,
    seesaw_maximize,
)
