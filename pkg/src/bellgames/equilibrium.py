"""Certification of equilibrium points under classical, quantum and no-signaling advice.

A player deviates unilaterally: the advice source and the other player's
strategy stay fixed. For every advice class the deviating player may rewire
what they receive, i.e. answer ``d(own type, received output)`` for some
deterministic map ``d``. With quantum advice they may also change their
measurements. Stochastic rewirings are mixtures of deterministic ones and
never do better, so only deterministic maps are considered.

The payoff of a rewired behavior is additive over the pairs (own type,
received output), so the best rewiring is found one pair at a time; this
is exactly the maximum over all ``n_actions ** (n_types * n_actions)`` maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bell import payoff_to_bell
from .classical import ClassicalMixture
from .errors import SignalingError, UnsupportedScenarioError
from .game import NS_TOL, Behavior, Game, PayoffVector, average_payoffs, is_no_signaling
from .quantum import QuantumStrategy, quantum_behavior, response_terms

EPS_EXACT = 1e-9
EPS_QUANTUM = 1e-6

CLASSICAL = "classical"
QUANTUM = "quantum"
NO_SIGNALING = "no-signaling"


@dataclass(frozen=True)
class EquilibriumReport:
    advice_class: str
    incumbent: PayoffVector
    gains: tuple[float, float]
    epsilon: float
    is_equilibrium: bool
    best_deviation: tuple = field(default=(None, None))

    def as_dict(self) -> dict:
        return {
            "advice_class": self.advice_class,
            "incumbent": list(self.incumbent),
            "gains": list(self.gains),
            "epsilon": self.epsilon,
            "is_equilibrium": self.is_equilibrium,
            "best_deviation": list(self.best_deviation),
        }


def apply_wiring(b: Behavior, player: int, wiring) -> Behavior:
    """Behavior after ``player`` answers ``wiring[x][a]`` on receiving output ``a`` at type ``x``."""
    wiring = np.asarray(wiring, dtype=int)
    k = b.n_actions[player - 1]
    onehot = np.eye(k)[wiring]  # [x][a][a']
    if player == 1:
        return Behavior(np.einsum("ijab,iac->ijcb", b.p, onehot))
    return Behavior(np.einsum("ijab,jbc->ijac", b.p, onehot))


def best_wiring(g: Game, b: Behavior, player: int) -> tuple[float, np.ndarray]:
    """Highest payoff ``player`` reaches by rewiring, and a wiring attaining it."""
    weighted = g.prior[:, :, None, None] * g.payoff(player)
    if player == 1:
        # score[x1, a_received, a_played]
        score = np.einsum("ijcb,ijab->iac", weighted, b.p)
    else:
        score = np.einsum("ijac,ijab->jbc", weighted, b.p)
    wiring = score.argmax(axis=2)
    return float(score.max(axis=2).sum()), wiring


def _wiring_report(g: Game, b: Behavior, epsilon: float, advice_class: str) -> EquilibriumReport:
    incumbent = average_payoffs(g, b)
    gains, deviations = [], []
    for player in (1, 2):
        value, wiring = best_wiring(g, b, player)
        gains.append(value - incumbent[player - 1])
        deviations.append({"wiring": wiring.tolist()})
    gains_t = (float(gains[0]), float(gains[1]))
    return EquilibriumReport(
        advice_class, incumbent, gains_t, epsilon, max(gains_t) <= epsilon, tuple(deviations)
    )


def check_wiring_equilibrium(g: Game, b: Behavior, epsilon: float = EPS_EXACT) -> EquilibriumReport:
    ok, violation = is_no_signaling(b, NS_TOL)
    if not ok:
        raise SignalingError(f"behavior signals (marginal change {violation:.3g})")
    return _wiring_report(g, b, epsilon, NO_SIGNALING)


def check_classical_equilibrium(
    g: Game, m: ClassicalMixture, epsilon: float = EPS_EXACT
) -> EquilibriumReport:
    """Correlated-equilibrium test: recommendations ``s_i(x_i)`` drawn from the mixture."""
    return _wiring_report(g, m.behavior(g.n_actions), epsilon, CLASSICAL)


def quantum_deviation(g: Game, s: QuantumStrategy, player: int) -> tuple[float, list]:
    """Best payoff for ``player`` re-choosing, per type, a measurement or a fixed answer."""
    offset, vec, const = response_terms(payoff_to_bell(g, player), s, player)
    norms = np.linalg.norm(vec, axis=1)
    total = offset
    choice = []
    for x, (n, c) in enumerate(zip(norms, const)):
        if abs(c) > n:
            total += abs(c)
            choice.append({"type": x, "answer": 0 if c > 0 else 1})
        else:
            total += n
            direction = vec[x] / n if n > 0 else (s.meas1 if player == 1 else s.meas2)[x]
            choice.append({"type": x, "measure": [float(v) for v in direction]})
    return float(total), choice


def check_quantum_equilibrium(
    g: Game, s: QuantumStrategy, epsilon: float = EPS_QUANTUM
) -> EquilibriumReport:
    if not g.is_binary:
        raise UnsupportedScenarioError(f"quantum strategies need binary actions, got {g.n_actions}")
    b = quantum_behavior(s)
    incumbent = average_payoffs(g, b)
    gains, deviations = [], []
    for player in (1, 2):
        q_value, q_choice = quantum_deviation(g, s, player)
        w_value, wiring = best_wiring(g, b, player)
        if w_value > q_value:
            gains.append(w_value - incumbent[player - 1])
            deviations.append({"wiring": wiring.tolist()})
        else:
            gains.append(q_value - incumbent[player - 1])
            deviations.append({"measurements": q_choice})
    gains_t = (float(gains[0]), float(gains[1]))
    return EquilibriumReport(
        QUANTUM, incumbent, gains_t, epsilon, max(gains_t) <= epsilon, tuple(deviations)
    )
