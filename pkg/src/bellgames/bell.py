"""Bell expressions built from payoff functions.

A payoff function weighted by the prior is already a Bell expression: its
coefficient tensor is ``alpha = mu * f``. The same holds for any linear
combination of the two players' payoffs, which is how the facets of the
classical payoff region become Bell inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import UnsupportedScenarioError
from .game import Behavior, Game, _check_shape


@dataclass(frozen=True, eq=False)
class BellExpression:
    alpha: np.ndarray
    label: str = ""

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=float)
        if alpha.ndim != 4:
            raise ValueError(f"coefficient tensor must have 4 indices, got shape {alpha.shape}")
        if not np.all(np.isfinite(alpha)):
            raise ValueError("coefficient tensor has non-finite entries")
        alpha.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.alpha.shape

    @property
    def n_types(self) -> tuple[int, int]:
        return self.alpha.shape[:2]

    @property
    def n_actions(self) -> tuple[int, int]:
        return self.alpha.shape[2:]

    @classmethod
    def zeros(cls, shape) -> BellExpression:
        return cls(np.zeros(shape), label="zero")

    def __add__(self, other: BellExpression) -> BellExpression:
        return BellExpression(self.alpha + other.alpha)

    def __mul__(self, c: float) -> BellExpression:
        return BellExpression(c * self.alpha, label=self.label)

    __rmul__ = __mul__


class FacetInequality(NamedTuple):
    """``beta[0] * F1 + beta[1] * F2 <= beta0``."""

    beta: tuple[float, float]
    beta0: float

    def slack(self, point) -> float:
        return self.beta0 - (self.beta[0] * point[0] + self.beta[1] * point[1])


def payoff_to_bell(g: Game, player: int) -> BellExpression:
    return BellExpression(g.prior[:, :, None, None] * g.payoff(player), label=f"{g.label} F{player}")


def combine_payoffs(g: Game, beta) -> BellExpression:
    b1, b2 = (float(v) for v in beta)
    weighted = g.prior[:, :, None, None] * (b1 * g.payoff1 + b2 * g.payoff2)
    return BellExpression(weighted, label=f"{g.label} {b1:g}*F1{b2:+g}*F2")


def evaluate(e: BellExpression, b: Behavior) -> float:
    _check_shape(e.shape, b, "expression")
    return float(np.sum(e.alpha * b.p))


def correlator_form(e: BellExpression) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Rewrite a binary-outcome expression in terms of +-1 expectation values.

    Returns ``(c0, c1, c2, c12)``, each indexed ``[x1][x2]``, such that
    ``S = sum c0 + c1 <A_x1> + c2 <B_x2> + c12 <A_x1 B_x2>`` where action 0
    corresponds to outcome +1 and action 1 to outcome -1.
    """
    if e.n_actions != (2, 2):
        raise UnsupportedScenarioError(f"correlator form needs binary actions, got {e.n_actions}")
    s = np.array([1.0, -1.0])
    a = e.alpha / 4.0
    c0 = a.sum(axis=(2, 3))
    c1 = np.einsum("ijab,a->ij", a, s)
    c2 = np.einsum("ijab,b->ij", a, s)
    c12 = np.einsum("ijab,a,b->ij", a, s, s)
    return c0, c1, c2, c12
