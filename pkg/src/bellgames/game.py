"""Two-player Bayesian games, behaviors and average payoffs.

A game is stored in normal form. The states of Nature are the type tuples
``(x1, x2)``, so each player's type map is simply the projection onto their
own coordinate and is not stored. All tensors are indexed
``[x1][x2][a1][a2]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, InvalidBehaviorError, UnsupportedScenarioError

PRIOR_TOL = 1e-12
NORM_TOL = 1e-9
NS_TOL = 1e-7
CLAMP_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Game:
    """Normal form of a two-player Bayesian game.

    ``n_types`` and ``n_actions`` are declared separately from the tensors so
    that :func:`validate_game` can report inconsistent shapes rather than
    silently inferring them.
    """

    n_types: tuple[int, int]
    n_actions: tuple[int, int]
    prior: np.ndarray
    payoff1: np.ndarray
    payoff2: np.ndarray
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "n_types", tuple(int(n) for n in self.n_types))
        object.__setattr__(self, "n_actions", tuple(int(n) for n in self.n_actions))
        for name in ("prior", "payoff1", "payoff2"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return (*self.n_types, *self.n_actions)

    def payoff(self, player: int) -> np.ndarray:
        if player not in (1, 2):
            raise ValueError(f"player must be 1 or 2, got {player!r}")
        return self.payoff1 if player == 1 else self.payoff2

    @property
    def is_binary(self) -> bool:
        return self.n_actions == (2, 2)


@dataclass(frozen=True, eq=False)
class Behavior:
    """Joint conditional distribution ``P(a1, a2 | x1, x2)``.

    Entries in ``[-1e-12, 0)`` are clamped to zero; anything more negative,
    or a conditional distribution that does not sum to one within ``1e-9``,
    raises :class:`InvalidBehaviorError`.
    """

    p: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 4:
            raise DimensionError(f"behavior must be a 4-index tensor, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise InvalidBehaviorError("behavior has non-finite entries")
        if p.min(initial=0.0) < -CLAMP_TOL:
            idx = np.unravel_index(np.argmin(p), p.shape)
            raise InvalidBehaviorError(f"negative probability {p[idx]:.3g} at {tuple(map(int, idx))}")
        p[p < 0] = 0.0
        sums = p.sum(axis=(2, 3))
        bad = np.abs(sums - 1.0) > NORM_TOL
        if bad.any():
            x1, x2 = np.argwhere(bad)[0]
            raise InvalidBehaviorError(
                f"P(.,.|{x1},{x2}) sums to {sums[x1, x2]!r}, expected 1"
            )
        object.__setattr__(self, "p", _frozen(p))

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.p.shape

    @property
    def n_types(self) -> tuple[int, int]:
        return self.p.shape[:2]

    @property
    def n_actions(self) -> tuple[int, int]:
        return self.p.shape[2:]

    def marginal1(self) -> np.ndarray:
        """``P(a1 | x1, x2)`` indexed ``[x1][x2][a1]``."""
        return self.p.sum(axis=3)

    def marginal2(self) -> np.ndarray:
        """``P(a2 | x1, x2)`` indexed ``[x1][x2][a2]``."""
        return self.p.sum(axis=2)

    @classmethod
    def uniform(cls, n_types, n_actions) -> Behavior:
        k1, k2 = n_actions
        return cls(np.full((*n_types, k1, k2), 1.0 / (k1 * k2)))

    @classmethod
    def product(cls, local1, local2) -> Behavior:
        """Independent strategies from ``P(a1|x1)`` ``[x1][a1]`` and ``P(a2|x2)`` ``[x2][a2]``."""
        return cls(np.einsum("ia,jb->ijab", np.asarray(local1, float), np.asarray(local2, float)))

    @classmethod
    def deterministic(cls, map1, map2, n_actions) -> Behavior:
        """Behavior where player i answers ``map_i[x_i]`` with certainty."""
        k1, k2 = n_actions
        local1 = np.eye(k1)[list(map1)]
        local2 = np.eye(k2)[list(map2)]
        return cls.product(local1, local2)

    def mix(self, other: Behavior, weight: float) -> Behavior:
        """Convex combination ``weight * self + (1 - weight) * other``."""
        return Behavior(weight * self.p + (1.0 - weight) * other.p)


class PayoffVector(NamedTuple):
    f1: float
    f2: float


def validate_game(g: Game) -> list[str]:
    """Return a list of human-readable invariant violations (empty if valid)."""
    problems = []
    for name, counts in (("n_types", g.n_types), ("n_actions", g.n_actions)):
        if len(counts) != 2 or any(n < 1 for n in counts):
            problems.append(f"{name} must be a pair of positive integers, got {counts}")
    if problems:
        return problems

    prior = g.prior
    if prior.shape != g.n_types:
        problems.append(f"prior has shape {prior.shape}, expected {g.n_types}")
    else:
        if not np.all(np.isfinite(prior)):
            problems.append("prior has non-finite entries")
        elif prior.min() < 0:
            idx = tuple(int(i) for i in np.unravel_index(np.argmin(prior), prior.shape))
            problems.append(f"prior entry at {idx} is negative ({prior[idx]!r})")
        total = float(prior.sum())
        if abs(total - 1.0) > PRIOR_TOL:
            problems.append(f"prior sums to {total!r}, expected 1")

    for i in (1, 2):
        f = g.payoff(i)
        if f.shape != g.shape:
            problems.append(f"payoff{i} has shape {f.shape}, expected {g.shape}")
        elif not np.all(np.isfinite(f)):
            problems.append(f"payoff{i} has non-finite entries")
    return problems


def _check_shape(expected, b: Behavior, what="game"):
    if tuple(b.shape) != tuple(expected):
        raise DimensionError(f"behavior shape {b.shape} does not match {what} shape {tuple(expected)}")


def average_payoffs(g: Game, b: Behavior) -> PayoffVector:
    """Average payoff of each player, ``sum mu * P * f_i`` over types and actions."""
    _check_shape(g.shape, b)
    weighted = g.prior[:, :, None, None] * b.p
    return PayoffVector(float(np.sum(weighted * g.payoff1)), float(np.sum(weighted * g.payoff2)))


def signaling_violation(b: Behavior) -> float:
    """Largest change of one player's marginal under a change of the other's type."""
    m1 = b.marginal1()  # [x1][x2][a1]
    m2 = b.marginal2()  # [x1][x2][a2]
    d1 = np.ptp(m1, axis=1).max(initial=0.0)
    d2 = np.ptp(m2, axis=0).max(initial=0.0)
    return float(max(d1, d2))


def is_no_signaling(b: Behavior, tol: float = NS_TOL) -> tuple[bool, float]:
    violation = signaling_violation(b)
    return violation <= tol, violation


def correlator(b: Behavior, x1: int, x2: int) -> float:
    """``P(a1 = a2 | x1, x2) - P(a1 != a2 | x1, x2)`` for binary actions."""
    if tuple(b.n_actions) != (2, 2):
        raise UnsupportedScenarioError(f"correlator needs binary actions, got {tuple(b.n_actions)}")
    q = b.p[x1, x2]
    return float(q[0, 0] + q[1, 1] - q[0, 1] - q[1, 0])


def correlators(b: Behavior) -> np.ndarray:
    """All correlators as an ``[x1][x2]`` matrix."""
    if tuple(b.n_actions) != (2, 2):
        raise UnsupportedScenarioError(f"correlator needs binary actions, got {tuple(b.n_actions)}")
    sign = np.array([[1.0, -1.0], [-1.0, 1.0]])
    return np.einsum("ijab,ab->ij", b.p, sign)
