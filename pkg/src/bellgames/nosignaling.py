"""No-signaling advice: the PR box and LP maximisation over the no-signaling polytope."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import BellExpression
from .errors import ResourceLimitError, SignalingError
from .game import NS_TOL, Behavior, Game, PayoffVector, average_payoffs, is_no_signaling
from .simplex import simplex_max

LP_VARIABLE_CAP = 10**5
LP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class NSConstraintSystem:
    """Equality constraints ``A p = b`` (with ``p >= 0``) cutting out the no-signaling polytope.

    Rows come in three blocks: normalisation per type pair, then player 1's
    marginals compared against ``x2 = 0``, then player 2's against ``x1 = 0``.
    ``n_redundant`` counts linearly dependent rows, which are kept.
    """

    shape: tuple[int, int, int, int]
    index: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    row_labels: tuple[str, ...]
    n_redundant: int

    @classmethod
    def build(cls, shape) -> NSConstraintSystem:
        m1, m2, k1, k2 = shape
        n = m1 * m2 * k1 * k2
        index = np.arange(n).reshape(shape)
        rows, labels = [], []

        def row():
            r = np.zeros(n)
            rows.append(r)
            return r

        for x1 in range(m1):
            for x2 in range(m2):
                row()[index[x1, x2].ravel()] = 1.0
                labels.append(f"norm x=({x1},{x2})")
        for x1 in range(m1):
            for a1 in range(k1):
                for x2 in range(1, m2):
                    r = row()
                    r[index[x1, x2, a1, :]] += 1.0
                    r[index[x1, 0, a1, :]] -= 1.0
                    labels.append(f"ns1 x1={x1} a1={a1} x2={x2}|0")
        for x2 in range(m2):
            for a2 in range(k2):
                for x1 in range(1, m1):
                    r = row()
                    r[index[x1, x2, :, a2]] += 1.0
                    r[index[0, x2, :, a2]] -= 1.0
                    labels.append(f"ns2 x2={x2} a2={a2} x1={x1}|0")
        a = np.array(rows)
        b = np.zeros(len(rows))
        b[: m1 * m2] = 1.0
        redundant = len(rows) - int(np.linalg.matrix_rank(a))
        return cls(tuple(shape), index, a, b, tuple(labels), redundant)


def pr_box() -> Behavior:
    """``P(a1, a2 | x1, x2) = 1/2`` when ``a1 xor a2 = x1 x2``."""
    p = np.zeros((2, 2, 2, 2))
    for x1 in range(2):
        for x2 in range(2):
            for a1 in range(2):
                p[x1, x2, a1, a1 ^ (x1 * x2)] = 0.5
    return Behavior(p)


def ns_maximize(e: BellExpression, cap: int = LP_VARIABLE_CAP) -> tuple[float, Behavior]:
    """Largest value of ``e`` over no-signaling behaviors, with an optimal behavior."""
    n = int(np.prod(e.shape))
    if n > cap:
        raise ResourceLimitError("LP variable count", n, cap)
    system = NSConstraintSystem.build(e.shape)
    _, x = simplex_max(e.alpha.ravel(), system.a_eq, system.b_eq, tol=LP_TOL)
    x = np.clip(x, 0.0, None).reshape(e.shape)
    # renormalise away pivot round-off; the LP point is already normalised to ~1e-15
    x /= x.sum(axis=(2, 3), keepdims=True)
    b = Behavior(x)
    return float(np.sum(e.alpha * b.p)), b


def ns_payoff_point(g: Game, b: Behavior) -> PayoffVector:
    ok, violation = is_no_signaling(b, NS_TOL)
    if not ok:
        raise SignalingError(f"behavior signals (marginal change {violation:.3g})")
    return average_payoffs(g, b)
