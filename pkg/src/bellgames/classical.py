"""Classical advice: deterministic strategies, local bounds and the payoff polytope.

Shared classical advice with a continuous prior is a convex combination of
deterministic profiles (each player maps their own type to an action), so
every classical maximum of a linear objective is attained on a
deterministic profile and the classical payoff region is the convex hull of
finitely many points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .bell import BellExpression, FacetInequality, evaluate
from .errors import ResourceLimitError
from .game import Behavior, Game, PayoffVector

ENUMERATION_CAP = 10**7
HULL_TOL = 1e-9


class DeterministicStrategy(NamedTuple):
    """Pure strategy profile: ``map1[x1]`` is player 1's action, likewise ``map2``."""

    map1: tuple[int, ...]
    map2: tuple[int, ...]

    def behavior(self, n_actions) -> Behavior:
        return Behavior.deterministic(self.map1, self.map2, n_actions)


@dataclass(frozen=True)
class ClassicalMixture:
    profiles: tuple[DeterministicStrategy, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if len(w) != len(self.profiles) or len(w) == 0:
            raise ValueError("need one weight per profile and at least one profile")
        if w.min() < 0 or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights must be a probability vector, sum={w.sum()!r}")

    @classmethod
    def pure(cls, profile: DeterministicStrategy) -> ClassicalMixture:
        return cls((profile,), (1.0,))

    def behavior(self, n_actions) -> Behavior:
        k1, k2 = n_actions
        p = 0.0
        for w, s in zip(self.weights, self.profiles):
            p = p + w * np.einsum("ia,jb->ijab", np.eye(k1)[list(s.map1)], np.eye(k2)[list(s.map2)])
        return Behavior(p)


@dataclass(frozen=True)
class PayoffPolytope:
    """Convex hull of the classical payoff pairs, counterclockwise."""

    vertices: tuple[PayoffVector, ...]
    facets: tuple[FacetInequality, ...]


def _maps(n_types: int, n_actions: int) -> np.ndarray:
    """All response functions as rows, in lexicographic order."""
    return np.array(list(itertools.product(range(n_actions), repeat=n_types)), dtype=int).reshape(
        n_actions**n_types, n_types
    )


def profile_count(shape) -> int:
    m1, m2, k1, k2 = shape
    return k1**m1 * k2**m2


def _check_cap(shape, cap):
    count = profile_count(shape)
    if count > cap:
        raise ResourceLimitError("deterministic profile count", count, cap)


def _value_table(alpha: np.ndarray, maps1: np.ndarray, maps2: np.ndarray) -> np.ndarray:
    """``table[i, j]`` = value of expression ``alpha`` under profile (maps1[i], maps2[j])."""
    m1, m2 = alpha.shape[:2]
    table = np.zeros((len(maps1), len(maps2)))
    for x1 in range(m1):
        for x2 in range(m2):
            table += alpha[x1, x2][np.ix_(maps1[:, x1], maps2[:, x2])]
    return table


def enumerate_deterministic(
    g: Game, cap: int = ENUMERATION_CAP
) -> Iterator[tuple[DeterministicStrategy, PayoffVector]]:
    _check_cap(g.shape, cap)
    maps1 = _maps(g.n_types[0], g.n_actions[0])
    maps2 = _maps(g.n_types[1], g.n_actions[1])
    w = g.prior[:, :, None, None]
    t1 = _value_table(w * g.payoff1, maps1, maps2)
    t2 = _value_table(w * g.payoff2, maps1, maps2)
    for i, m1 in enumerate(maps1):
        for j, m2 in enumerate(maps2):
            yield (
                DeterministicStrategy(tuple(int(a) for a in m1), tuple(int(a) for a in m2)),
                PayoffVector(float(t1[i, j]), float(t2[i, j])),
            )


def local_bound(e: BellExpression, cap: int = ENUMERATION_CAP) -> tuple[float, DeterministicStrategy]:
    """Classical maximum of ``e`` and a deterministic profile attaining it.

    Player 1's response functions are enumerated; for each, player 2's best
    response decouples over their types and is taken exactly.
    """
    _check_cap(e.shape, cap)
    m1, m2, k1, k2 = e.shape
    maps1 = _maps(m1, k1)
    # per map1 row, per (x2, a2): sum over x1 of alpha[x1, x2, map1[x1], a2]
    gathered = np.zeros((len(maps1), m2, k2))
    for x1 in range(m1):
        gathered += e.alpha[x1][:, maps1[:, x1], :].transpose(1, 0, 2)
    best2 = gathered.argmax(axis=2)
    values = gathered.max(axis=2).sum(axis=1)
    i = int(np.argmax(values))
    witness = DeterministicStrategy(tuple(int(a) for a in maps1[i]), tuple(int(a) for a in best2[i]))
    # report the value of the witness itself so the two always agree exactly
    return evaluate(e, witness.behavior((k1, k2))), witness


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[Sequence[float]], tol: float = HULL_TOL) -> list[tuple[float, float]]:
    """Monotone-chain hull, counterclockwise from the lexicographically smallest point.

    Points within ``tol`` of an already kept point are merged and collinear
    boundary points are dropped.
    """
    arr = np.asarray(points, dtype=float).reshape(-1, 2)
    unique = [(float(x), float(y)) for x, y in np.unique(arr, axis=0)]
    if len(unique) <= 1:
        return unique

    def chain(seq):
        out: list[tuple[float, float]] = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= tol:
                out.pop()
            out.append(p)
        return out

    lower = chain(unique)
    upper = chain(reversed(unique))
    hull = lower[:-1] + upper[:-1]
    merged = [hull[0]]
    for p in hull[1:]:
        if abs(p[0] - merged[-1][0]) > tol or abs(p[1] - merged[-1][1]) > tol:
            merged.append(p)
    while len(merged) > 1 and abs(merged[-1][0] - merged[0][0]) <= tol and abs(merged[-1][1] - merged[0][1]) <= tol:
        merged.pop()
    return merged


def _facet(normal, point) -> FacetInequality:
    scale = max(abs(normal[0]), abs(normal[1]))
    beta = (normal[0] / scale, normal[1] / scale)
    return FacetInequality((beta[0] + 0.0, beta[1] + 0.0), beta[0] * point[0] + beta[1] * point[1])


def hull_facets(vertices: Sequence[tuple[float, float]]) -> list[FacetInequality]:
    """Outward facet inequalities of a counterclockwise polygon.

    A two-vertex hull (a segment) gets the two sides of its supporting line
    plus one cap at each endpoint; a single vertex has no facets.
    """
    n = len(vertices)
    if n < 2:
        return []
    if n == 2:
        (ax, ay), (bx, by) = vertices
        dx, dy = bx - ax, by - ay
        return [
            _facet((dy, -dx), vertices[0]),
            _facet((-dy, dx), vertices[0]),
            _facet((dx, dy), vertices[1]),
            _facet((-dx, -dy), vertices[0]),
        ]
    facets = []
    for k in range(n):
        p, q = vertices[k], vertices[(k + 1) % n]
        facets.append(_facet((q[1] - p[1], p[0] - q[0]), p))
    return facets


def classical_payoff_polytope(g: Game, cap: int = ENUMERATION_CAP) -> PayoffPolytope:
    points = [v for _, v in enumerate_deterministic(g, cap)]
    hull = convex_hull(points)
    return PayoffPolytope(tuple(PayoffVector(*v) for v in hull), tuple(hull_facets(hull)))


def facet_check(p: PayoffPolytope, v, tol: float = HULL_TOL) -> bool:
    """Is the payoff pair ``v`` inside the classical polytope?"""
    if not p.facets:
        return any(abs(v[0] - u[0]) <= tol and abs(v[1] - u[1]) <= tol for u in p.vertices)
    return all(f.slack(v) >= -tol for f in p.facets)
