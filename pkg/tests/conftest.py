import itertools

import numpy as np
import pytest

from bellgames import Behavior, Game, load_bundled


@pytest.fixture(scope="session")
def ex1():
    return load_bundled("example1")


@pytest.fixture(scope="session")
def ex2():
    return load_bundled("example2")


@pytest.fixture(scope="session")
def ex3():
    return load_bundled("example3")


def chsh_rule(x1, x2, a1, a2):
    return 1.0 if (a1 ^ a2) == x1 * x2 else -1.0


def behavior_from_correlators(corr) -> Behavior:
    """Binary behavior with uniform marginals and the given ``[x1][x2]`` correlators."""
    p = np.zeros((2, 2, 2, 2))
    for x1, x2, a1, a2 in itertools.product(range(2), repeat=4):
        p[x1, x2, a1, a2] = (1 + (-1) ** (a1 + a2) * corr[x1][x2]) / 4
    return Behavior(p)


def brute_payoffs(g: Game, map1, map2):
    """Average payoffs of a deterministic profile by explicit summation."""
    f1 = f2 = 0.0
    for x1 in range(g.n_types[0]):
        for x2 in range(g.n_types[1]):
            mu = g.prior[x1, x2]
            f1 += mu * g.payoff1[x1, x2, map1[x1], map2[x2]]
            f2 += mu * g.payoff2[x1, x2, map1[x1], map2[x2]]
    return f1, f2


def all_profiles(g: Game):
    m1, m2 = g.n_types
    k1, k2 = g.n_actions
    for map1 in itertools.product(range(k1), repeat=m1):
        for map2 in itertools.product(range(k2), repeat=m2):
            yield map1, map2


def random_game(rng, n_types=(2, 2), n_actions=(2, 2), label="random"):
    prior = rng.random(n_types)
    prior /= prior.sum()
    shape = (*n_types, *n_actions)
    return Game(n_types, n_actions, prior, rng.normal(size=shape), rng.normal(size=shape), label)


def random_behavior(rng, shape, kind="ns"):
    """A random valid behavior; ``kind`` is 'ns' (local mixture) or 'any' (possibly signaling)."""
    m1, m2, k1, k2 = shape
    if kind == "any":
        p = rng.random(shape)
        return Behavior(p / p.sum(axis=(2, 3), keepdims=True))
    p = np.zeros(shape)
    weights = rng.dirichlet(np.ones(4))
    for w in weights:
        l1 = rng.dirichlet(np.ones(k1), size=m1)
        l2 = rng.dirichlet(np.ones(k2), size=m2)
        p += w * np.einsum("ia,jb->ijab", l1, l2)
    return Behavior(p)
