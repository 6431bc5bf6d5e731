import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from bellgames import (
    BellExpression,
    QuantumStrategy,
    average_payoffs,
    classical_payoff_polytope,
    combine_payoffs,
    evaluate,
    facet_check,
    is_no_signaling,
    local_bound,
    ns_maximize,
    quantum_behavior,
    seesaw_maximize,
)

from conftest import random_behavior, random_game

seeds = st.integers(0, 2**32 - 1)
shapes = st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))


@settings(max_examples=50, deadline=None)
@given(seeds, shapes, st.floats(-3, 3), st.floats(-3, 3))
def test_average_payoff_linear(seed, shape, b1, b2):
    rng = np.random.default_rng(seed)
    g = random_game(rng, shape[:2], shape[2:])
    p, q = random_behavior(rng, shape, "any"), random_behavior(rng, shape, "any")
    w = rng.random()
    mixed = average_payoffs(g, p.mix(q, w))
    fp, fq = average_payoffs(g, p), average_payoffs(g, q)
    for i in range(2):
        assert math.isclose(mixed[i], w * fp[i] + (1 - w) * fq[i], abs_tol=1e-12)
    e = combine_payoffs(g, (b1, b2))
    assert math.isclose(evaluate(e, p), b1 * fp[0] + b2 * fp[1], abs_tol=1e-10)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_bound_chain(seed):
    rng = np.random.default_rng(seed)
    e = BellExpression(rng.normal(size=(2, 2, 2, 2)))
    classical, _ = local_bound(e)
    quantum = seesaw_maximize(e, restarts=10, seed=seed).value
    ns, b = ns_maximize(e)
    assert classical <= quantum + 1e-6
    assert quantum <= ns + 1e-6
    assert is_no_signaling(b, 1e-9)[0]


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_quantum_behaviors_no_signaling(seed):
    rng = np.random.default_rng(seed)

    def unit(n):
        v = rng.normal(size=(n, 3))
        return v / np.linalg.norm(v, axis=1, keepdims=True)

    s = QuantumStrategy(float(rng.uniform(0, math.pi / 4)), unit(3), unit(2), bool(rng.integers(2)))
    b = quantum_behavior(s)
    assert is_no_signaling(b, 1e-10)[0]
    assert b.p.min() >= 0


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_local_mixtures_inside_polytope(seed):
    rng = np.random.default_rng(seed)
    g = random_game(rng, (2, 2), (2, 2))
    poly = classical_payoff_polytope(g)
    assert facet_check(poly, average_payoffs(g, random_behavior(rng, g.shape)), 1e-9)
