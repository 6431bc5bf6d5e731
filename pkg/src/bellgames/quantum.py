"""Quantum advice on two qubits: behaviors and see-saw maximisation.

The advisor distributes ``cos(t)|00> + sin(t)|11>`` (or the singlet), and
each player measures the observable ``n . sigma`` for a unit Bloch vector
``n`` chosen per type. Outcome +1 is action 0 and outcome -1 is action 1.

Any two-qubit pure state is a Schmidt state up to local unitaries, and those
unitaries can be absorbed into the Bloch vectors, so searching over the
Schmidt angle and all measurement directions covers every pure state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bell import BellExpression, combine_payoffs, correlator_form
from .errors import UnsupportedScenarioError
from .game import Behavior, Game, PayoffVector, average_payoffs

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
SINGLET = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)

SWEEP_TOL = 1e-10
MAX_SWEEPS = 500
GOLDEN_TOL = 1e-10
DEFAULT_RESTARTS = 50
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class QuantumStrategy:
    """Shared two-qubit state plus one Bloch vector per type and player."""

    theta: float
    meas1: np.ndarray
    meas2: np.ndarray
    singlet: bool = False

    def __post_init__(self):
        if not (-1e-12 <= self.theta <= math.pi / 4 + 1e-12):
            raise ValueError(f"Schmidt angle {self.theta!r} outside [0, pi/4]")
        for name in ("meas1", "meas2"):
            m = np.array(getattr(self, name), dtype=float).reshape(-1, 3)
            norms = np.linalg.norm(m, axis=1)
            if np.any(np.abs(norms - 1.0) > 1e-9):
                raise ValueError(f"{name} Bloch vectors must be unit length, norms {norms}")
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @classmethod
    def from_angles(cls, angles1, angles2, theta=math.pi / 4, singlet=False) -> QuantumStrategy:
        """Measurements in the x-z plane, ``(sin a, 0, cos a)`` for each angle ``a``."""
        def vecs(angles):
            return np.array([[math.sin(a), 0.0, math.cos(a)] for a in angles])

        return cls(theta, vecs(angles1), vecs(angles2), singlet)

    def state(self) -> np.ndarray:
        if self.singlet:
            return SINGLET.copy()
        return np.array([math.cos(self.theta), 0.0, 0.0, math.sin(self.theta)])

    def replace(self, player: int, meas) -> QuantumStrategy:
        if player == 1:
            return QuantumStrategy(self.theta, meas, self.meas2, self.singlet)
        return QuantumStrategy(self.theta, self.meas1, meas, self.singlet)

    def as_dict(self) -> dict:
        return {
            "theta": float(self.theta),
            "singlet": bool(self.singlet),
            "meas1": self.meas1.tolist(),
            "meas2": self.meas2.tolist(),
        }


@dataclass
class OptimizationResult:
    value: float
    strategy: QuantumStrategy
    trace: list[float] = field(default_factory=list)
    restarts: int = 0
    converged: bool = False
    restart_index: int = 0


def _projector(n: np.ndarray, outcome: int) -> np.ndarray:
    sign = 1.0 if outcome == 0 else -1.0
    return 0.5 * (np.eye(2) + sign * np.einsum("k,kij->ij", n, PAULI))


def quantum_behavior(s: QuantumStrategy) -> Behavior:
    """Born-rule statistics ``<psi| P_a1 (x) P_a2 |psi>``."""
    psi = s.state()
    m1, m2 = len(s.meas1), len(s.meas2)
    p = np.zeros((m1, m2, 2, 2))
    proj1 = [[_projector(n, a) for a in (0, 1)] for n in s.meas1]
    proj2 = [[_projector(n, a) for a in (0, 1)] for n in s.meas2]
    for x1 in range(m1):
        for x2 in range(m2):
            for a1 in (0, 1):
                for a2 in (0, 1):
                    op = np.kron(proj1[x1][a1], proj2[x2][a2])
                    p[x1, x2, a1, a2] = float(np.real(np.conj(psi) @ op @ psi))
    return Behavior(p)


def state_moments(s: QuantumStrategy) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Local Bloch vectors and correlation matrix ``T[i, j] = <sigma_i (x) sigma_j>``."""
    if s.singlet:
        return np.zeros(3), np.zeros(3), -np.eye(3)
    c2, s2 = math.cos(2 * s.theta), math.sin(2 * s.theta)
    r = np.array([0.0, 0.0, c2])
    return r, r.copy(), np.diag([s2, -s2, 1.0])


def _require_binary(e: BellExpression):
    if e.n_actions != (2, 2):
        raise UnsupportedScenarioError(f"quantum strategies need binary actions, got {e.n_actions}")


def strategy_value(e: BellExpression, s: QuantumStrategy) -> float:
    """Value of ``e`` computed from the state moments (no Born-rule tensor)."""
    c0, c1, c2, c12 = correlator_form(e)
    r1, r2, t = state_moments(s)
    la = s.meas1 @ r1
    lb = s.meas2 @ r2
    corr = s.meas1 @ t @ s.meas2.T
    return float(c0.sum() + (c1 * la[:, None]).sum() + (c2 * lb[None, :]).sum() + (c12 * corr).sum())


def response_terms(e: BellExpression, s: QuantumStrategy, player: int):
    """Linear dependence of ``e`` on one player's per-type observable.

    With the state and the other player fixed, the value is
    ``offset + sum_x (n_x . vec[x])`` for Bloch vectors ``n_x``. Answering
    the constant outcome ``c = +-1`` for type ``x`` instead contributes
    ``c * const[x]``. Returns ``(offset, vec, const)``.
    """
    c0, c1, c2, c12 = correlator_form(e)
    r1, r2, t = state_moments(s)
    if player == 1:
        lb = s.meas2 @ r2
        tb = s.meas2 @ t.T  # row x2: T b_x2
        offset = c0.sum() + (c2 * lb[None, :]).sum()
        vec = c1.sum(axis=1)[:, None] * r1[None, :] + c12 @ tb
        const = c1.sum(axis=1) + c12 @ lb
    elif player == 2:
        la = s.meas1 @ r1
        ta = s.meas1 @ t  # row x1: T^T a_x1
        offset = c0.sum() + (c1 * la[:, None]).sum()
        vec = c2.sum(axis=0)[:, None] * r2[None, :] + c12.T @ ta
        const = c2.sum(axis=0) + c12.T @ la
    else:
        raise ValueError(f"player must be 1 or 2, got {player!r}")
    return float(offset), vec, const


def _best_directions(vec: np.ndarray, current: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vec, axis=1)
    out = np.array(current, dtype=float)
    live = norms > 1e-14
    out[live] = vec[live] / norms[live, None]
    return out


def quantum_best_response(e: BellExpression, s: QuantumStrategy, player: int):
    """Optimal measurements of ``player`` against the fixed state and opponent.

    Returns ``(value, measurements)``; the value is ``offset + sum |vec_x|``.
    """
    _require_binary(e)
    offset, vec, _ = response_terms(e, s, player)
    current = s.meas1 if player == 1 else s.meas2
    meas = _best_directions(vec, current)
    value = offset + float(np.einsum("ij,ij->", meas, vec))
    return value, meas


def golden_section_max(f, lo: float, hi: float, tol: float = GOLDEN_TOL) -> float:
    """Maximiser of a unimodal ``f`` on ``[lo, hi]``."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _angle_coefficients(forms, meas1, meas2):
    """Value as ``k + p cos(2t) + q sin(2t)`` for a Schmidt state of angle t."""
    c0, c1, c2, c12 = forms
    la, lb = meas1[:, 2], meas2[:, 2]
    k = c0.sum() + (c12 * np.outer(la, lb)).sum()
    p = (c1 * la[:, None]).sum() + (c2 * lb[None, :]).sum()
    xy = np.outer(meas1[:, 0], meas2[:, 0]) - np.outer(meas1[:, 1], meas2[:, 1])
    q = (c12 * xy).sum()
    return float(k), float(p), float(q)


def _optimize_theta(forms, meas1, meas2, theta):
    k, p, q = _angle_coefficients(forms, meas1, meas2)

    def f(t):
        return p * math.cos(2 * t) + q * math.sin(2 * t)

    # on [0, pi/4] the sinusoid spans a quarter period, hence is unimodal
    cand = golden_section_max(f, 0.0, math.pi / 4)
    for edge in (0.0, math.pi / 4):
        if f(edge) > f(cand):
            cand = edge
    if f(cand) > f(theta):
        theta = cand
    return theta, k + f(theta)


def random_unit_vectors(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _schmidt_moments(theta: float):
    c2, s2 = math.cos(2 * theta), math.sin(2 * theta)
    return np.array([0.0, 0.0, c2]), np.diag([s2, -s2, 1.0])


def _normalize_rows(vec: np.ndarray, current: np.ndarray) -> np.ndarray:
    norms = np.sqrt(np.einsum("ij,ij->i", vec, vec))
    live = norms > 1e-14
    if live.all():
        return vec / norms[:, None]
    out = current.copy()
    out[live] = vec[live] / norms[live, None]
    return out


def _seesaw_run(forms, theta: float, meas1, meas2, max_sweeps: int, tol: float, fixed_theta: bool):
    """One see-saw descent on raw arrays; returns ``(theta, meas1, meas2, trace, converged)``."""
    c0, c1, c2, c12 = forms
    row1, col2 = c1.sum(axis=1), c2.sum(axis=0)
    k, p, q = _angle_coefficients(forms, meas1, meas2)
    trace = [k + p * math.cos(2 * theta) + q * math.sin(2 * theta)]
    converged = False
    for _ in range(max_sweeps):
        r, t = _schmidt_moments(theta)
        meas1 = _normalize_rows(row1[:, None] * r + c12 @ (meas2 @ t.T), meas1)
        meas2 = _normalize_rows(col2[:, None] * r + c12.T @ (meas1 @ t), meas2)
        if fixed_theta:
            k, p, q = _angle_coefficients(forms, meas1, meas2)
            value = k + p * math.cos(2 * theta) + q * math.sin(2 * theta)
        else:
            theta, value = _optimize_theta(forms, meas1, meas2, theta)
        trace.append(value)
        if trace[-1] - trace[-2] < tol:
            converged = True
            break
    return theta, meas1, meas2, trace, converged


def seesaw_maximize(
    e: BellExpression,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    max_sweeps: int = MAX_SWEEPS,
    tol: float = SWEEP_TOL,
    theta: float | None = None,
) -> OptimizationResult:
    """Maximise ``e`` over Schmidt states and projective qubit measurements.

    Each restart draws its own generator from ``(seed, restart)``, so results
    do not depend on the order in which restarts are run. Ties keep the lower
    restart index. Passing ``theta`` pins the Schmidt angle (``pi/4`` is
    maximally entangled) instead of optimising it.
    """
    _require_binary(e)
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    forms = correlator_form(e)
    m1, m2 = e.n_types
    best = None
    for r in range(restarts):
        rng = np.random.default_rng([int(seed), r])
        t0 = float(rng.uniform(0.0, math.pi / 4))
        if theta is not None:
            t0 = float(theta)
        a, b = random_unit_vectors(rng, m1), random_unit_vectors(rng, m2)
        t, a, b, trace, converged = _seesaw_run(forms, t0, a, b, max_sweeps, tol, theta is not None)
        if best is None or trace[-1] > best.value:
            best = OptimizationResult(trace[-1], QuantumStrategy(t, a, b), trace, restarts, converged, r)
    return best


def derive_seed(seed: int, *path: int) -> int:
    """Independent 64-bit seed for a sub-task identified by ``path``."""
    return int(np.random.SeedSequence([int(seed), *path]).generate_state(1, np.uint64)[0])


def quantum_payoff_region_boundary(
    g: Game,
    directions=32,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> list[PayoffVector]:
    """Payoff pairs reached when maximising ``beta . F`` for several directions.

    ``directions`` is either a count (evenly spaced over the full circle,
    starting at ``beta = (1, 0)``) or an explicit sequence of angles.
    """
    if np.isscalar(directions):
        angles = 2 * math.pi * np.arange(int(directions)) / int(directions)
    else:
        angles = np.asarray(directions, dtype=float)
    points = []
    for k, phi in enumerate(angles):
        beta = (math.cos(phi), math.sin(phi))
        res = seesaw_maximize(combine_payoffs(g, beta), restarts, derive_seed(seed, k))
        points.append(average_payoffs(g, quantum_behavior(res.strategy)))
    return points


def chsh_optimal_strategy() -> QuantumStrategy:
    """Singlet measurements reaching Tsirelson's bound for the CHSH payoff.

    On the singlet ``<A B> = -a . b``; the angles below give correlators
    ``(-1)^(x1 x2) / sqrt(2)`` with the sign flip absorbed into player 2.
    """
    return QuantumStrategy.from_angles(
        [0.0, math.pi / 2], [math.pi + math.pi / 4, math.pi - math.pi / 4], singlet=True
    )
