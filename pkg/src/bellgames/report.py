"""End-to-end analysis of one game and machine-readable output."""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bell import combine_payoffs, payoff_to_bell
from .classical import ClassicalMixture, classical_payoff_polytope, local_bound
from .equilibrium import (
    EPS_EXACT,
    EPS_QUANTUM,
    check_classical_equilibrium,
    check_quantum_equilibrium,
    check_wiring_equilibrium,
)
from .errors import BellGameError, ResourceLimitError
from .game import Game, average_payoffs
from .nosignaling import ns_maximize
from .quantum import derive_seed, quantum_payoff_region_boundary, seesaw_maximize


@dataclass
class AnalysisOptions:
    seed: int = 0
    restarts: int = 50
    directions: int = 32
    betas: list[tuple[float, float]] = field(default_factory=lambda: [(1.0, 1.0)])
    equilibrium_beta: tuple[float, float] = (1.0, 1.0)
    equilibria: bool = True
    quantum_epsilon: float = EPS_QUANTUM
    sections: tuple[str, ...] = ("classical", "quantum", "no-signaling", "equilibrium")


def _behavior_dict(b) -> list:
    return b.p.tolist()


def _seesaw_dict(res) -> dict:
    return {
        "value": res.value,
        "strategy": res.strategy.as_dict(),
        "sweeps": len(res.trace) - 1,
        "converged": res.converged,
        "restart": res.restart_index,
    }


def _error(exc: BellGameError) -> dict:
    kind = "resource-limit" if isinstance(exc, ResourceLimitError) else "unsupported"
    return {"error": str(exc), "kind": kind}


def resource_errors(report: dict) -> list[str]:
    """Messages of every section or candidate that stopped at a size cap."""
    found = []
    for section in ("classical", "quantum", "no-signaling"):
        entry = report.get(section, {})
        if entry.get("kind") == "resource-limit":
            found.append(f"{section}: {entry['error']}")
    for eq in report.get("equilibria", []):
        if eq.get("kind") == "resource-limit":
            found.append(f"{eq['candidate']}: {eq['error']}")
    return found


def binary_embedding(g: Game) -> Game | None:
    """``g`` with every one-action player given a duplicate action; None if some player has more than two.

    A duplicated action pays exactly what the original does, so every
    behavior of the embedded game collapses to one of ``g`` with the same
    payoffs and the quantum values are unchanged.
    """
    if max(g.n_actions) > 2:
        return None
    if g.is_binary:
        return g
    f1, f2 = g.payoff1, g.payoff2
    if g.n_actions[0] == 1:
        f1, f2 = np.repeat(f1, 2, axis=2), np.repeat(f2, 2, axis=2)
    if g.n_actions[1] == 1:
        f1, f2 = np.repeat(f1, 2, axis=3), np.repeat(f2, 2, axis=3)
    return Game(g.n_types, (2, 2), g.prior, f1, f2, g.label)


def _objectives(g: Game, options: AnalysisOptions):
    objs = [(f"F{i}", None, payoff_to_bell(g, i)) for i in (1, 2)]
    for beta in options.betas:
        objs.append((f"beta={beta[0]:g},{beta[1]:g}", list(map(float, beta)), combine_payoffs(g, beta)))
    return objs


def run_analysis(g: Game, options: AnalysisOptions | None = None) -> dict:
    """Classical, quantum and no-signaling analysis of ``g`` as a JSON-ready dict.

    Sections that cannot run (quantum analysis of a non-binary game, an
    enumeration over its cap) appear with ``"error"`` and ``"kind"`` entries
    instead of being left out; see :func:`resource_errors`.
    """
    options = options or AnalysisOptions()
    report: dict = {
        "tool": "bellgames",
        "version": __version__,
        "game": g.label,
        "seed": int(options.seed),
        "restarts": int(options.restarts),
    }
    objectives = _objectives(g, options)
    eq_expr = combine_payoffs(g, options.equilibrium_beta)
    sections = options.sections

    if "classical" in sections:
        try:
            bounds = []
            for name, beta, e in objectives:
                value, witness = local_bound(e)
                bounds.append({"objective": name, "beta": beta, "value": value,
                               "witness": {"map1": list(witness.map1), "map2": list(witness.map2)}})
            poly = classical_payoff_polytope(g)
            report["classical"] = {
                "bounds": bounds,
                "polytope": {
                    "vertices": [list(v) for v in poly.vertices],
                    "facets": [{"beta": list(f.beta), "beta0": f.beta0} for f in poly.facets],
                },
            }
        except BellGameError as exc:
            report["classical"] = _error(exc)

    qg = binary_embedding(g)
    if "quantum" in sections:
        if qg is None:
            report["quantum"] = {"error": f"quantum analysis needs binary actions, got {g.n_actions}",
                                 "kind": "unsupported"}
        else:
            bounds = []
            for k, (name, beta, e) in enumerate(_objectives(qg, options)):
                res = seesaw_maximize(e, options.restarts, derive_seed(options.seed, 1, k))
                entry = {"objective": name, "beta": beta}
                entry.update(_seesaw_dict(res))
                bounds.append(entry)
            angles = [2 * math.pi * i / options.directions for i in range(options.directions)]
            boundary = quantum_payoff_region_boundary(
                qg, angles, options.restarts, derive_seed(options.seed, 2)
            ) if options.directions else []
            report["quantum"] = {
                "bounds": bounds,
                "boundary": [{"angle": a, "point": list(p)} for a, p in zip(angles, boundary)],
            }

    if "no-signaling" in sections:
        try:
            bounds = []
            for name, beta, e in objectives:
                value, b = ns_maximize(e)
                bounds.append({"objective": name, "beta": beta, "value": value,
                               "payoffs": list(average_payoffs(g, b)), "behavior": _behavior_dict(b)})
            report["no-signaling"] = {"bounds": bounds}
        except BellGameError as exc:
            report["no-signaling"] = _error(exc)

    if "equilibrium" in sections and options.equilibria:
        eqs = []
        beta_eq = list(map(float, options.equilibrium_beta))
        try:
            _, witness = local_bound(eq_expr)
            rep = check_classical_equilibrium(g, ClassicalMixture.pure(witness), EPS_EXACT)
            eqs.append({"candidate": "classical optimum", "beta": beta_eq, **rep.as_dict()})
        except BellGameError as exc:
            eqs.append({"candidate": "classical optimum", **_error(exc)})
        if qg is not None:
            res = seesaw_maximize(combine_payoffs(qg, options.equilibrium_beta), options.restarts,
                                  derive_seed(options.seed, 3))
            rep = check_quantum_equilibrium(qg, res.strategy, options.quantum_epsilon)
            eqs.append({"candidate": "quantum optimum", "beta": beta_eq,
                        "strategy": res.strategy.as_dict(), **rep.as_dict()})
        try:
            _, b = ns_maximize(eq_expr)
            rep = check_wiring_equilibrium(g, b, EPS_EXACT)
            eqs.append({"candidate": "no-signaling optimum", "beta": beta_eq, **rep.as_dict()})
        except BellGameError as exc:
            eqs.append({"candidate": "no-signaling optimum", **_error(exc)})
        report["equilibria"] = eqs

    _check_finite(report)
    return report


def _check_finite(obj, path="report"):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise ValueError(f"non-finite number at {path}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_finite(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _check_finite(v, f"{path}[{i}]")


def dumps(report: dict) -> str:
    """Deterministic JSON; floats use the shortest repr that round-trips."""
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _num(v: float) -> str:
    return format(float(v), ".17g")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(r if isinstance(r, str) else _num(r) for r in row) + "\n")
    return buf.getvalue()


def special_points(report: dict) -> list[tuple[str, str, float, float]]:
    """Payoff pairs of the equilibrium candidates, one per advice class."""
    points = []
    for eq in report.get("equilibria", []):
        if "incumbent" not in eq:
            continue
        cls = eq["advice_class"]
        name = {"classical": "classical optimum", "quantum": "quantum optimum",
                "no-signaling": "no-signaling optimum"}[cls]
        f1, f2 = eq["incumbent"]
        points.append((name, cls, f1, f2))
    return points


def emit_plot_data(report: dict) -> dict[str, str]:
    """CSV tables for a payoff-space figure: hull, quantum boundary, special points."""
    hull = report.get("classical", {}).get("polytope", {}).get("vertices", [])
    boundary = report.get("quantum", {}).get("boundary", [])
    return {
        "classical_hull.csv": _csv(["F1", "F2"], [(v[0], v[1]) for v in hull]),
        "quantum_boundary.csv": _csv(
            ["angle", "F1", "F2"], [(b["angle"], b["point"][0], b["point"][1]) for b in boundary]
        ),
        "special_points.csv": _csv(["label", "advice", "F1", "F2"], special_points(report)),
    }
