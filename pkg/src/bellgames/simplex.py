"""Dense two-phase tableau simplex for ``max c.x  s.t.  A x = b, x >= 0``.

Bland's rule is used for both entering and leaving variables, so degenerate
problems (and no-signaling polytopes are very degenerate) cannot cycle.
Redundant equality rows are detected at the end of phase one and dropped.
"""

from __future__ import annotations

import numpy as np

from .errors import BellGameError


class InfeasibleError(BellGameError):
    pass


class UnboundedError(BellGameError):
    pass


class _Tableau:
    def __init__(self, rows: np.ndarray, basis: list[int]):
        self.t = rows
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, j: int, obj: np.ndarray):
        t = self.t
        t[r] /= t[r, j]
        col = t[:, j].copy()
        col[r] = 0.0
        t -= np.outer(col, t[r])
        obj -= obj[j] * t[r]
        self.basis[r] = j
        self.pivots += 1

    def run(self, obj: np.ndarray, allowed: int, tol: float, max_pivots: int):
        """Iterate until no allowed column has positive reduced cost."""
        t = self.t
        while True:
            candidates = np.nonzero(obj[:allowed] > tol)[0]
            if len(candidates) == 0:
                return
            j = int(candidates[0])
            col = t[:, j]
            rows = np.nonzero(col > tol)[0]
            if len(rows) == 0:
                raise UnboundedError(f"objective unbounded along column {j}")
            ratios = t[rows, -1] / col[rows]
            best = ratios.min()
            tied = rows[ratios <= best + tol]
            r = int(min(tied, key=lambda i: self.basis[i]))
            self.pivot(r, j, obj)
            if self.pivots > max_pivots:
                raise BellGameError(f"simplex exceeded {max_pivots} pivots")


def simplex_max(c, a_eq, b_eq, tol: float = 1e-9, max_pivots: int = 100_000):
    """Return ``(value, x)`` for the optimum of the standard-form LP."""
    c = np.asarray(c, dtype=float)
    a = np.array(a_eq, dtype=float)
    b = np.array(b_eq, dtype=float)
    m, n = a.shape
    neg = b < 0
    a[neg] *= -1
    b[neg] *= -1

    # phase one: artificial variable per row, maximise -sum(artificials)
    rows = np.hstack([a, np.eye(m), b[:, None]])
    tab = _Tableau(rows, list(range(n, n + m)))
    obj = np.concatenate([a.sum(axis=0), np.zeros(m), [b.sum()]])
    tab.run(obj, n, tol, max_pivots)
    if obj[-1] > tol * max(1.0, m):
        raise InfeasibleError(f"no feasible point, residual {obj[-1]:.3g}")

    # drive remaining artificials out of the basis; rows that cannot pivot are redundant
    keep = []
    for r in range(m):
        if tab.basis[r] >= n:
            nz = np.nonzero(np.abs(tab.t[r, :n]) > tol)[0]
            if len(nz) == 0:
                continue
            tab.pivot(r, int(nz[0]), obj)
        keep.append(r)
    t2 = np.hstack([tab.t[keep, :n], tab.t[keep, -1:]])
    tab2 = _Tableau(t2, [tab.basis[r] for r in keep])
    tab2.pivots = tab.pivots

    obj2 = np.concatenate([c, [0.0]])
    for r, j in enumerate(tab2.basis):
        obj2 -= obj2[j] * tab2.t[r]
    tab2.run(obj2, n, tol, max_pivots)

    x = np.zeros(n)
    x[tab2.basis] = tab2.t[:, -1]
    x[np.abs(x) < tol * 1e-3] = 0.0
    return float(-obj2[-1]), x
