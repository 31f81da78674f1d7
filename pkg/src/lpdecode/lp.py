"""Dense two-phase primal simplex.

Small problems only (a few hundred rows).  Pivoting is deterministic: the
entering column is the most negative reduced cost, lowest index on ties;
after a streak of degenerate pivots the solver switches to Bland's rule
until progress resumes.  The leaving row always breaks ratio ties by the
lowest basic-variable index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import NumericalFailure

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-9
DEGENERATE_STREAK = 20


class Status(Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass
class LinearProgram:
    """``min``/``max`` c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  lower <= x <= upper.

    ``lower`` must be finite; ``upper`` entries may be ``inf``.
    """

    c: np.ndarray
    A_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    A_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None
    sense: str = "min"

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        n = self.c.size
        self.A_ub, self.b_ub = _pair(self.A_ub, self.b_ub, n, "ub")
        self.A_eq, self.b_eq = _pair(self.A_eq, self.b_eq, n, "eq")
        self.lower = np.zeros(n) if self.lower is None else np.asarray(self.lower, dtype=float).ravel()
        self.upper = np.full(n, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float).ravel()
        if self.lower.size != n or self.upper.size != n:
            raise ValueError("bounds must have the same length as the objective")
        if not np.all(np.isfinite(self.lower)):
            raise ValueError("lower bounds must be finite")
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")

    @property
    def n(self):
        return self.c.size


def _pair(A, b, n, label):
    if A is None or (hasattr(A, "__len__") and len(A) == 0):
        return np.zeros((0, n)), np.zeros(0)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    if A.shape != (b.size, n):
        raise ValueError(f"A_{label} has shape {A.shape}, expected ({b.size}, {n})")
    return A, b


@dataclass
class LpSolution:
    status: Status
    x: np.ndarray | None = None
    objective_value: float = float("nan")
    tight_set: tuple = ()
    iterations: int = 0
    basis: tuple = field(default=(), repr=False)

    @property
    def optimal(self):
        return self.status is Status.OPTIMAL


class _Tableau:
    """Rows 0..R-1 are constraints, row R is the reduced-cost row; last column is the rhs."""

    def __init__(self, T, basis, max_iter):
        self.T = T
        self.basis = basis
        self.max_iter = max_iter
        self.iterations = 0

    def run(self, ncols):
        """Optimize over the first ``ncols`` columns. Returns False when unbounded."""
        T = self.T
        obj = T[-1]
        streak = 0
        while True:
            d = obj[:ncols]
            if streak >= DEGENERATE_STREAK:
                cand = np.flatnonzero(d < -PIVOT_TOL)
                if cand.size == 0:
                    return True
                e = int(cand[0])
            else:
                e = int(np.argmin(d))
                if d[e] >= -PIVOT_TOL:
                    return True
            col = T[:-1, e]
            pos = np.flatnonzero(col > PIVOT_TOL)
            if pos.size == 0:
                return False
            ratios = T[pos, -1] / col[pos]
            best = ratios.min()
            ties = pos[ratios <= best + PIVOT_TOL * (1.0 + abs(best))]
            if ties.size > 1:
                r = int(ties[np.argmin(self.basis[ties])])
            else:
                r = int(ties[0])
            streak = streak + 1 if best <= PIVOT_TOL else 0
            self.pivot(r, e)
            self.iterations += 1
            if self.iterations > self.max_iter:
                raise NumericalFailure(f"simplex exceeded {self.max_iter} pivots")

    def pivot(self, r, e):
        T = self.T
        prow = T[r] / T[r, e]
        col = T[:, e].copy()
        col[r] = 0.0
        T -= np.outer(col, prow)
        T[r] = prow
        self.basis[r] = e


def solve_lp(lp: LinearProgram, max_iter=None) -> LpSolution:
    """Solve ``lp`` to an optimal basic solution (or report infeasible/unbounded)."""
    n = lp.n
    lower, upper = lp.lower, lp.upper
    c = lp.c if lp.sense == "min" else -lp.c

    # shift x = lower + y so that y >= 0
    b_ub = lp.b_ub - lp.A_ub @ lower
    b_eq = lp.b_eq - lp.A_eq @ lower
    span = upper - lower
    if np.any(span < -FEAS_TOL):
        return LpSolution(Status.INFEASIBLE)
    bounded = np.flatnonzero(np.isfinite(span))
    A_in = lp.A_ub
    if bounded.size:
        A_in = np.vstack([A_in, np.eye(n)[bounded]])
        b_ub = np.concatenate([b_ub, np.maximum(span[bounded], 0.0)])
    n_in = A_in.shape[0]
    n_eq = lp.A_eq.shape[0]
    R = n_in + n_eq

    flip_in = b_ub < 0
    flip_eq = b_eq < 0
    need_art_in = np.flatnonzero(flip_in)
    n_art = need_art_in.size + n_eq
    ncols = n + n_in + n_art
    T = np.zeros((R + 1, ncols + 1))
    sign_in = np.where(flip_in, -1.0, 1.0)
    T[:n_in, :n] = A_in * sign_in[:, None]
    T[:n_in, n:n + n_in] = np.diag(sign_in)
    T[:n_in, -1] = b_ub * sign_in
    sign_eq = np.where(flip_eq, -1.0, 1.0)
    T[n_in:R, :n] = lp.A_eq * sign_eq[:, None]
    T[n_in:R, -1] = b_eq * sign_eq

    basis = np.empty(R, dtype=np.int64)
    basis[:n_in] = n + np.arange(n_in)
    art_rows = np.concatenate([need_art_in, n_in + np.arange(n_eq)]).astype(np.int64)
    art_cols = n + n_in + np.arange(n_art)
    T[art_rows, art_cols] = 1.0
    basis[art_rows] = art_cols

    if max_iter is None:
        max_iter = 50 * (R + ncols)
    tab = _Tableau(T, basis, max_iter)

    if n_art:
        T[-1, :] = 0.0
        T[-1, :] -= T[art_rows].sum(axis=0)
        T[-1, art_cols] = 0.0
        tab.run(ncols)
        infeas = -T[-1, -1]
        scale = 1.0 + float(np.abs(T[:-1, -1]).max(initial=0.0))
        if infeas > FEAS_TOL * scale:
            return LpSolution(Status.INFEASIBLE, iterations=tab.iterations)
        # drive artificial variables out of the basis, dropping redundant rows
        keep = np.ones(R, dtype=bool)
        for r in range(R):
            if tab.basis[r] >= n + n_in:
                row = T[r, :n + n_in]
                cand = np.flatnonzero(np.abs(row) > PIVOT_TOL)
                if cand.size:
                    tab.pivot(r, int(cand[0]))
                else:
                    keep[r] = False
        keep_rows = np.concatenate([np.flatnonzero(keep), [R]])
        T = np.ascontiguousarray(T[keep_rows][:, list(range(n + n_in)) + [ncols]])
        tab.T = T
        tab.basis = tab.basis[keep]
        ncols = n + n_in

    # phase 2 reduced costs
    cost = np.zeros(ncols)
    cost[:n] = c
    T[-1, :-1] = cost
    T[-1, -1] = 0.0
    cb = cost[tab.basis]
    T[-1] -= cb @ T[:-1]
    if not tab.run(ncols):
        return LpSolution(Status.UNBOUNDED, iterations=tab.iterations)

    y = np.zeros(ncols)
    y[tab.basis] = T[:-1, -1]
    x = lower + y[:n]
    x = np.clip(x, lower, upper)
    x = _refine(lp, x, tab.basis, n, A_in, b_ub, b_eq, lower)

    value = float(lp.c @ x)
    if lp.A_ub.shape[0]:
        slack = lp.b_ub - lp.A_ub @ x
        tight = tuple(int(i) for i in np.flatnonzero(slack <= FEAS_TOL * (1.0 + np.abs(lp.b_ub))))
    else:
        tight = ()
    return LpSolution(Status.OPTIMAL, x, value, tight, tab.iterations, tuple(int(b) for b in tab.basis))


def _refine(lp, x, basis, n, A_in, b_in, b_eq, lower):
    """Recompute the basic solution from the original data when the tableau drifted."""
    if _feasible(lp, x):
        return x
    n_in = A_in.shape[0]
    # standard-form matrix [A_in I; A_eq 0] restricted to the final basis
    rows = n_in + lp.A_eq.shape[0]
    M = np.zeros((rows, n + n_in))
    M[:n_in, :n] = A_in
    M[:n_in, n:] = np.eye(n_in)
    M[n_in:, :n] = lp.A_eq
    rhs = np.concatenate([b_in, b_eq])
    B = M[:, basis]
    try:
        yb = np.linalg.lstsq(B, rhs, rcond=None)[0]
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"basis refinement failed: {exc}") from None
    y = np.zeros(n + n_in)
    y[basis] = yb
    x2 = np.clip(lower + y[:n], lp.lower, lp.upper)
    if not _feasible(lp, x2, slack=1e3):
        raise NumericalFailure("simplex solution violates constraints beyond tolerance")
    return x2


def _feasible(lp, x, slack=1.0):
    tol = FEAS_TOL * slack
    if lp.A_ub.shape[0]:
        if np.any(lp.A_ub @ x - lp.b_ub > tol * (1.0 + np.abs(lp.b_ub))):
            return False
    if lp.A_eq.shape[0]:
        if np.any(np.abs(lp.A_eq @ x - lp.b_eq) > tol * (1.0 + np.abs(lp.b_eq))):
            return False
    return True
