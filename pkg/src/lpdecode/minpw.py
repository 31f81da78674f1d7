"""Minimal AWGN pseudoweight by spatial branch-and-bound.

On the slice {p in cone, sum p = a} the pseudoweight is a^2 / sum p^2, so the
minimum weight comes from the global maximum of the convex function sum p^2.
Each node carries a box [l, u]; replacing p_i^2 by its secant
(l_i + u_i) p_i - l_i u_i gives a linear overestimator whose LP maximum is
the node's upper bound, and the LP's basic optimum (a feasible point) gives a
lower bound.  Nodes are pruned only when strictly worse than the incumbent,
so every vertex attaining the maximum is eventually reported.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field

import numpy as np

from .codes import BinaryMatrix
from .cone import ConeSystem, awgn_pseudoweight, enumerate_generators, in_fundamental_cone, minimal_generators
from .errors import NodeBudgetExceeded, RayLimitExceeded
from .lp import LinearProgram, solve_lp

log = logging.getLogger(__name__)

DEFAULT_EPS = 1e-6
DEFAULT_NODE_BUDGET = 10**6
PRUNE_MARGIN = 1e-12
CROSS_CHECK_MAX_N = 16


@dataclass
class BoundedConePolytope:
    """{p : cone inequalities of H, sum p = a, lower <= p <= upper}."""

    base: ConeSystem
    a: float
    lower: np.ndarray = None
    upper: np.ndarray = None

    def __post_init__(self):
        n = self.base.H.n
        if not self.a > 0:
            raise ValueError("normalization a must be positive")
        self.lower = np.zeros(n) if self.lower is None else np.asarray(self.lower, dtype=float)
        self.upper = np.full(n, float(self.a)) if self.upper is None else np.asarray(self.upper, dtype=float)
        checks = self.base.as_array()[n:]
        self._checks = checks
        self._A_ub = -checks
        self._b_ub = np.zeros(checks.shape[0])
        self._A_eq = np.ones((1, n))
        self._b_eq = np.array([float(self.a)])

    def vertex_of_slice(self, v, tol=1e-7):
        """Snap ``v`` to the vertex of the unboxed slice it sits on, or return None.

        ``v`` is a vertex when the cone constraints, nonnegativities and the
        sum constraint that are tight at it have rank n.
        """
        scale = tol * self.a
        tight = [self._checks[np.abs(self._checks @ v) <= scale],
                 np.eye(self.n)[v <= scale],
                 np.ones((1, self.n))]
        M = np.vstack(tight)
        if np.linalg.matrix_rank(M) < self.n:
            return None
        rhs = np.zeros(M.shape[0])
        rhs[-1] = self.a
        exact = np.linalg.lstsq(M, rhs, rcond=None)[0]
        if np.max(np.abs(exact - v)) > 1e3 * scale:
            return None
        return np.maximum(exact, 0.0)

    @classmethod
    def of(cls, H: BinaryMatrix, a=None, lower=None, upper=None):
        return cls(ConeSystem.of(H), float(H.n if a is None else a), lower, upper)

    @property
    def n(self):
        return self.base.H.n

    def linear_max(self, c, lower=None, upper=None):
        """Maximize c.p over the polytope restricted to [lower, upper]."""
        lower = self.lower if lower is None else lower
        upper = self.upper if upper is None else upper
        return solve_lp(LinearProgram(c, self._A_ub, self._b_ub, self._A_eq, self._b_eq,
                                      lower, upper, sense="max"))


@dataclass
class BnbTrace:
    upper_bounds: list = field(default_factory=list)
    incumbents: list = field(default_factory=list)


@dataclass
class MinWeightResult:
    w_p_min: float
    n_p_min: int
    witnesses: list
    relative_gap: float
    f_star: float
    a: float
    nodes: int
    cross_check: tuple | None = None  # (weight, count) from exact enumeration, when run

    @property
    def cross_check_agrees(self):
        if self.cross_check is None:
            return None
        w, count = self.cross_check
        return abs(w - self.w_p_min) <= 1e-6 * w and count == self.n_p_min


def _sumsq(v):
    return float(v @ v)


def max_sum_squares(P: BoundedConePolytope, eps=DEFAULT_EPS, node_budget=DEFAULT_NODE_BUDGET, trace=None,
                    warm_starts=0, seed=0):
    """Certified maximum of sum p^2 over ``P`` and all vertices within ``eps`` of it.

    ``warm_starts`` local ascents seed the incumbent before branching; they
    only tighten pruning and never change the certified result.

    Returns ``(f_star, vertices, info)`` where ``info`` holds the node count and
    the final relative gap.
    """
    if not 0 < eps <= 1e-2:
        raise ValueError("eps must lie in (0, 1e-2]")
    a = P.a
    delta = 1e-6 * a
    gap_tol = 1e-9 * a * a
    fix_tol = 1e-9 * a

    counter = 0
    heap = []
    incumbent = -np.inf
    candidates = []

    def consider(v):
        nonlocal incumbent
        f = _sumsq(v)
        if f > incumbent:
            incumbent = f
        candidates.append((f, v))

    def push(lower, upper):
        nonlocal counter
        sol = P.linear_max(lower + upper, lower, upper)
        counter += 1
        if not sol.optimal:
            return
        v = sol.x
        ub = float((lower + upper) @ v - lower @ upper)
        consider(v)
        heapq.heappush(heap, (-ub, counter, lower, upper, v))

    rng = np.random.default_rng(seed)
    for _ in range(warm_starts):
        sol = P.linear_max(rng.standard_normal(P.n))
        if sol.optimal:
            consider(vertex_ascent(P, sol.x)[0])
    push(P.lower.copy(), P.upper.copy())
    if not heap:
        raise ValueError("the bounded cone polytope is empty")
    last_ub = np.inf
    while heap:
        neg_ub, _, lower, upper, v = heapq.heappop(heap)
        ub = -neg_ub
        if trace is not None:
            trace.upper_bounds.append(max(ub, incumbent))
            trace.incumbents.append(incumbent)
        last_ub = ub
        if ub < (1.0 - eps) * incumbent - PRUNE_MARGIN:
            heap.clear()
            break
        if counter >= node_budget:
            raise NodeBudgetExceeded(f"branch-and-bound exceeded {node_budget} nodes")
        gaps = (v - lower) * (upper - v)
        i = int(np.argmax(gaps))
        if gaps[i] > gap_tol:
            s = min(max(v[i], lower[i] + delta), upper[i] - delta)
            up_left = upper.copy()
            up_left[i] = s
            lo_right = lower.copy()
            lo_right[i] = s
            push(lower, up_left)
            push(lo_right, upper)
            continue
        # v is a corner of the box and attains the bound: split off the other
        # corners of one free coordinate so further optima in this box are found
        free = np.flatnonzero(upper - lower > 2 * delta)
        if free.size == 0:
            continue
        i = int(free[0])
        at_lower = abs(v[i] - lower[i]) <= fix_tol
        fixed_lo, fixed_up = lower.copy(), upper.copy()
        fixed_lo[i] = fixed_up[i] = v[i]
        rest_lo, rest_up = lower.copy(), upper.copy()
        if at_lower:
            rest_lo[i] = lower[i] + delta
        else:
            rest_up[i] = upper[i] - delta
        push(fixed_lo, fixed_up)
        push(rest_lo, rest_up)

    f_star = incumbent
    bound = max(last_ub, f_star) if heap else f_star
    threshold = (1.0 - eps) * f_star
    snapped = (P.vertex_of_slice(v) for f, v in candidates if f >= threshold)
    vertices = _dedupe([v for v in snapped if v is not None and _sumsq(v) >= threshold], 1e-6 * a)
    gap = max(0.0, (bound - f_star) / f_star)
    return f_star, vertices, {"nodes": counter, "relative_gap": gap}


def _dedupe(points, tol):
    kept = []
    for p in sorted(points, key=lambda q: tuple(np.round(q / tol))):
        if not any(np.max(np.abs(p - q)) <= tol for q in kept):
            kept.append(p)
    return kept


def min_pseudoweight(H: BinaryMatrix, a=None, eps=DEFAULT_EPS, node_budget=DEFAULT_NODE_BUDGET,
                     cross_check=True, ray_limit=10**6, trace=None) -> MinWeightResult:
    """Minimal pseudoweight of ``H`` and the number of generators attaining it.

    ``a`` defaults to ``n``.  For ``n <= 16`` the answer is also recomputed by
    exact generator enumeration and stored in ``cross_check``.
    """
    P = BoundedConePolytope.of(H, a)
    f_star, vertices, info = max_sum_squares(P, eps=eps, node_budget=node_budget, trace=trace)
    w = P.a * P.a / f_star
    result = MinWeightResult(
        w_p_min=w,
        n_p_min=len(vertices),
        witnesses=vertices,
        relative_gap=info["relative_gap"],
        f_star=f_star,
        a=P.a,
        nodes=info["nodes"],
    )
    if cross_check and H.n <= CROSS_CHECK_MAX_N:
        try:
            best, gens = minimal_generators(enumerate_generators(H, ray_limit=ray_limit))
            result.cross_check = (float(best), len(gens))
        except RayLimitExceeded:
            log.info("exact cross-check skipped for %s: ray limit", H.name or "matrix")
        if result.cross_check is not None and not result.cross_check_agrees:
            log.warning("branch-and-bound %s disagrees with enumeration %s",
                        (w, len(vertices)), result.cross_check)
    return result


def vertex_ascent(P: BoundedConePolytope, v, max_steps=1000):
    """Local improvement: move to the LP vertex maximizing the linearization of sum p^2 at v.

    Each step cannot decrease sum p^2 (convexity); stops at a fixed point.
    """
    f = _sumsq(v)
    for _ in range(max_steps):
        sol = P.linear_max(2.0 * v)
        if not sol.optimal:
            break
        f_new = _sumsq(sol.x)
        if f_new <= f * (1.0 + 1e-12):
            break
        v, f = sol.x, f_new
    return v, f


def multistart_estimate(P: BoundedConePolytope, starts=20, seed=0):
    """Best local maximum of sum p^2 from random LP objectives; returns the implied weight a^2/f.

    The value is an upper bound on the minimal pseudoweight.
    """
    if starts < 1:
        raise ValueError("starts must be >= 1")
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(starts):
        c = rng.standard_normal(P.n)
        sol = P.linear_max(c)
        if not sol.optimal:
            continue
        _, f = vertex_ascent(P, sol.x)
        best = max(best, f)
    if best <= 0.0:
        raise ValueError("no feasible start found")
    return P.a * P.a / best


def witness_check(H, result, tol=1e-6):
    """True when every witness is in the cone, sums to a, and has the reported weight."""
    for v in result.witnesses:
        if not in_fundamental_cone(H, v):
            return False
        if abs(v.sum() - result.a) > 1e-9 * result.a:
            return False
        if abs(awgn_pseudoweight(v) - result.w_p_min) > tol * result.w_p_min:
            return False
    return True
