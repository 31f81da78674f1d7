"""LP decoding over the fundamental polytope with lazily generated odd-set cuts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .codes import BinaryMatrix
from .errors import NumericalFailure
from .lp import LinearProgram, solve_lp

CUT_TOL = 1e-8
INTEGRALITY_TOL = 1e-6
NEAR_INTEGRAL_TOL = 1e-4
PREADD_MAX_WEIGHT = 6
MAX_ROUNDS = 1000


class Verdict(Enum):
    ML_CODEWORD = "MlCodeword"
    FRACTIONAL = "FractionalPseudocodeword"
    UNDETERMINED = "IntegralityUndetermined"


@dataclass(frozen=True)
class ParityCut:
    """sum_{i in S} x_i - sum_{i in N(j) minus S} x_i <= |S| - 1 for an odd subset S of N(j)."""

    check: int
    subset: tuple
    support: tuple
    violation: float = 0.0

    @property
    def rhs(self):
        return len(self.subset) - 1

    def row(self, n):
        a = np.zeros(n)
        a[list(self.support)] = -1.0
        a[list(self.subset)] = 1.0
        return a


@dataclass
class LpDecodeResult:
    x: np.ndarray
    integral: bool
    objective_value: float
    cuts_added: int
    verdict: Verdict
    rounds: int = 1

    @property
    def hard_bits(self):
        return np.rint(self.x).astype(np.uint8) if self.integral else None


def find_violated_cut(support, x, check=0):
    """Most violated odd-set inequality of one check, or None.

    ``support`` lists the variable indices of the check; ``x`` is either the
    full vector or already restricted to the support (same length).
    """
    support = np.asarray(support, dtype=int)
    x = np.asarray(x, dtype=float)
    # a vector as long as the support is already restricted to it
    vals = x if x.size == support.size else x[support]
    inside = vals > 0.5
    if inside.sum() % 2 == 0:
        # toggle the coordinate closest to 1/2 (ties: lowest position)
        k = int(np.argmin(np.abs(vals - 0.5)))
        inside[k] = not inside[k]
    violation = vals[inside].sum() - vals[~inside].sum() - (inside.sum() - 1)
    if violation <= CUT_TOL:
        return None
    return ParityCut(check, tuple(int(i) for i in support[inside]), tuple(int(i) for i in support),
                     float(violation))


def odd_set_cuts(support, check=0):
    """Every odd-set inequality of a check with the given support."""
    support = tuple(int(i) for i in support)
    for size in range(1, len(support) + 1, 2):
        for subset in itertools.combinations(support, size):
            yield ParityCut(check, subset, support)


class LpDecoder:
    """Reusable LP decoder for one parity-check matrix.

    Rows of weight <= ``preadd_max_weight`` contribute all their odd-set
    inequalities up front; heavier rows are separated lazily.
    """

    def __init__(self, H: BinaryMatrix, preadd_max_weight=PREADD_MAX_WEIGHT):
        self.H = H
        self.supports = H.supports
        self.preadd_max_weight = preadd_max_weight
        rows, rhs = [], []
        for j, sup in enumerate(self.supports):
            if sup.size <= preadd_max_weight:
                for cut in odd_set_cuts(sup, j):
                    rows.append(cut.row(H.n))
                    rhs.append(cut.rhs)
        self.base_A = np.array(rows).reshape(len(rows), H.n)
        self.base_b = np.array(rhs, dtype=float)
        self.lazy_checks = [j for j, sup in enumerate(self.supports) if sup.size > preadd_max_weight]

    def decode(self, llr):
        llr = np.asarray(llr, dtype=float)
        n = self.H.n
        if llr.shape != (n,):
            raise ValueError(f"llr must have length {n}")
        if not np.all(np.isfinite(llr)):
            raise ValueError("llr must be finite")
        A, b = self.base_A, self.base_b
        lower, upper = np.zeros(n), np.ones(n)
        # positive scaling leaves the argmin unchanged; normalizing makes the
        # simplex tolerances (and so tie-breaking) independent of the noise level
        scale = float(np.abs(llr).max(initial=0.0))
        cost = llr / scale if scale > 0 else llr
        added = 0
        for rounds in range(1, MAX_ROUNDS + 1):
            sol = solve_lp(LinearProgram(cost, A, b, lower=lower, upper=upper))
            if not sol.optimal:
                raise NumericalFailure(f"LP decoding relaxation reported {sol.status.value}")
            x = sol.x
            new = []
            for j in self.lazy_checks:
                cut = find_violated_cut(self.supports[j], x[self.supports[j]], j)
                if cut is not None:
                    new.append(cut)
            if not new:
                break
            A = np.vstack([A] + [c.row(n) for c in new])
            b = np.concatenate([b, [c.rhs for c in new]])
            added += len(new)
        else:
            raise NumericalFailure(f"cut generation did not converge in {MAX_ROUNDS} rounds")
        return _classify(self.H, x, float(llr @ x), added, rounds)


def _classify(H, x, value, added, rounds):
    frac = np.minimum(x, 1.0 - x)
    worst = float(frac.max(initial=0.0))
    if worst <= INTEGRALITY_TOL:
        x = np.rint(x)
        verdict = Verdict.ML_CODEWORD if H.is_codeword(x) else Verdict.UNDETERMINED
        integral = verdict is Verdict.ML_CODEWORD
    elif worst <= NEAR_INTEGRAL_TOL:
        integral, verdict = False, Verdict.UNDETERMINED
    else:
        integral, verdict = False, Verdict.FRACTIONAL
    return LpDecodeResult(x, integral, value, added, verdict, rounds)


@lru_cache(maxsize=32)
def _decoder_for(H, preadd_max_weight):
    return LpDecoder(H, preadd_max_weight)


def decode_lp(H: BinaryMatrix, llr, preadd_max_weight=PREADD_MAX_WEIGHT) -> LpDecodeResult:
    """Minimize sum(llr * x) over the fundamental polytope of ``H``."""
    return _decoder_for(H, preadd_max_weight).decode(llr)
