"""Fundamental cone: pseudoweights, membership, exact extreme-ray enumeration, spectra.

Enumeration is the double-description method over Python integers.  Every
cone handled here lies in the nonnegative orthant, so the iteration starts
from the unit rays and adds the remaining inequalities one at a time;
adjacency uses the combinatorial zero-set test.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

from .codes import BinaryMatrix
from .errors import EmptyList, RayLimitExceeded, ZeroVector

DEFAULT_RAY_LIMIT = 10**7
FLOAT_TOL = 1e-9


def _is_exact(p):
    return all(isinstance(v, (Integral, Rational)) and not isinstance(v, bool) for v in p)


def _as_sequence(p):
    if isinstance(p, np.ndarray):
        if np.issubdtype(p.dtype, np.integer):
            return [int(v) for v in p]
        if p.dtype == object:
            return list(p)
        return [float(v) for v in p]
    return list(p)


def awgn_pseudoweight(p):
    """(sum p)^2 / sum p^2.  Exact (a ``Fraction``) for integer/rational input."""
    p = _as_sequence(p)
    if _is_exact(p):
        s = sum(Fraction(v) for v in p)
        q = sum(Fraction(v) * Fraction(v) for v in p)
        if q == 0:
            raise ZeroVector("pseudoweight of the zero vector is undefined")
        return s * s / q
    arr = np.asarray(p, dtype=float)
    q = float(arr @ arr)
    if q == 0.0:
        raise ZeroVector("pseudoweight of the zero vector is undefined")
    s = float(arr.sum())
    return s * s / q


def effective_distance_sq(p):
    """Squared effective Euclidean distance from the all-zero BPSK signal: 4 * pseudoweight."""
    return 4 * awgn_pseudoweight(p)


def cone_inequalities(H: BinaryMatrix):
    """Integer rows ``a`` with ``a . p >= 0`` describing the fundamental cone.

    Nonnegativity rows come first, then for each check (ascending row weight)
    and each ``i'`` in its support the row sum_{i in N(j), i != i'} p_i - p_{i'}.
    """
    n = H.n
    rows = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    order = sorted(range(H.m), key=lambda j: (int(H.row_weights[j]), j))
    for j in order:
        sup = [int(i) for i in H.row_support(j)]
        for ip in sup:
            a = [0] * n
            for i in sup:
                a[i] = 1
            a[ip] = -1
            rows.append(tuple(a))
    return rows


@dataclass(frozen=True)
class ConeSystem:
    H: BinaryMatrix
    inequalities: tuple

    @classmethod
    def of(cls, H):
        return cls(H, tuple(cone_inequalities(H)))

    def as_array(self):
        return np.array(self.inequalities, dtype=float)


def in_fundamental_cone(H: BinaryMatrix, p, tol=FLOAT_TOL):
    """Membership test; exact for integer/rational vectors, ``tol``-relaxed for floats."""
    p = _as_sequence(p)
    if len(p) != H.n:
        raise ValueError(f"vector length {len(p)} does not match n={H.n}")
    if _is_exact(p):
        if any(v < 0 for v in p):
            return False
        for j in range(H.m):
            sup = [int(i) for i in H.row_support(j)]
            total = sum(p[i] for i in sup)
            if any(total - p[i] < p[i] for i in sup):
                return False
        return True
    arr = np.asarray(p, dtype=float)
    scale = 1.0 + float(np.abs(arr).max(initial=0.0))
    if np.any(arr < -tol * scale):
        return False
    for j in range(H.m):
        vals = arr[H.row_support(j)]
        if np.any(vals.sum() - 2.0 * vals < -tol * scale):
            return False
    return True


def _normalize(vec):
    g = 0
    for v in vec:
        g = math.gcd(g, v)
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


def extreme_rays(constraints, dim, ray_limit=DEFAULT_RAY_LIMIT):
    """Extreme rays of {x in R^dim : x >= 0, a . x >= 0 for every a in constraints}.

    ``constraints`` are integer vectors; unit rows are harmless (they are
    redundant with the implicit orthant).  Returns rays as coprime integer
    tuples, sorted.
    """
    rays = [tuple(1 if k == i else 0 for k in range(dim)) for i in range(dim)]
    # zero sets over implicit nonnegativity bits 0..dim-1, then constraint bits
    zsets = [((1 << dim) - 1) & ~(1 << i) for i in range(dim)]
    need = dim - 2
    for k, a in enumerate(constraints):
        bit = 1 << (dim + k)
        a = tuple(int(v) for v in a)
        support = [i for i, v in enumerate(a) if v]
        vals = [sum(a[i] * r[i] for i in support) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            zsets = [z | bit if v == 0 else z for z, v in zip(zsets, vals)]
            continue
        new_rays, new_z = [], []
        for ip in pos:
            zp = zsets[ip]
            for iq in neg:
                common = zp & zsets[iq]
                if common.bit_count() < need:
                    continue
                if _dominated(common, zsets, ip, iq):
                    continue
                sp, sq = vals[ip], vals[iq]
                rp, rq = rays[ip], rays[iq]
                new_rays.append(_normalize([sp * y - sq * x for x, y in zip(rp, rq)]))
                new_z.append(common | bit)
        keep = [i for i, v in enumerate(vals) if v >= 0]
        rays = [rays[i] for i in keep] + new_rays
        zsets = [zsets[i] | bit if vals[i] == 0 else zsets[i] for i in keep] + new_z
        if len(rays) > ray_limit:
            raise RayLimitExceeded(ray_limit, len(rays))
    return sorted(set(rays))


def _dominated(common, zsets, ip, iq):
    for i, z in enumerate(zsets):
        if z & common == common and i != ip and i != iq:
            return True
    return False


def enumerate_generators(H: BinaryMatrix, ray_limit=DEFAULT_RAY_LIMIT):
    """All extreme rays (generators) of the fundamental cone of ``H``, as integer tuples."""
    system = cone_inequalities(H)
    return extreme_rays(system[H.n:], H.n, ray_limit=ray_limit)


def fundamental_polytope_vertices(H: BinaryMatrix, ray_limit=DEFAULT_RAY_LIMIT):
    """Vertices of the fundamental polytope (all odd-set inequalities plus the unit box).

    Works on the homogenized cone {(x, t)}: each ray with t > 0 gives the vertex x / t.
    Exponential in the row weights; intended for short codes.
    """
    from .lpdecoder import odd_set_cuts

    n = H.n
    cons = []
    for i in range(n):
        a = [0] * (n + 1)
        a[i] = -1
        a[n] = 1
        cons.append(a)  # x_i <= t
    for j in range(H.m):
        for cut in odd_set_cuts(H.row_support(j), j):
            a = [0] * (n + 1)
            for i in cut.support:
                a[i] = 1
            for i in cut.subset:
                a[i] = -1
            a[n] = cut.rhs
            cons.append(a)
    rays = extreme_rays(cons, n + 1, ray_limit=ray_limit)
    return [tuple(Fraction(v, r[n]) for v in r[:n]) for r in rays if r[n] > 0]


def scale_to_sum(p, a):
    """Exact rescaling of ``p`` so its components sum to ``a``."""
    a = Fraction(a)
    s = sum(Fraction(v) for v in p)
    if s == 0:
        raise ZeroVector("cannot rescale the zero vector")
    return tuple(Fraction(v) * a / s for v in p)


@dataclass(frozen=True)
class GeneratorSpectrum:
    entries: tuple  # ((weight, count), ...) with strictly increasing weights
    total_generators: int

    @property
    def minimum(self):
        return self.entries[0]

    def as_dict(self):
        return dict(self.entries)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pseudoweight", "count"])
        for weight, count in self.entries:
            w.writerow([repr(float(weight)), count])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if [h.strip() for h in header[:2]] != ["pseudoweight", "count"]:
            raise ValueError("spectrum CSV must start with header 'pseudoweight,count'")
        entries = sorted((float(row[0]), int(row[1])) for row in reader if row)
        return cls(tuple(entries), sum(c for _, c in entries))


def weight_spectrum(generators, precision=6, normalization=None):
    """Bin generator pseudoweights, rounded to ``precision`` decimals.

    With ``normalization`` set, each generator is first rescaled exactly to
    that component sum (the result must not depend on it).
    """
    generators = list(generators)
    if not generators:
        raise EmptyList("weight spectrum of an empty generator list")
    counts = {}
    for g in generators:
        if normalization is not None:
            g = scale_to_sum(g, normalization)
        w = round(float(awgn_pseudoweight(g)), precision)
        counts[w] = counts.get(w, 0) + 1
    entries = tuple(sorted(counts.items()))
    return GeneratorSpectrum(entries, len(generators))


def minimal_generators(generators):
    """Generators attaining the smallest pseudoweight (exact comparison) and that weight."""
    generators = list(generators)
    if not generators:
        raise EmptyList("no generators given")
    weights = [awgn_pseudoweight(g) for g in generators]
    best = min(weights)
    return best, [g for g, w in zip(generators, weights) if w == best]
