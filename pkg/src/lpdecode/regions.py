"""Decision-region maps on a 2D cut of the received-signal space.

The received word at grid point (y, x) is
``modulate(0) + n_y * y / |n_y| + n_x * x / |n_x|``; every point is decoded and
points with identical outputs share a region id.
"""

from __future__ import annotations

import colorsys
import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .channel import llr_from_received, modulate
from .codes import BinaryMatrix, min_hamming_distance
from .cone import awgn_pseudoweight
from .decoders import BpConfig, decode_bp, decode_ml_batch
from .errors import InvalidCut, NonOrthogonalCut
from .lpdecoder import decode_lp

KEY_DECIMALS = 4
ORTHO_TOL = 1e-9
GOLDEN = 0.6180339887498949


class RegionClass(Enum):
    TRANSMITTED = "TransmittedCodeword"
    OTHER_CODEWORD = "OtherCodeword"
    INTEGRAL_NONCODEWORD = "IntegralNonCodeword"
    FRACTIONAL = "FractionalPseudocodeword"


@dataclass
class CutSpec:
    n_y: np.ndarray
    n_x: np.ndarray
    y_range: tuple = (-2.0, 4.0)
    x_range: tuple = (-2.0, 4.0)
    step: float = 0.02
    sigma: float = 1.0

    def __post_init__(self):
        self.n_y = np.asarray(self.n_y, dtype=float)
        self.n_x = np.asarray(self.n_x, dtype=float)
        if self.n_y.shape != self.n_x.shape or self.n_y.ndim != 1:
            raise InvalidCut("n_y and n_x must be vectors of equal length")
        if not self.step > 0:
            raise InvalidCut("step must be positive")
        if not self.sigma > 0:
            raise InvalidCut("sigma must be positive")
        if self.norm_y == 0 or self.norm_x == 0:
            raise InvalidCut("spanning directions must be nonzero")
        dot = float(self.n_y @ self.n_x)
        if abs(dot) > ORTHO_TOL * self.norm_y * self.norm_x:
            raise NonOrthogonalCut(f"<n_y, n_x> = {dot:g}, directions must be orthogonal")
        for lo, hi in (self.y_range, self.x_range):
            if lo > hi:
                raise InvalidCut("range minimum exceeds maximum")

    @property
    def norm_y(self):
        return float(np.sqrt(self.n_y @ self.n_y))

    @property
    def norm_x(self):
        return float(np.sqrt(self.n_x @ self.n_x))

    def check_ranges(self, d_min):
        """Ranges must satisfy min >= -d_min/2 and max <= d_min."""
        for lo, hi in (self.y_range, self.x_range):
            if lo < -d_min / 2 - 1e-12 or hi > d_min + 1e-12:
                raise InvalidCut(f"range [{lo}, {hi}] violates -d_min/2 <= range <= d_min (d_min={d_min})")

    def axis(self, rng):
        lo, hi = rng
        count = int(np.floor((hi - lo) / self.step + 1e-9)) + 1
        return lo + self.step * np.arange(count)

    @property
    def ys(self):
        return self.axis(self.y_range)

    @property
    def xs(self):
        return self.axis(self.x_range)


def compose_received(cut: CutSpec, y, x):
    """Transmitted all-zero BPSK word plus normalized noise along the cut."""
    n = cut.n_y.size
    return modulate(np.zeros(n)) + cut.n_y * (y / cut.norm_y) + cut.n_x * (x / cut.norm_x)


@dataclass
class RegionInfo:
    id: int
    cls: RegionClass
    vector: np.ndarray
    pseudoweight: float | None = None

    def to_json(self):
        out = {"id": self.id, "class": self.cls.value,
               "vector": [round(float(v), 6) for v in self.vector]}
        if self.pseudoweight is not None:
            out["pseudoweight"] = round(float(self.pseudoweight), 6)
        return out


@dataclass
class RegionMap:
    ys: np.ndarray
    xs: np.ndarray
    ids: np.ndarray  # shape (len(ys), len(xs))
    legend: list
    decoder: str
    sigma: float
    meta: dict = field(default_factory=dict)

    def region_at(self, y, x):
        iy = int(np.argmin(np.abs(self.ys - y)))
        ix = int(np.argmin(np.abs(self.xs - x)))
        return self.legend[int(self.ids[iy, ix])]

    def regions_of_class(self, cls):
        return [r for r in self.legend if r.cls is cls]

    def mask(self, region_id):
        return self.ids == region_id

    def transmitted_id(self):
        for r in self.legend:
            if r.cls is RegionClass.TRANSMITTED:
                return r.id
        return None

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["y", "x", "region_id"])
        for iy, y in enumerate(self.ys):
            for ix, x in enumerate(self.xs):
                w.writerow([_fmt(y), _fmt(x), int(self.ids[iy, ix])])
        return buf.getvalue()

    def legend_json(self):
        return json.dumps([r.to_json() for r in self.legend], indent=1)

    def to_ppm(self):
        """P3 image, one pixel per cell, highest y in the top row."""
        palette = [region_color(r.id) for r in self.legend]
        rows = []
        for iy in range(len(self.ys) - 1, -1, -1):
            rows.append(" ".join("%d %d %d" % palette[int(i)] for i in self.ids[iy]))
        header = f"P3\n{len(self.xs)} {len(self.ys)}\n255\n"
        return header + "\n".join(rows) + "\n"

    def write(self, prefix):
        with open(f"{prefix}.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_csv())
        with open(f"{prefix}.legend.json", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.legend_json())
        with open(f"{prefix}.ppm", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_ppm())


def _fmt(v):
    return f"{float(v):.6g}"


def region_color(region_id):
    hue = (region_id * GOLDEN) % 1.0
    r, g, b = colorsys.hsv_to_rgb(hue, 0.65, 0.95)
    return int(round(r * 255)), int(round(g * 255)), int(round(b * 255))


def _classify(H, vec, fractional):
    if fractional:
        return RegionClass.FRACTIONAL, float(awgn_pseudoweight(vec))
    if not np.any(vec):
        return RegionClass.TRANSMITTED, None
    if H.is_codeword(vec):
        return RegionClass.OTHER_CODEWORD, None
    return RegionClass.INTEGRAL_NONCODEWORD, None


def decode_grid(H: BinaryMatrix, decoder: str, cut: CutSpec, bp_config: BpConfig = BpConfig()):
    """Decoder outputs for every grid cell, shape (len(ys), len(xs), n), as floats."""
    ys, xs = cut.ys, cut.xs
    n = H.n
    base = modulate(np.zeros(n))
    # same evaluation order as compose_received, so single-point decodes agree bit for bit
    received = (base[None, None, :] + cut.n_y * (ys / cut.norm_y)[:, None, None]
                + cut.n_x * (xs / cut.norm_x)[None, :, None])
    flat = received.reshape(-1, n)
    if decoder == "ml":
        out = decode_ml_batch(H, flat).astype(float)
    elif decoder == "lp":
        out = np.array([decode_lp(H, llr_from_received(r, cut.sigma)).x for r in flat])
    elif decoder == "bp":
        out = np.array([decode_bp(H, llr_from_received(r, cut.sigma), bp_config).hard_bits
                        for r in flat], dtype=float)
    else:
        raise ValueError(f"unknown decoder {decoder!r} (use lp, bp or ml)")
    return out.reshape(len(ys), len(xs), n)


def map_regions(H: BinaryMatrix, decoder: str, cut: CutSpec, bp_config: BpConfig = BpConfig(),
                check_ranges=True) -> RegionMap:
    """Decode every point of the cut and label identical outputs with one region id.

    Region ids follow row-major first appearance (y ascending, then x).
    """
    if cut.n_y.size != H.n:
        raise InvalidCut(f"cut directions have length {cut.n_y.size}, code length is {H.n}")
    if check_ranges:
        cut.check_ranges(min_hamming_distance(H))
    outputs = decode_grid(H, decoder, cut, bp_config)
    ny, nx, n = outputs.shape
    flat = outputs.reshape(-1, n)
    keys = np.round(flat, KEY_DECIMALS) + 0.0  # drop -0.0
    ids = np.empty(ny * nx, dtype=np.int64)
    seen = {}
    legend = []
    for k, row in enumerate(keys):
        key = row.tobytes()
        rid = seen.get(key)
        if rid is None:
            rid = len(legend)
            seen[key] = rid
            frac = bool(np.any(np.abs(row - np.rint(row)) > 0))
            vec = flat[k].copy() if frac else np.rint(row).astype(np.uint8)
            cls, pw = _classify(H, vec, frac)
            legend.append(RegionInfo(rid, cls, vec, pw))
        ids[k] = rid
    meta = {"decoder": decoder, "sigma": cut.sigma, "step": cut.step,
            "y_range": list(cut.y_range), "x_range": list(cut.x_range),
            "n_y": cut.n_y.tolist(), "n_x": cut.n_x.tolist(), "matrix": H.name}
    return RegionMap(cut.ys, cut.xs, ids.reshape(ny, nx), legend, decoder, cut.sigma, meta)


def boundary_along(rmap: RegionMap, axis: str, region_id, at=0.0):
    """First coordinate along the y (or x) axis, through the other coordinate ``at``,
    where the map leaves ``region_id`` when moving in the positive direction from 0."""
    if axis == "y":
        line = rmap.ids[:, int(np.argmin(np.abs(rmap.xs - at)))]
        coords = rmap.ys
    else:
        line = rmap.ids[int(np.argmin(np.abs(rmap.ys - at))), :]
        coords = rmap.xs
    start = int(np.argmin(np.abs(coords)))
    for k in range(start, len(coords)):
        if line[k] != region_id:
            return 0.5 * (coords[k - 1] + coords[k]) if k > start else coords[k]
    return None


def cost_signature(rmap: RegionMap, vector):
    """(sum v, u_y.v, u_x.v): on the cut the decoding cost of ``v`` is an affine
    function of (y, x) with exactly these coefficients."""
    n_y = np.asarray(rmap.meta["n_y"], dtype=float)
    n_x = np.asarray(rmap.meta["n_x"], dtype=float)
    v = np.asarray(vector, dtype=float)
    return (round(float(v.sum()), 6) + 0.0,
            round(float(n_y @ v) / float(np.sqrt(n_y @ n_y)), 6) + 0.0,
            round(float(n_x @ v) / float(np.sqrt(n_x @ n_x)), 6) + 0.0)


def tied_groups(rmap: RegionMap):
    """Group id per region id; regions share a group when their outputs cost the same
    at every point of the cut, so the decoder's choice between them is a tie-break."""
    groups, out = {}, []
    for r in rmap.legend:
        out.append(groups.setdefault(cost_signature(rmap, r.vector), len(groups)))
    return out


def convexity_violations(rmap: RegionMap, region_id, samples=2000, seed=0, merge_ties=False):
    """Sampled segment test: count cell pairs of one region whose connecting segment
    passes a cell of another region that is not adjacent to the region.

    With ``merge_ties`` the region is united with every region tied to it.
    """
    mask = rmap.mask(region_id)
    if merge_ties:
        groups = tied_groups(rmap)
        mask = np.isin(rmap.ids, [i for i, g in enumerate(groups) if g == groups[region_id]])
    cells = np.argwhere(mask)
    if len(cells) < 2:
        return 0
    # cells of the region plus their 8-neighbourhood count as boundary slack
    padded = np.pad(mask, 1)
    near = np.zeros_like(padded)
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            near |= np.roll(np.roll(padded, dy, axis=0), dx, axis=1)
    near = near[1:-1, 1:-1]
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(samples):
        a, b = cells[rng.integers(len(cells), size=2)]
        steps = int(max(abs(b - a))) + 1
        for t in np.linspace(0.0, 1.0, steps + 1):
            c = np.rint(a + t * (b - a)).astype(int)
            if not mask[c[0], c[1]] and not near[c[0], c[1]]:
                bad += 1
                break
    return bad
