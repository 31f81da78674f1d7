"""Union bounds for ML and LP decoding and their dominant-term approximations.

Both use the pairwise term Q(sqrt(w) / sigma): for a Hamming weight w the
BPSK Euclidean distance is 2 sqrt(w), and for a pseudoweight w the effective
distance is 2 sqrt(w) as well.  Values are not clipped at 1.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum

from .channel import sigma_from_ebn0
from .errors import EmptySpectrum


class SpectrumKind(Enum):
    HAMMING = "HammingWeights"
    PSEUDO = "Pseudoweights"


class BoundMode(Enum):
    FULL = "Full"
    DOMINANT = "DominantOnly"


@dataclass(frozen=True)
class WeightSpectrum:
    entries: tuple  # ((weight, multiplicity), ...) sorted by weight
    kind: SpectrumKind = SpectrumKind.PSEUDO

    def __post_init__(self):
        merged = {}
        for w, c in self.entries:
            if not w > 0:
                raise ValueError(f"weights must be positive, got {w}")
            if c < 1:
                raise ValueError(f"multiplicities must be >= 1, got {c}")
            merged[float(w)] = merged.get(float(w), 0) + int(c)
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @classmethod
    def from_mapping(cls, mapping, kind=SpectrumKind.PSEUDO):
        return cls(tuple(mapping.items()), kind)

    @classmethod
    def from_generator_spectrum(cls, spectrum, kind=SpectrumKind.PSEUDO):
        return cls(tuple(spectrum.entries), kind)

    @property
    def minimum(self):
        return self.entries[0]


def q_function(x):
    """Gaussian tail probability P(N(0,1) > x)."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def union_bound(spectrum: WeightSpectrum, sigma, mode=BoundMode.FULL):
    """Sum of multiplicity * Q(sqrt(w)/sigma) over the spectrum (or its minimum entry only)."""
    if not spectrum.entries:
        raise EmptySpectrum("union bound of an empty spectrum")
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    mode = BoundMode(mode) if not isinstance(mode, BoundMode) else mode
    entries = spectrum.entries if mode is BoundMode.FULL else spectrum.entries[:1]
    return math.fsum(count * q_function(math.sqrt(w) / sigma) for w, count in entries)


def bound_curve(spectrum: WeightSpectrum, ebn0_list, rate, mode=BoundMode.FULL):
    """[(ebn0_db, bound)] with sigma from the rate-normalized Eb/N0 conversion."""
    return [(float(e), union_bound(spectrum, sigma_from_ebn0(e, rate), mode)) for e in ebn0_list]


def curve_to_csv(points):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["ebn0_db", "value"])
    for e, v in points:
        w.writerow([repr(float(e)), repr(float(v))])
    return buf.getvalue()
