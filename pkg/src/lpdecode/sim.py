"""Monte-Carlo frame error rate of the all-zero codeword over BPSK/AWGN.

Noise for frame ``t`` of SNR point ``k`` is drawn from a generator seeded by
``(seed, k, t)``, so results do not depend on how frames are scheduled.
Frames are evaluated in blocks; the count is truncated at the exact frame
where the error budget is reached.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import binomtest

from .channel import llr_from_received, modulate, sigma_from_ebn0
from .codes import BinaryMatrix, code_dimension
from .decoders import BpConfig, decode_bp, decode_ml_batch
from .lpdecoder import decode_lp

BLOCK = 256
DECODERS = ("lp", "bp", "ml")


@dataclass(frozen=True)
class FerPoint:
    ebn0_db: float
    frames: int
    frame_errors: int
    fer: float
    ci_lo: float
    ci_hi: float

    @property
    def wilson_ci95(self):
        return self.ci_lo, self.ci_hi


def wilson_interval(errors, frames, confidence=0.95):
    ci = binomtest(errors, frames).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def frame_noise(seed, point_index, frame, n):
    return np.random.default_rng([seed, point_index, frame]).standard_normal(n)


def _block_errors(args):
    H, decoder, sigma, seed, point_index, start, stop, bp_config = args
    n = H.n
    tx = modulate(np.zeros(n))
    received = np.array([tx + sigma * frame_noise(seed, point_index, t, n) for t in range(start, stop)])
    if decoder == "ml":
        return np.any(decode_ml_batch(H, received), axis=1)
    flags = np.empty(stop - start, dtype=bool)
    for i, r in enumerate(received):
        llr = llr_from_received(r, sigma)
        if decoder == "lp":
            res = decode_lp(H, llr)
            flags[i] = not res.integral or bool(np.any(res.x))
        else:
            flags[i] = bool(np.any(decode_bp(H, llr, bp_config).hard_bits))
    return flags


def run_fer(H: BinaryMatrix, decoder, ebn0_list, max_frames=10**6, max_errors=200, seed=0,
            bp_config: BpConfig = BpConfig(), workers=1, rate=None):
    """Simulate each Eb/N0 point until ``max_errors`` frame errors or ``max_frames`` frames.

    A frame is in error when the decoder output is not the all-zero codeword;
    every fractional LP output counts as an error.
    """
    if decoder not in DECODERS:
        raise ValueError(f"unknown decoder {decoder!r} (use lp, bp or ml)")
    if max_frames < 1 or max_errors < 1:
        raise ValueError("max_frames and max_errors must be >= 1")
    rate = code_dimension(H) / H.n if rate is None else rate
    points = []
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for k, ebn0 in enumerate(ebn0_list):
            sigma = sigma_from_ebn0(ebn0, rate)
            frames = errors = 0
            start = 0
            while start < max_frames and errors < max_errors:
                span = BLOCK * (workers if pool else 1)
                stops = range(start, min(start + span, max_frames), BLOCK)
                jobs = [(H, decoder, sigma, seed, k, s, min(s + BLOCK, max_frames), bp_config) for s in stops]
                results = pool.map(_block_errors, jobs) if pool else map(_block_errors, jobs)
                flags = np.concatenate(list(results))
                cum = np.cumsum(flags)
                hit = np.flatnonzero(cum >= max_errors - errors)
                if hit.size:
                    used = int(hit[0]) + 1
                    frames += used
                    errors = max_errors
                    break
                frames += flags.size
                errors += int(cum[-1]) if cum.size else 0
                start += flags.size
            lo, hi = wilson_interval(errors, frames)
            points.append(FerPoint(float(ebn0), frames, errors, errors / frames, lo, hi))
    finally:
        if pool:
            pool.shutdown()
    return points


def fer_to_csv(points):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["ebn0_db", "frames", "errors", "fer", "ci_lo", "ci_hi"])
    for p in points:
        w.writerow([repr(p.ebn0_db), p.frames, p.frame_errors, repr(p.fer), repr(p.ci_lo), repr(p.ci_hi)])
    return buf.getvalue()


def parse_range(text):
    """'a:b:step' -> inclusive list of values; a bare number gives a single point."""
    parts = [float(v) for v in text.split(":")]
    if len(parts) == 1:
        return parts
    if len(parts) != 3:
        raise ValueError(f"expected 'a:b:step', got {text!r}")
    a, b, step = parts
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(np.floor((b - a) / step + 1e-9)) + 1
    return [round(a + i * step, 12) for i in range(count)]
