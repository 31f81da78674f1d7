"""Reference decoders: flooding sum-product BP and brute-force ML."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .codes import MAX_DIMENSION, BinaryMatrix, enumerate_codewords


@dataclass(frozen=True)
class BpConfig:
    max_iterations: int = 50
    early_stop: bool = True
    llr_clip: float = 30.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.llr_clip > 0:
            raise ValueError("llr_clip must be positive")


@dataclass
class BpResult:
    hard_bits: np.ndarray
    converged: bool
    iterations_used: int
    final_llr: np.ndarray


def decode_bp(H: BinaryMatrix, llr, cfg: BpConfig = BpConfig()) -> BpResult:
    """Sum-product decoding in the LLR domain with the tanh check rule.

    Hard decision is bit 0 iff the posterior LLR is >= 0.
    """
    llr = np.asarray(llr, dtype=float)
    if llr.shape != (H.n,):
        raise ValueError(f"llr must have length {H.n}")
    if not np.all(np.isfinite(llr)):
        raise ValueError("llr must be finite")
    mask = H.array.astype(bool)
    clip = cfg.llr_clip
    tclip = np.tanh(clip / 2.0)

    v2c = np.where(mask, np.clip(llr, -clip, clip)[None, :], 0.0)
    posterior = llr.copy()
    bits = (posterior < 0).astype(np.uint8)
    converged = False
    it = 0
    for it in range(1, cfg.max_iterations + 1):
        t = np.where(mask, np.tanh(v2c / 2.0), 1.0)
        # leave-one-out product along each row via prefix/suffix products
        ones = np.ones((H.m, 1))
        prefix = np.cumprod(np.hstack([ones, t[:, :-1]]), axis=1)
        suffix = np.cumprod(np.hstack([ones, t[:, :0:-1]]), axis=1)[:, ::-1]
        prod = np.clip(prefix * suffix, -tclip, tclip)
        c2v = np.where(mask, 2.0 * np.arctanh(prod), 0.0)
        posterior = llr + c2v.sum(axis=0)
        v2c = np.where(mask, np.clip(posterior[None, :] - c2v, -clip, clip), 0.0)
        bits = (posterior < 0).astype(np.uint8)
        converged = H.is_codeword(bits)
        if converged and cfg.early_stop:
            break
    return BpResult(bits, bool(converged), it, posterior)


@lru_cache(maxsize=16)
def _codebook(H):
    words = enumerate_codewords(H, MAX_DIMENSION)
    return words, 2.0 * words.astype(float) - 1.0


def decode_ml(H: BinaryMatrix, received) -> np.ndarray:
    """Codeword whose BPSK image is nearest to ``received``.

    Ties go to the lexicographically smallest codeword.
    """
    received = np.asarray(received, dtype=float)
    words, signals = _codebook(H)
    # ||r - s||^2 = ||r||^2 + n - 2 r.s, so maximize the correlation
    corr = signals @ received
    best = corr.max()
    tol = 1e-12 * (1.0 + abs(best))
    idx = int(np.flatnonzero(corr >= best - tol)[0])
    return words[idx].copy()


def decode_ml_batch(H: BinaryMatrix, received):
    """Row-wise :func:`decode_ml` for a (k, n) array of received words."""
    received = np.atleast_2d(np.asarray(received, dtype=float))
    words, signals = _codebook(H)
    corr = received @ signals.T
    best = corr.max(axis=1, keepdims=True)
    tol = 1e-12 * (1.0 + np.abs(best))
    idx = np.argmax(corr >= best - tol, axis=1)
    return words[idx]
