"""BPSK over AWGN: modulation, Eb/N0 to sigma conversion, channel LLRs.

Polarity is bit 0 -> -1, bit 1 -> +1, so noise along a positive direction
supported on S pushes the received word toward words with ones on S.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidRate


@dataclass(frozen=True)
class ChannelParams:
    sigma: float
    rate: float
    ebn0_db: float

    @classmethod
    def from_ebn0(cls, ebn0_db, rate):
        return cls(sigma_from_ebn0(ebn0_db, rate), rate, ebn0_db)


def sigma_from_ebn0(ebn0_db, rate):
    """Noise standard deviation for unit-energy BPSK at the given Eb/N0 (dB)."""
    if not 0.0 < rate <= 1.0:
        raise InvalidRate(f"code rate must lie in (0, 1], got {rate}")
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def ebn0_from_sigma(sigma, rate):
    if not 0.0 < rate <= 1.0:
        raise InvalidRate(f"code rate must lie in (0, 1], got {rate}")
    return 10.0 * math.log10(1.0 / (2.0 * rate * sigma * sigma))


def modulate(bits):
    bits = np.asarray(bits)
    return 2.0 * bits.astype(float) - 1.0


def llr_from_received(received, sigma):
    """log P(r|0)/P(r|1); positive values favour bit 0."""
    return -2.0 * np.asarray(received, dtype=float) / (sigma * sigma)


def hard_decision(llr):
    return (np.asarray(llr) < 0).astype(np.uint8)
