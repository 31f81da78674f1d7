import math

import numpy as np
import pytest

from lpdecode.channel import (
    ChannelParams,
    ebn0_from_sigma,
    hard_decision,
    llr_from_received,
    modulate,
    sigma_from_ebn0,
)
from lpdecode.codes import enumerate_codewords
from lpdecode.errors import InvalidRate


@pytest.mark.parametrize("ebn0, rate, sigma", [
    (0.0, 0.5, 1.0),
    (0.0, 1.0, math.sqrt(0.5)),
    (3.0103, 0.5, 0.70710678),
])
def test_sigma_from_ebn0(ebn0, rate, sigma):
    assert sigma_from_ebn0(ebn0, rate) == pytest.approx(sigma, rel=1e-5)


@pytest.mark.parametrize("rate", [0.0, -0.5, 1.5])
def test_invalid_rate(rate):
    with pytest.raises(InvalidRate):
        sigma_from_ebn0(1.0, rate)


def test_ebn0_roundtrip():
    for e in np.linspace(-2, 10, 13):
        assert ebn0_from_sigma(sigma_from_ebn0(e, 0.5), 0.5) == pytest.approx(e, abs=1e-12)
    assert ChannelParams.from_ebn0(0.0, 0.5).sigma == pytest.approx(1.0)


def test_modulate_polarity():
    assert np.array_equal(modulate(np.zeros(8)), -np.ones(8))
    assert np.array_equal(modulate([0, 1]), [-1.0, 1.0])
    c = np.array([1, 0, 1, 1])
    assert np.mean(modulate(c) ** 2) == 1.0


def test_llr_formula():
    assert llr_from_received([0.0], 1.0)[0] == 0.0
    assert llr_from_received([-0.5], 1.0)[0] == pytest.approx(1.0)
    r = np.random.default_rng(0).standard_normal(10)
    assert np.allclose(llr_from_received(r, 2.0), llr_from_received(r, 1.0) / 4)


def test_llr_sign_opposes_received():
    r = np.random.default_rng(1).standard_normal(1000)
    assert np.array_equal(np.sign(llr_from_received(r, 0.8)), -np.sign(r))


def test_noiseless_hard_decision(H2):
    for c in enumerate_codewords(H2):
        for sigma in (0.1, 1.0, 5.0):
            assert np.array_equal(hard_decision(llr_from_received(modulate(c), sigma)), c)


def test_zero_llr_is_bit_zero():
    assert hard_decision([0.0, -0.0])[0] == 0
