import itertools

import numpy as np
import pytest

from lpdecode.channel import llr_from_received, modulate
from lpdecode.codes import builtin_matrix, enumerate_codewords
from lpdecode.cone import in_fundamental_cone
from lpdecode.lpdecoder import LpDecoder, Verdict, decode_lp, find_violated_cut, odd_set_cuts

from conftest import P0


def brute_max_violation(vals):
    """Enumerate every odd subset of a check and return (best violation, subset)."""
    best, arg = -np.inf, None
    idx = range(len(vals))
    for size in range(1, len(vals) + 1, 2):
        for S in itertools.combinations(idx, size):
            lhs = sum(vals[i] for i in S) - sum(vals[i] for i in idx if i not in S)
            if lhs - (size - 1) > best:
                best, arg = lhs - (size - 1), S
    return best, arg


class TestSeparation:
    def test_all_ones_weight_three(self):
        cut = find_violated_cut([0, 1, 2], np.array([1.0, 1.0, 1.0]))
        assert cut.subset == (0, 1, 2)
        assert cut.violation == pytest.approx(1.0)

    def test_no_cut_at_point_six(self):
        assert find_violated_cut([0, 1, 2], np.array([0.6, 0.6, 0.6])) is None
        assert brute_max_violation([0.6, 0.6, 0.6])[0] == pytest.approx(-0.2)

    def test_single_element_subset(self):
        cut = find_violated_cut([0, 1, 2], np.array([0.9, 0.3, 0.2]))
        assert cut.subset == (0,)
        assert cut.violation == pytest.approx(0.4)

    def test_full_vector_indexing(self):
        x = np.zeros(8)
        x[[2, 5, 7]] = [0.9, 0.3, 0.2]
        cut = find_violated_cut([2, 5, 7], x, check=3)
        assert cut.subset == (2,) and cut.check == 3

    @pytest.mark.parametrize("seed", range(300))
    def test_matches_subset_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        w = int(rng.integers(2, 8))
        vals = rng.random(w)
        if seed % 3 == 0:
            vals = np.round(vals)  # integral points exercise the even-parity toggle
        best, _ = brute_max_violation(vals)
        cut = find_violated_cut(np.arange(w), vals)
        if best > 1e-8:
            assert cut is not None
            assert cut.violation == pytest.approx(best, abs=1e-12)
            assert len(cut.subset) % 2 == 1
        else:
            assert cut is None

    @pytest.mark.parametrize("name", ["H1", "H2", "H3", "HG"])
    def test_codewords_never_cut(self, name):
        H = builtin_matrix(name)
        for c in enumerate_codewords(H)[:512]:
            for j in range(H.m):
                assert find_violated_cut(H.row_support(j), c.astype(float)) is None

    def test_odd_set_count(self):
        assert len(list(odd_set_cuts(range(6)))) == 2 ** 5


class TestDecode:
    def test_positive_llr_gives_zero(self, H1):
        res = decode_lp(H1, np.full(8, 0.5))
        assert res.integral and res.verdict is Verdict.ML_CODEWORD
        assert not np.any(res.x)

    def test_fractional_along_p0(self, H1):
        u = P0 / np.linalg.norm(P0)
        res = decode_lp(H1, llr_from_received(modulate(np.zeros(8)) + 1.80 * u, 1.0))
        assert not res.integral and res.verdict is Verdict.FRACTIONAL
        assert np.allclose(res.x, P0, atol=1e-6)

    @pytest.mark.parametrize("name", ["H1", "H2", "H3"])
    @pytest.mark.parametrize("sigma", [0.3, 1.0, 3.0])
    def test_noiseless_codewords(self, name, sigma):
        H = builtin_matrix(name)
        for c in enumerate_codewords(H):
            res = decode_lp(H, llr_from_received(modulate(c), sigma))
            assert res.integral
            assert np.array_equal(res.hard_bits, c)

    @pytest.mark.parametrize("name", ["HG", "HGp"])
    def test_noiseless_golay_codewords(self, name):
        H = builtin_matrix(name)
        words = enumerate_codewords(H)
        for c in words[:: len(words) // 40]:
            res = decode_lp(H, llr_from_received(modulate(c), 1.0))
            assert np.array_equal(res.hard_bits, c)

    @pytest.mark.parametrize("name", ["H1", "H3", "HGp"])
    def test_lazy_and_preadded_agree(self, name):
        H = builtin_matrix(name)
        lazy = LpDecoder(H, preadd_max_weight=0)
        rng = np.random.default_rng(3)
        for _ in range(60):
            llr = rng.standard_normal(H.n) + 0.5
            a, b = decode_lp(H, llr), lazy.decode(llr)
            assert a.objective_value == pytest.approx(b.objective_value, abs=1e-9)
        assert lazy.decode(-np.ones(H.n) + 1.2).cuts_added >= 0

    @pytest.mark.parametrize("name", ["H1", "H2", "H3"])
    def test_relaxation_and_certificate(self, name):
        H = builtin_matrix(name)
        words = enumerate_codewords(H).astype(float)
        rng = np.random.default_rng(11)
        for _ in range(300):
            llr = rng.standard_normal(8) * 2 + 1
            res = decode_lp(H, llr)
            ml_cost = float((words @ llr).min())
            assert res.objective_value <= ml_cost + 1e-9
            if res.integral:
                assert res.objective_value == pytest.approx(ml_cost, abs=1e-9)
                assert H.is_codeword(res.hard_bits)
            elif res.verdict is Verdict.FRACTIONAL:
                assert in_fundamental_cone(H, res.x, tol=1e-7)

    def test_deterministic(self, H2):
        llr = np.random.default_rng(9).standard_normal(8)
        assert np.array_equal(decode_lp(H2, llr).x, decode_lp(H2, llr).x)

    def test_rejects_bad_length(self, H1):
        with pytest.raises(ValueError):
            decode_lp(H1, np.ones(7))
