import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from lpdecode.codes import BinaryMatrix, builtin_matrix, enumerate_codewords, min_hamming_distance
from lpdecode.cone import (
    GeneratorSpectrum,
    awgn_pseudoweight,
    cone_inequalities,
    effective_distance_sq,
    enumerate_generators,
    extreme_rays,
    fundamental_polytope_vertices,
    in_fundamental_cone,
    minimal_generators,
    scale_to_sum,
    weight_spectrum,
)
from lpdecode.errors import EmptyList, RayLimitExceeded, ZeroVector

F = Fraction
P0 = (0, F(2, 3), F(2, 3), F(2, 3), 0, 0, 0, 0)


class TestPseudoweight:
    def test_p0(self):
        assert awgn_pseudoweight(P0) == 3

    def test_mixed(self):
        assert awgn_pseudoweight((0, F(2, 3), F(2, 3), F(2, 3), F(1, 3), F(1, 3), F(1, 3), F(1, 3))) == F(25, 4)

    def test_seven_equal(self):
        assert awgn_pseudoweight((0,) + (F(2, 3),) * 7) == 7

    def test_binary_vectors(self):
        for w in range(1, 9):
            assert awgn_pseudoweight([1] * w + [0] * (8 - w)) == w

    def test_float_input(self):
        assert awgn_pseudoweight(np.array([0, 2, 2, 2, 0, 0, 0, 0]) / 3.0) == pytest.approx(3.0, abs=1e-12)

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            awgn_pseudoweight([0, 0, 0])
        with pytest.raises(ZeroVector):
            effective_distance_sq(np.zeros(3))

    def test_effective_distance(self):
        assert effective_distance_sq(P0) == 12
        assert effective_distance_sq([1, 1, 1, 1, 0, 0, 0, 0]) == 16
        assert effective_distance_sq([1, 1, 1]) == 12

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.fractions(min_value=0, max_value=10, max_denominator=50), min_size=1, max_size=10),
           st.fractions(min_value=F(1, 100), max_value=100, max_denominator=100))
    def test_scaling_invariance_exact(self, p, alpha):
        if all(v == 0 for v in p):
            return
        assert awgn_pseudoweight([alpha * v for v in p]) == awgn_pseudoweight(p)


class TestCone:
    def test_membership_examples(self, H1):
        assert in_fundamental_cone(H1, P0)
        assert not in_fundamental_cone(H1, [1, 0, 0, 0, 0, 0, 0, 0])
        assert in_fundamental_cone(H1, [0] * 8)

    def test_codewords_in_cone(self, H3):
        for c in enumerate_codewords(H3):
            assert in_fundamental_cone(H3, [int(v) for v in c])

    def test_inequality_order(self, H3):
        rows = cone_inequalities(H3)
        assert rows[:8] == [tuple(int(i == k) for k in range(8)) for i in range(8)]
        weights = [sum(1 for v in r if v) for r in rows[8:]]
        assert weights == sorted(weights)

    def test_length_mismatch(self, H1):
        with pytest.raises(ValueError):
            in_fundamental_cone(H1, [1, 2])


def lp_is_extreme(A, r):
    """Independent extreme-ray check: the rows of A tight at r have rank dim - 1."""
    A = np.asarray(A, dtype=float)
    r = np.asarray(r, dtype=float)
    tight = A[np.abs(A @ r) < 1e-12]
    return np.linalg.matrix_rank(tight) == len(r) - 1


class TestEnumeration:
    def test_single_check(self, single_check):
        gens = enumerate_generators(single_check)
        assert set(gens) == {(0, 1, 1), (1, 0, 1), (1, 1, 0)}
        assert weight_spectrum(gens).entries == ((2.0, 3),)

    @pytest.mark.parametrize("name, w, count", [("H1", 3.0, 26), ("H2", 3.0, 4), ("H3", 4.0, 14)])
    def test_minimal_generators(self, name, w, count):
        gens = enumerate_generators(builtin_matrix(name))
        best, minimal = minimal_generators(gens)
        assert best == w and len(minimal) == count
        assert weight_spectrum(gens).minimum == (w, count)

    @pytest.mark.parametrize("name", ["H1", "H2", "H3"])
    def test_generators_are_extreme_and_in_cone(self, name):
        H = builtin_matrix(name)
        A = cone_inequalities(H)
        gens = enumerate_generators(H)
        for g in gens:
            assert in_fundamental_cone(H, g)
            assert lp_is_extreme(A, g)
            assert np.gcd.reduce(np.array(g)) == 1

    @pytest.mark.parametrize("seed", range(6))
    def test_random_cone_against_lp_oracle(self, seed):
        """Every extreme ray found is extreme, and no ray is missing: the LP maximum of a
        random objective over {A x >= 0, sum x = 1} is attained at some normalized generator."""
        rng = np.random.default_rng(seed)
        dim = 5
        cons = [tuple(int(v) for v in rng.integers(-2, 3, dim)) for _ in range(4)]
        rays = extreme_rays(cons, dim)
        full = [tuple(int(i == k) for k in range(dim)) for i in range(dim)] + cons
        for r in rays:
            assert lp_is_extreme(full, r)
        if not rays:
            return
        R = np.array(rays, dtype=float)
        R = R / R.sum(axis=1, keepdims=True)
        for _ in range(20):
            c = rng.standard_normal(dim)
            res = linprog(-c, A_ub=-np.array(cons, dtype=float), b_ub=np.zeros(len(cons)),
                          A_eq=np.ones((1, dim)), b_eq=[1.0], bounds=[(0, None)] * dim, method="highs")
            assert res.status == 0
            assert -res.fun == pytest.approx((R @ c).max(), abs=1e-8)

    def test_ray_limit(self, H1):
        with pytest.raises(RayLimitExceeded) as info:
            enumerate_generators(H1, ray_limit=10)
        assert info.value.limit == 10

    def test_minimal_weight_below_dmin(self):
        for name in ("H1", "H2", "H3"):
            H = builtin_matrix(name)
            best, _ = minimal_generators(enumerate_generators(H))
            assert best <= min_hamming_distance(H)


@pytest.fixture(scope="module")
def h2_gens():
    return enumerate_generators(builtin_matrix("H2"))


class TestSpectrum:
    def test_total_conserved(self, h2_gens):
        spec = weight_spectrum(h2_gens)
        assert sum(c for _, c in spec.entries) == len(h2_gens) == spec.total_generators

    @pytest.mark.parametrize("name", ["H1", "H2", "H3"])
    def test_normalization_invariance(self, name):
        gens = enumerate_generators(builtin_matrix(name))
        spectra = [weight_spectrum(gens, normalization=a) for a in (1, 8, 64)]
        assert spectra[0] == spectra[1] == spectra[2] == weight_spectrum(gens)

    def test_edge_constancy(self, h2_gens):
        rng = np.random.default_rng(0)
        for g in h2_gens:
            w = awgn_pseudoweight(g)
            for _ in range(10):
                alpha = F(int(rng.integers(1, 1000)), int(rng.integers(1, 1000)))
                assert awgn_pseudoweight([alpha * v for v in g]) == w

    def test_scale_to_sum(self):
        assert sum(scale_to_sum((1, 2, 3), 12)) == 12
        with pytest.raises(ZeroVector):
            scale_to_sum((0, 0), 1)

    def test_csv_roundtrip(self, h2_gens):
        spec = weight_spectrum(h2_gens)
        text = spec.to_csv()
        assert text.startswith("pseudoweight,count\n")
        assert GeneratorSpectrum.from_csv(text).entries == spec.entries

    def test_empty(self):
        with pytest.raises(EmptyList):
            weight_spectrum([])
        with pytest.raises(EmptyList):
            minimal_generators([])


class TestPolytopeVertices:
    def test_single_check_vertices(self, single_check):
        verts = set(fundamental_polytope_vertices(single_check))
        assert verts == {(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)}

    def test_h1_contains_codewords_and_p0(self, H1):
        verts = set(fundamental_polytope_vertices(H1))
        for c in enumerate_codewords(H1):
            assert tuple(F(int(v)) for v in c) in verts
        assert P0 in verts

    def test_vertices_against_brute_force(self):
        """Small matrix: vertices equal the feasible basic solutions of the explicit inequality list."""
        H = BinaryMatrix.from_rows(["1110", "0111"])
        n = 4
        from lpdecode.lpdecoder import odd_set_cuts
        rows, rhs = [], []
        for i in range(n):
            e = np.zeros(n)
            e[i] = 1
            rows += [e, -e]
            rhs += [1, 0]
        for j in range(H.m):
            for cut in odd_set_cuts(H.row_support(j)):
                rows.append(cut.row(n))
                rhs.append(cut.rhs)
        A, b = np.array(rows), np.array(rhs, dtype=float)
        brute = set()
        for idx in itertools.combinations(range(len(A)), n):
            M = A[list(idx)]
            if abs(np.linalg.det(M)) < 1e-9:
                continue
            x = np.linalg.solve(M, b[list(idx)])
            if np.all(A @ x <= b + 1e-9):
                brute.add(tuple(np.round(x, 9)))
        ours = {tuple(round(float(v), 9) for v in vert) for vert in fundamental_polytope_vertices(H)}
        assert ours == brute
