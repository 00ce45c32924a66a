import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import girth_by_cycle_enumeration
from girthcs import (INFINITE, BinaryMatrix, builtin, generate_regular, girth, local_tree,
                     max_inner_product, profile)
from girthcs.rng import TrialRNG

EXPECTED_PROFILES = {
    "eg32_pointplane": (4, 4, 2),
    "euclid_plane": (2, 6, 1),
    "cube": (2, 8, 1),
    "gp52": (2, 10, 1),
    "girth12": (2, 12, 1),
}


def random_matrix(seed, max_cells=64):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 9))
    n = int(rng.integers(1, max(2, max_cells // m) + 1))
    n = min(n, max_cells // m)
    density = rng.uniform(0.1, 0.7)
    return BinaryMatrix.from_dense((rng.random((m, n)) < density).astype(int))


class TestGirth:
    @pytest.mark.parametrize("name, expected", [("eg32_pointplane", 4), ("gp52", 10),
                                                ("cube", 8), ("girth12", 12)])
    def test_builtin(self, name, expected):
        assert girth(builtin(name)) == expected

    def test_single_column_forest(self):
        assert girth(BinaryMatrix(3, 1, ((0, 1, 2),))) is INFINITE

    def test_infinite_sentinel(self):
        assert INFINITE > 10**9
        assert not INFINITE < 4
        assert INFINITE == INFINITE and INFINITE != 4
        assert str(INFINITE) == "inf"

    def test_two_identical_columns(self):
        assert girth(BinaryMatrix(3, 2, ((0, 1), (0, 1)))) == 4

    @pytest.mark.parametrize("seed", range(100))
    def test_matches_cycle_enumeration(self, seed):
        H = random_matrix(seed)
        expected = girth_by_cycle_enumeration(H.to_dense())
        g = girth(H)
        assert (g is INFINITE) if expected is None else (g == expected)

    @settings(max_examples=25, deadline=None)
    @given(st.sampled_from(list(EXPECTED_PROFILES)), st.integers(0, 2**32))
    def test_permutation_invariant(self, name, seed):
        H = builtin(name)
        rng = TrialRNG(seed, 1)
        P = H.permuted(rng.permutation(H.m), rng.permutation(H.n))
        assert girth(P) == girth(H)
        assert max_inner_product(P) == max_inner_product(H)

    @pytest.mark.parametrize("seed", range(30))
    def test_girth_lambda_relation(self, seed):
        H = random_matrix(seed + 1000)
        g, lam = girth(H), max_inner_product(H)
        if g is not INFINITE and g >= 6:
            assert lam == 1
        if lam >= 2:
            assert g == 4
        if g == 4:
            assert lam >= 2


class TestMaxInnerProduct:
    def test_eg32(self):
        assert max_inner_product(builtin("eg32_pointplane")) == 2

    def test_euclid(self):
        assert max_inner_product(builtin("euclid_plane")) == 1

    def test_identical_columns(self):
        assert max_inner_product(BinaryMatrix(4, 2, ((0, 1, 3), (0, 1, 3)))) == 3

    def test_single_column(self):
        assert max_inner_product(BinaryMatrix(2, 1, ((0,),))) == 0


class TestProfile:
    def test_builtin_values(self, builtin_name):
        p = profile(builtin(builtin_name))
        assert (p.gamma, p.girth, p.lam) == EXPECTED_PROFILES[builtin_name]

    def test_cube(self):
        p = profile(builtin("cube"))
        assert (p.m, p.n, p.gamma, p.girth, p.lam) == (8, 12, 2, 8, 1)

    def test_trivial(self):
        p = profile(BinaryMatrix(1, 1, ((0,),)))
        assert (p.gamma, p.girth, p.lam) == (1, INFINITE, 0)

    def test_nonuniform(self):
        p = profile(BinaryMatrix.from_dense([[1, 1], [1, 0]]))
        assert p.gamma is None
        assert p.col_weights == (2, 1)

    @pytest.mark.parametrize("seed", range(20))
    def test_invariants(self, seed):
        H, _ = generate_regular(8, 12, 1 + seed % 4, None, seed)
        p = profile(H)
        assert p.gamma == 1 + seed % 4
        assert p.lam <= min(p.gamma, p.m)


def dense_grandchildren(A, j, parent):
    """Hand expansion on the dense matrix: (variable, check) children of j."""
    out = []
    for f in np.flatnonzero(A[:, j]):
        if f == parent:
            continue
        out += [(int(v), int(f)) for v in np.flatnonzero(A[f]) if v != j]
    return out


class TestLocalTree:
    def test_euclid_level0(self):
        # column 0 sits in rows 0 and 1, each of weight 3: 2 checks x 2 grandchildren
        t = local_tree(builtin("euclid_plane"), 0, 0)
        assert t.levels == ((1, 2, 3, 4),)
        assert len(t.levels[0]) == 4
        assert t.disjoint
        assert t.branch_check == 0
        assert t.branch_sets[0] == (2, 3)

    def test_matches_dense_expansion(self):
        H = builtin("gp52")
        A = H.to_dense()
        for i in range(H.n):
            t = local_tree(H, i, 1)
            l0 = dense_grandchildren(A, i, -1)
            l1 = [x for v, f in l0 for x in dense_grandchildren(A, v, f)]
            assert t.levels[0] == tuple(sorted(v for v, _ in l0))
            assert t.levels[1] == tuple(sorted(v for v, _ in l1))

    @pytest.mark.parametrize("name", ["euclid_plane", "cube", "gp52", "girth12"])
    def test_disjoint_when_girth_allows(self, name):
        H = builtin(name)
        g = girth(H)
        for depth in range(3):
            for i in range(H.n):
                t = local_tree(H, i, depth)
                if 4 * depth + 6 <= g:
                    assert t.disjoint
                if 4 * depth + 8 <= g:
                    assert t.branch_disjoint

    def test_overlap_beyond_girth(self):
        t = local_tree(builtin("euclid_plane"), 0, 1)
        assert not t.disjoint
        assert len(t.levels) == 2

    @pytest.mark.parametrize("name", ["euclid_plane", "cube", "gp52", "girth12",
                                      "eg32_pointplane"])
    def test_level_sum_identity(self, name):
        # gamma (gamma-1)^u w_i = (-1)^(u+1) * sum over L_u (as a multiset)
        from girthcs import BUILTIN_CERTIFICATES
        H = builtin(name)
        w = BUILTIN_CERTIFICATES[name]
        gamma = H.col_weights[0]
        for i in range(H.n):
            t = local_tree(H, i, 2)
            for u, level in enumerate(t.levels):
                assert gamma * (gamma - 1) ** u * w[i] == (-1) ** (u + 1) * sum(w[j] for j in level)
            # branch through one check: (gamma-1)^u w_i = (-1)^(u+1) sum N_u
            for u, level in enumerate(t.branch_sets):
                assert (gamma - 1) ** u * w[i] == (-1) ** (u + 1) * sum(w[j] for j in level)

    def test_requires_regular(self):
        with pytest.raises(ValueError, match="uniform"):
            local_tree(BinaryMatrix.from_dense([[1, 1], [1, 0]]), 0, 0)

    def test_requires_gamma2(self):
        with pytest.raises(ValueError):
            local_tree(BinaryMatrix(2, 2, ((0,), (1,))), 0, 0)

    def test_index_range(self, euclid):
        with pytest.raises(IndexError):
            local_tree(euclid, 6, 0)
