import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import basic_solutions, c0_by_circuits, lp_optimum_by_enumeration, nsp_by_circuits
from girthcs import (BUILTIN_CERTIFICATES, BinaryMatrix, LpProblem, basis_pursuit, builtin,
                     empirical_c0, guarantee, nsp_constant, profile, simplex)
from girthcs.errors import EnumerationLimit, LpError
from girthcs.lpsolve import max_coordinate_fraction


class TestSimplex:
    def test_trivial_optimal(self):
        s = simplex(LpProblem([1.0], [[1.0]], [1.0]))
        assert s.status == "optimal" and s.objective == 1.0

    def test_unbounded(self):
        assert simplex(LpProblem([-1.0], [[0.0]], [0.0])).status == "unbounded"

    def test_infeasible(self):
        assert simplex(LpProblem([0.0], [[1.0]], [-1.0])).status == "infeasible"

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            LpProblem([1.0, 2.0], [[1.0]], [1.0])

    def test_non_finite(self):
        with pytest.raises(ValueError, match="non-finite"):
            LpProblem([np.nan], [[1.0]], [1.0])

    def test_redundant_rows(self):
        s = simplex(LpProblem([1.0, 2.0], [[1.0, 1.0], [2.0, 2.0]], [1.0, 2.0]))
        assert s.status == "optimal"
        np.testing.assert_allclose(s.x, [1.0, 0.0])

    def test_alternate_flag(self):
        assert simplex(LpProblem([0.0, 0.0], [[1.0, 1.0]], [1.0])).alternate_optimum
        assert not simplex(LpProblem([1.0, 0.0], [[1.0, 1.0]], [1.0])).alternate_optimum

    def test_degenerate_cycling_example(self):
        # Beale's example (in equality form), which cycles under the textbook rule
        c = [-0.75, 150, -0.02, 6, 0, 0, 0]
        A = [[0.25, -60, -0.04, 9, 1, 0, 0],
             [0.5, -90, -0.02, 3, 0, 1, 0],
             [0, 0, 1, 0, 0, 0, 1]]
        s = simplex(LpProblem(c, A, [0, 0, 1]))
        assert s.status == "optimal"
        assert math.isclose(s.objective, -0.05, abs_tol=1e-12)

    def test_deterministic(self):
        H = builtin("gp52")
        D = H.to_dense(float)
        p = LpProblem(np.ones(30), np.hstack([D, -D]), D[:, 3] - D[:, 7])
        a, b = simplex(p), simplex(p)
        assert a.x.tobytes() == b.x.tobytes()

    @settings(max_examples=120, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_matches_vertex_enumeration(self, m, extra, seed):
        n = min(12, m + extra)
        rng = np.random.default_rng(seed)
        A = rng.integers(-3, 4, size=(m, n)).astype(float)
        x0 = rng.integers(0, 3, size=n).astype(float)
        b = A @ x0 if rng.random() < 0.8 else rng.integers(-3, 4, size=m).astype(float)
        c = rng.integers(0, 5, size=n).astype(float)  # c >= 0 keeps the LP bounded
        sol = simplex(LpProblem(c, A, b))
        best = lp_optimum_by_enumeration(c, A, b)
        if best is None:
            assert sol.status == "infeasible"
        else:
            assert sol.status == "optimal"
            assert abs(sol.objective - best) <= 1e-9
            assert np.abs(A @ sol.x - b).max() <= 1e-9


class TestBasisPursuit:
    def test_zero(self, euclid):
        r = basis_pursuit(euclid, np.zeros(4))
        assert not r.estimate.any() and r.l1_value == 0.0

    def test_one_sparse_exact(self, euclid):
        x = np.eye(6)[0]
        r = basis_pursuit(euclid, euclid.to_dense() @ x, x)
        assert r.success and np.array_equal(r.estimate, x)

    def test_one_sparse_unique_by_enumeration(self, euclid):
        D = euclid.to_dense(float)
        A = np.hstack([D, -D])
        y = D[:, 0]
        verts = basic_solutions(np.ones(12), A, y)
        best = min(v.sum() for v in verts)
        assert math.isclose(best, 1.0)
        for v in verts:
            if v.sum() <= best + 1e-9:
                np.testing.assert_allclose(v[:6] - v[6:], np.eye(6)[0], atol=1e-12)

    def test_two_sparse_boundary(self, euclid):
        x = np.array([1, 0, -1, 0, 0, 0], float)
        w = np.array(BUILTIN_CERTIFICATES["euclid_plane"], float)
        x_alt = x - w
        np.testing.assert_array_equal(x_alt, [0, 0, 0, 0, 1, -1])
        assert not (euclid.to_dense() @ w).any()
        assert np.abs(x).sum() == np.abs(x_alt).sum() == 2
        r = basis_pursuit(euclid, euclid.to_dense() @ x, x)
        assert r.l1_value == pytest.approx(2.0, abs=1e-12)
        assert r.alternate_optimum

    def test_inconsistent(self):
        H = BinaryMatrix.from_dense([[1, 0], [1, 0]])
        with pytest.raises(LpError, match="infeasible"):
            basis_pursuit(H, [1.0, 2.0])

    def test_length(self, euclid):
        with pytest.raises(ValueError):
            basis_pursuit(euclid, [1.0, 2.0])

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from(["euclid_plane", "cube", "gp52", "girth12", "eg32_pointplane"]),
           st.integers(0, 2**32 - 1))
    def test_feasibility_and_unique_recovery(self, name, seed):
        H = builtin(name)
        k = guarantee(profile(H)).k_max
        rng = np.random.default_rng(seed)
        x = np.zeros(H.n)
        x[rng.choice(H.n, k, replace=False)] = rng.uniform(-5, 5, k)
        y = H.to_dense() @ x
        r = basis_pursuit(H, y, x)
        assert np.abs(H.to_dense() @ r.estimate - y).max() <= 1e-9 * max(1, np.abs(y).max())
        assert r.success and not r.alternate_optimum

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0.01, 100))
    def test_scale_equivariance(self, seed, alpha):
        H = builtin("girth12")
        rng = np.random.default_rng(seed)
        x = np.zeros(H.n)
        x[rng.choice(H.n, 2, replace=False)] = rng.uniform(0.5, 2, 2)
        y = H.to_dense() @ x
        a = basis_pursuit(H, y)
        if a.alternate_optimum:
            return
        b = basis_pursuit(H, alpha * y)
        np.testing.assert_allclose(b.estimate, alpha * a.estimate, rtol=1e-9, atol=1e-9)

    def test_size_guard(self):
        H = BinaryMatrix(1, 501, tuple((0,) for _ in range(501)))
        with pytest.raises(ValueError, match="limited"):
            basis_pursuit(H, [1.0])


class TestEmpiricalC0:
    @pytest.mark.parametrize("name, expected", [("eg32_pointplane", 4.0), ("gp52", 6.0)])
    def test_builtin(self, name, expected):
        assert abs(empirical_c0(builtin(name)) - expected) <= 1e-7

    def test_two_columns(self):
        assert empirical_c0(BinaryMatrix.from_dense([[1, 1]])) == pytest.approx(2.0, abs=1e-12)

    def test_trivial_nullspace(self):
        assert empirical_c0(BinaryMatrix.from_dense(np.eye(3, dtype=int))) == math.inf

    def test_against_circuit_oracle(self, builtin_name):
        H = builtin(builtin_name)
        assert abs(empirical_c0(H) - float(c0_by_circuits(H.to_dense()))) <= 1e-7

    def test_maximiser_in_nullspace(self, builtin_name):
        H = builtin(builtin_name)
        frac, w = max_coordinate_fraction(H)
        assert np.abs(H.to_dense() @ w).max() <= 1e-9
        assert np.abs(w).max() / np.abs(w).sum() == pytest.approx(frac, abs=1e-9)

    @pytest.mark.parametrize("seed", range(6))
    def test_at_least_theory_on_generated(self, seed):
        from girthcs import generate_regular
        H, g = generate_regular(6, 9, 2 + seed % 2, None, seed)
        try:
            c0 = guarantee(profile(H)).c0
        except Exception:
            pytest.skip("no guarantee for this instance")
        assert empirical_c0(H) >= float(c0) - 1e-7


class TestNspConstant:
    def test_euclid_k1(self, euclid):
        assert abs(nsp_constant(euclid, 1) - 3.0) <= 1e-7

    def test_euclid_k2(self, euclid):
        assert abs(nsp_constant(euclid, 2) - 1.0) <= 1e-7

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_against_circuit_oracle(self, euclid, k):
        expected = float(nsp_by_circuits(euclid.to_dense(), k))
        assert abs(nsp_constant(euclid, k) - expected) <= 1e-7

    @pytest.mark.parametrize("name", ["cube", "girth12"])
    def test_theorem_consistency(self, name):
        H = builtin(name)
        c0 = guarantee(profile(H)).c0
        for k in range(1, 3):
            if k < c0 / 2:
                assert nsp_constant(H, k) >= float(c0 / k - 1) - 1e-7

    def test_full_column_rank(self):
        assert nsp_constant(BinaryMatrix.from_dense(np.eye(3, dtype=int)), 1) == math.inf

    def test_guard(self):
        H = BinaryMatrix(1, 40, tuple((0,) for _ in range(40)))
        with pytest.raises(EnumerationLimit):
            nsp_constant(H, 10)

    def test_k_range(self, euclid):
        with pytest.raises(ValueError):
            nsp_constant(euclid, 0)
