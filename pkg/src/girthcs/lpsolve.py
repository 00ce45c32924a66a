"""Dense two-phase primal simplex with Bland's rule, and the l1 programs
built on it: basis pursuit, the empirical coordinate bound, and brute-force
nullspace-property constants."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from girthcs._backend import kernels
from girthcs.binmat import BinaryMatrix
from girthcs.errors import EnumerationLimit, LpError

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9
RECOVERY_TOL = 1e-6
ENUMERATION_LIMIT = 10**6
MAX_COLUMNS = 500

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass(frozen=True)
class LpProblem:
    """``minimize c @ x  subject to  A @ x == b,  x >= 0``."""

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64).ravel()
        A = np.atleast_2d(np.asarray(self.A, dtype=np.float64))
        b = np.asarray(self.b, dtype=np.float64).ravel()
        if A.shape != (b.size, c.size):
            raise ValueError(f"dimension mismatch: A is {A.shape}, b has {b.size}, "
                             f"c has {c.size}")
        if not (np.isfinite(c).all() and np.isfinite(A).all() and np.isfinite(b).all()):
            raise ValueError("non-finite entry in LP data")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class LpSolution:
    status: str
    x: Optional[np.ndarray]
    objective: float
    alternate_optimum: bool = False
    iterations: int = 0


def simplex(problem: LpProblem, max_iter: int = 50_000) -> LpSolution:
    """Solve a standard-form LP by the two-phase tableau method.

    Phase 1 minimises the sum of one artificial per row; artificials still
    basic at level zero are pivoted out, or their rows dropped as redundant.
    Both phases use Bland's rule (lowest-index entering column, ratio ties to
    the lowest-index basic variable), so the result is deterministic.
    """
    A, b, c = problem.A.copy(), problem.b.copy(), problem.c
    m, n = A.shape
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # columns: n structural | m artificial | rhs;  last row: reduced costs
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :n] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = np.arange(n, n + m, dtype=np.intp)

    iters = 0
    status, it = kernels.simplex_iterate(T, basis, n + m, FEAS_TOL, PIVOT_TOL, max_iter)
    iters += it
    if status == 2:
        raise LpError("iteration limit reached in phase 1")
    if -T[m, -1] > FEAS_TOL * max(1.0, float(np.abs(b).max(initial=0.0))):
        return LpSolution(INFEASIBLE, None, math.nan, iterations=iters)

    keep = np.ones(m + 1, dtype=bool)
    for r in range(m):
        if basis[r] < n:
            continue
        row = T[r, :n]
        cand = np.flatnonzero(np.abs(row) > PIVOT_TOL)
        if cand.size:
            kernels.pivot(T, r, int(cand[0]))
            basis[r] = cand[0]
        else:
            keep[r] = False
    T = np.ascontiguousarray(np.delete(T[keep], np.s_[n:n + m], axis=1))
    basis = np.ascontiguousarray(basis[keep[:m]])
    rows = basis.size

    T[rows, :] = 0.0
    T[rows, :n] = c
    for r in range(rows):
        cb = c[basis[r]]
        if cb != 0.0:
            T[rows] -= cb * T[r]
    status, it = kernels.simplex_iterate(T, basis, n, FEAS_TOL, PIVOT_TOL, max_iter)
    iters += it
    if status == 2:
        raise LpError("iteration limit reached in phase 2")
    if status == 1:
        return LpSolution(UNBOUNDED, None, -math.inf, iterations=iters)

    x = np.zeros(n)
    x[basis] = T[:rows, -1]
    alt = bool(_has_alternate_optimum(T, basis, n, max_iter))
    return LpSolution(OPTIMAL, x, float(c @ x), alt, iters)


def _has_alternate_optimum(T, basis, n, max_iter) -> bool:
    """True iff the optimum is not unique.

    Restricted to the optimal face (nonbasic columns with positive reduced
    cost fixed at zero), any other optimal point makes some zero-reduced-cost
    nonbasic variable positive; maximise their sum with one more simplex run.
    """
    rows = basis.size
    nonbasic = np.ones(n, dtype=bool)
    nonbasic[basis] = False
    zero = nonbasic & (np.abs(T[rows, :n]) <= FEAS_TOL)
    if not zero.any():
        return False
    keep = np.flatnonzero(~nonbasic | zero)
    F = np.ascontiguousarray(T[:, np.append(keep, T.shape[1] - 1)])
    F[rows, :] = 0.0
    F[rows, :-1][zero[keep]] = -1.0
    fbasis = np.searchsorted(keep, basis).astype(np.intp)
    status, _ = kernels.simplex_iterate(F, fbasis, keep.size, FEAS_TOL, PIVOT_TOL, max_iter)
    if status == 2:
        raise LpError("iteration limit reached in alternate-optimum check")
    return status == 1 or F[rows, -1] > FEAS_TOL


# --------------------------------------------------------------------------- basis pursuit

@dataclass(frozen=True)
class RecoveryResult:
    estimate: np.ndarray
    l1_value: float
    residual: float
    alternate_optimum: bool
    success: Optional[bool] = None
    err_l1: Optional[float] = None
    err_l2: Optional[float] = None
    err_linf: Optional[float] = None


def _check_size(H: BinaryMatrix):
    if H.n > MAX_COLUMNS:
        raise ValueError(f"matrix has {H.n} columns; dense simplex limited to {MAX_COLUMNS}")


def basis_pursuit(H: BinaryMatrix, y, x_true=None) -> RecoveryResult:
    """Minimum-l1 solution of ``H x = y`` via the split ``x = u - v``.

    When ``x_true`` is given, the error norms and the success flag
    (``||x_hat - x||_inf <= 1e-6 * max(1, ||x||_inf)``) are filled in.
    """
    _check_size(H)
    y = np.asarray(y, dtype=np.float64).ravel()
    if y.size != H.m:
        raise ValueError(f"measurement length {y.size} != m = {H.m}")
    D = H.to_dense(np.float64)
    sol = simplex(LpProblem(np.ones(2 * H.n), np.hstack([D, -D]), y))
    if sol.status != OPTIMAL:
        raise LpError(f"basis pursuit {sol.status}: inconsistent measurements")
    xh = sol.x[:H.n] - sol.x[H.n:]
    residual = float(np.abs(D @ xh - y).max(initial=0.0))
    if residual > FEAS_TOL * max(1.0, float(np.abs(y).max(initial=0.0))):
        raise LpError(f"basis pursuit residual {residual:.3g} exceeds tolerance")
    fields = {}
    if x_true is not None:
        x = np.asarray(x_true, dtype=np.float64).ravel()
        e = x - xh
        linf = float(np.abs(e).max(initial=0.0))
        fields = dict(success=linf <= RECOVERY_TOL * max(1.0, float(np.abs(x).max(initial=0.0))),
                      err_l1=float(np.abs(e).sum()), err_l2=float(np.linalg.norm(e)),
                      err_linf=linf)
    return RecoveryResult(xh, sol.objective, residual, sol.alternate_optimum, **fields)


# --------------------------------------------------------------------------- nullspace constants

def max_coordinate_fraction(H: BinaryMatrix):
    """``max |w_i| / ||w||_1`` over the nullspace, with a maximising vector.

    One LP per coordinate ``i``: maximise ``w_i`` subject to ``H w = 0`` and
    ``||w||_1 <= 1``.  The sign ``-w_i`` gives the same value because the
    nullspace is symmetric, so only ``+w_i`` is solved.
    """
    _check_size(H)
    D = H.to_dense(np.float64)
    m, n = D.shape
    A = np.zeros((m + 1, 2 * n + 1))
    A[:m, :n] = D
    A[:m, n:2 * n] = -D
    A[m, :] = 1.0
    b = np.zeros(m + 1)
    b[m] = 1.0
    best, arg = 0.0, None
    for i in range(n):
        c = np.zeros(2 * n + 1)
        c[i], c[n + i] = -1.0, 1.0
        sol = simplex(LpProblem(c, A, b))
        if sol.status != OPTIMAL:
            raise LpError(f"coordinate LP {i} returned {sol.status}")
        if -sol.objective > best:
            best = -sol.objective
            arg = sol.x[:n] - sol.x[n:2 * n]
    return best, arg


def empirical_c0(H: BinaryMatrix) -> float:
    """Largest ``C0`` such that ``|w_i| <= ||w||_1 / C0`` on the whole nullspace.

    ``math.inf`` when the nullspace is trivial.
    """
    best, _ = max_coordinate_fraction(H)
    return math.inf if best <= FEAS_TOL else 1.0 / best


def nsp_constant(H: BinaryMatrix, k: int) -> float:
    """Largest ``C`` with ``C * ||w_K||_1 <= ||w_Kbar||_1`` for all ``|K| = k``.

    Enumerates every support ``K`` and sign pattern ``s`` on it, minimising
    ``||w_Kbar||_1`` subject to ``H w = 0``, ``sum s_i w_i = 1`` and
    ``s_i w_i >= 0`` on ``K``.  Patterns ``s`` and ``-s`` are equivalent under
    ``w -> -w``, so the first sign is fixed to ``+``.  ``math.inf`` when every
    subproblem is infeasible.
    """
    _check_size(H)
    n = H.n
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    work = math.comb(n, k) * 2**k
    if work > ENUMERATION_LIMIT:
        raise EnumerationLimit(f"C({n},{k})*2^{k} = {work} exceeds {ENUMERATION_LIMIT}")
    D = H.to_dense(np.float64)
    m = H.m
    rest_cost = np.concatenate([np.zeros(k), np.ones(2 * (n - k))])
    b = np.zeros(m + 1)
    b[m] = 1.0
    best = math.inf
    for K in itertools.combinations(range(n), k):
        Kbar = [j for j in range(n) if j not in K]
        DK, DR = D[:, K], D[:, Kbar]
        for tail in itertools.product((1.0, -1.0), repeat=k - 1):
            s = np.array((1.0,) + tail)
            A = np.zeros((m + 1, k + 2 * (n - k)))
            A[:m, :k] = DK * s
            A[:m, k:k + n - k] = DR
            A[:m, k + n - k:] = -DR
            A[m, :k] = 1.0
            sol = simplex(LpProblem(rest_cost, A, b))
            if sol.status == OPTIMAL:
                best = min(best, sol.objective)
    return best
