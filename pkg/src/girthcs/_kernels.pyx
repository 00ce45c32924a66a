# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: Tanner-graph girth BFS and dense-tableau simplex pivoting.

Must stay operation-for-operation identical to ``_pykernels`` so that both
backends produce bit-identical tableaux.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.intp_t intp


def girth_bfs(const intp[::1] var_ptr, const intp[::1] var_idx,
              const intp[::1] chk_ptr, const intp[::1] chk_idx,
              Py_ssize_t n, Py_ssize_t m):
    """Return the Tanner-graph girth, or 0 when the graph is a forest."""
    cdef Py_ssize_t nodes = n + m
    cdef intp[::1] dist = np.empty(nodes, dtype=np.intp)
    cdef intp[::1] parent = np.empty(nodes, dtype=np.intp)
    cdef intp[::1] queue = np.empty(nodes, dtype=np.intp)
    cdef Py_ssize_t best = 0
    cdef Py_ssize_t s, head, tail, u, w, k, lo, hi, cyc, d
    for s in range(n):
        for k in range(nodes):
            dist[k] = -1
        dist[s] = 0
        parent[s] = -1
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            d = dist[u]
            if best and 2 * d + 1 >= best:
                break
            if u < n:
                lo = var_ptr[u]
                hi = var_ptr[u + 1]
            else:
                lo = chk_ptr[u - n]
                hi = chk_ptr[u - n + 1]
            for k in range(lo, hi):
                if u < n:
                    w = var_idx[k] + n
                else:
                    w = chk_idx[k]
                if w == parent[u]:
                    continue
                if dist[w] < 0:
                    dist[w] = d + 1
                    parent[w] = u
                    queue[tail] = w
                    tail += 1
                else:
                    cyc = d + dist[w] + 1
                    if best == 0 or cyc < best:
                        best = cyc
        if best == 4:
            break
    return best


cdef void _pivot(double[:, ::1] T, Py_ssize_t p, Py_ssize_t q) noexcept nogil:
    cdef Py_ssize_t rows = T.shape[0]
    cdef Py_ssize_t cols = T.shape[1]
    cdef Py_ssize_t r, j
    cdef double piv = T[p, q]
    cdef double f
    for j in range(cols):
        T[p, j] = T[p, j] / piv
    for r in range(rows):
        if r == p:
            continue
        f = T[r, q]
        if f == 0.0:
            continue
        for j in range(cols):
            T[r, j] = T[r, j] - f * T[p, j]


def pivot(double[:, ::1] T, Py_ssize_t p, Py_ssize_t q):
    """Pivot the tableau in place on entry (p, q)."""
    _pivot(T, p, q)


cdef int _iterate(double[:, ::1] T, intp[::1] basis, Py_ssize_t n_enter,
                  double tol, double piv_tol, Py_ssize_t max_iter,
                  Py_ssize_t* it) noexcept nogil:
    cdef Py_ssize_t rows = T.shape[0] - 1
    cdef Py_ssize_t rhs = T.shape[1] - 1
    cdef Py_ssize_t j, q, r, p
    cdef double a, ratio, best
    while True:
        q = -1
        for j in range(n_enter):
            if T[rows, j] < -tol:
                q = j
                break
        if q < 0:
            return 0
        if it[0] >= max_iter:
            return 2
        p = -1
        best = 0.0
        for r in range(rows):
            a = T[r, q]
            if a > piv_tol:
                ratio = T[r, rhs] / a
                if p < 0 or ratio < best - 1e-12:
                    p = r
                    best = ratio
                elif ratio <= best + 1e-12 and basis[r] < basis[p]:
                    p = r
                    best = ratio
        if p < 0:
            return 1
        _pivot(T, p, q)
        basis[p] = q
        it[0] += 1


def simplex_iterate(double[:, ::1] T, intp[::1] basis, Py_ssize_t n_enter,
                    double tol, double piv_tol, Py_ssize_t max_iter):
    """Run Bland-rule primal simplex iterations on a tableau in canonical form.

    The last row holds reduced costs, the last column the right-hand side.
    Only columns ``< n_enter`` may enter the basis.  Returns
    ``(status, iterations)`` with status 0 optimal, 1 unbounded, 2 limit.
    """
    cdef Py_ssize_t it = 0
    cdef int status
    with nogil:
        status = _iterate(T, basis, n_enter, tol, piv_tol, max_iter, &it)
    return status, it
