"""Pure-Python/numpy fallback for the compiled kernels in ``_kernels.pyx``.

Every routine mirrors its compiled twin operation for operation, so the two
backends agree bit for bit on the same input.
"""
from collections import deque

import numpy as np


def girth_bfs(var_ptr, var_idx, chk_ptr, chk_idx, n, m):
    """Return the Tanner-graph girth, or 0 when the graph is a forest."""
    adj = [list(var_idx[var_ptr[j]:var_ptr[j + 1]] + n) for j in range(n)]
    adj += [list(chk_idx[chk_ptr[i]:chk_ptr[i + 1]]) for i in range(m)]
    nodes = n + m
    best = 0
    for s in range(n):
        dist = [-1] * nodes
        parent = [-1] * nodes
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            d = dist[u]
            if best and 2 * d + 1 >= best:
                break
            pu = parent[u]
            for w in adj[u]:
                if w == pu:
                    continue
                if dist[w] < 0:
                    dist[w] = d + 1
                    parent[w] = u
                    queue.append(w)
                else:
                    cyc = d + dist[w] + 1
                    if best == 0 or cyc < best:
                        best = cyc
        if best == 4:
            break
    return int(best)


def pivot(T, p, q):
    """Pivot the tableau in place on entry (p, q)."""
    T[p] /= T[p, q]
    col = T[:, q].copy()
    col[p] = 0.0
    rows = np.flatnonzero(col)
    if rows.size:
        T[rows] -= np.outer(col[rows], T[p])


def simplex_iterate(T, basis, n_enter, tol, piv_tol, max_iter):
    """Run Bland-rule primal simplex iterations on a tableau in canonical form.

    Same contract as the compiled version: returns ``(status, iterations)``
    with status 0 optimal, 1 unbounded, 2 iteration limit.
    """
    rows = T.shape[0] - 1
    it = 0
    while True:
        neg = np.flatnonzero(T[rows, :n_enter] < -tol)
        if neg.size == 0:
            return 0, it
        if it >= max_iter:
            return 2, it
        q = int(neg[0])
        p = -1
        best = 0.0
        for r in np.flatnonzero(T[:rows, q] > piv_tol):
            ratio = T[r, -1] / T[r, q]
            if p < 0 or ratio < best - 1e-12:
                p, best = r, ratio
            elif ratio <= best + 1e-12 and basis[r] < basis[p]:
                p, best = r, ratio
        if p < 0:
            return 1, it
        pivot(T, p, q)
        basis[p] = q
        it += 1
