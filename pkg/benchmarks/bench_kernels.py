"""Compare the compiled and pure-Python kernels.

Usage: ``python benchmarks/bench_kernels.py [--repeat N]``
"""
import argparse
import timeit

import numpy as np

from girthcs import _pykernels, builtin, generate_regular
from girthcs.lpsolve import LpProblem

try:
    from girthcs import _kernels
except ImportError:
    _kernels = None


def bp_problem(H, x):
    D = H.to_dense(np.float64)
    A = np.hstack([D, -D])
    return LpProblem(np.ones(2 * H.n), A, D @ x)


def run_simplex(kern, problem):
    import girthcs.lpsolve as lp
    saved = lp.kernels
    lp.kernels = kern
    try:
        return lp.simplex(problem)
    finally:
        lp.kernels = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": _pykernels}
    if _kernels is not None:
        backends["cython"] = _kernels
    else:
        print("compiled extension not built; timing the fallback only")

    H, _ = generate_regular(120, 240, 3, 6, seed=1)
    g_args = (*H.csr_arrays(), H.n, H.m)
    G = builtin("gp52")
    rng = np.random.default_rng(0)
    x = np.zeros(G.n)
    x[rng.choice(G.n, 2, replace=False)] = [1.0, -1.5]
    problem = bp_problem(G, x)
    big, _ = generate_regular(40, 80, 3, 6, seed=2)
    xb = np.zeros(big.n)
    xb[rng.choice(big.n, 6, replace=False)] = rng.uniform(0.5, 2, 6)
    big_problem = bp_problem(big, xb)

    cases = [
        ("girth 120x240", lambda k: k.girth_bfs(*g_args)),
        ("basis pursuit 10x15", lambda k: run_simplex(k, problem)),
        ("basis pursuit 40x80", lambda k: run_simplex(k, big_problem)),
    ]
    print(f"{'case':<22}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for label, fn in cases:
        times = {}
        for name, kern in backends.items():
            number = 20
            times[name] = min(timeit.repeat(lambda: fn(kern), number=number,
                                            repeat=args.repeat)) / number
        row = f"{label:<22}" + "".join(f"{times[b] * 1e3:>10.3f}ms" for b in backends)
        if "cython" in times:
            row += f"  {times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
