"""Compiled kernels against the Python fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Both
backends are imported directly, so the comparison does not depend on
QNL_PURE_PYTHON.
"""

import argparse
import random
import timeit

from qnl import _kernels_py as py

try:
    from qnl import _kernels as native
except ImportError:
    native = None

P = 4294967291


def integer_matrix(rng, n, bound=50):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def low_rank(rng, n, r, bound=9):
    L = [[rng.randint(-bound, bound) for _ in range(r)] for _ in range(n)]
    R = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(r)]
    return [[sum(L[i][k] * R[k][j] for k in range(r)) for j in range(n)] for i in range(n)]


def cases(rng):
    yield "bareiss_rank 24x24", "bareiss_rank", (integer_matrix(rng, 24), 24)
    yield "bareiss_rank 48x48 rank 30", "bareiss_rank", (low_rank(rng, 48, 30), 48)
    yield "bareiss_det 16x16", "bareiss_det", (integer_matrix(rng, 16),)
    yield "bareiss_rref 20x20", "bareiss_rref", (integer_matrix(rng, 20), 20)
    mod = [[x % P for x in row] for row in integer_matrix(rng, 80)]
    yield "rank_mod_p 80x80", "rank_mod_p", (mod, 80, P)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    print(f"{'case':30s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for label, name, call in cases(rng):
        t_py = min(timeit.repeat(lambda: getattr(py, name)(*call), number=1,
                                 repeat=args.repeat)) * 1e3
        if native is None:
            print(f"{label:30s} {t_py:10.2f} {'n/a':>10s} {'':>8s}")
            continue
        assert getattr(native, name)(*call) == getattr(py, name)(*call), label
        t_c = min(timeit.repeat(lambda: getattr(native, name)(*call), number=1,
                                repeat=args.repeat)) * 1e3
        print(f"{label:30s} {t_py:10.2f} {t_c:10.2f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
