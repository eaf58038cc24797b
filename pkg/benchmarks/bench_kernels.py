"""Compare the compiled and pure-Python tree kernels.

Run with ``python3 benchmarks/bench_kernels.py [--n N] [--repeat R]``.
Prints the best-of-R wall time per kernel and backend, and the speedup.
"""

import argparse
import timeit

import numpy as np

from mindtree import _backend
from mindtree.mind import mind_descending
from mindtree.tree import make_divide_and_conquer, make_ladder


def _scrambled(tree, rng):
    # renumber nodes so the post-order kernel has real work to do
    perm = rng.permutation(tree.n_nodes)
    rank = np.empty_like(perm)
    rank[perm] = np.arange(tree.n_nodes)
    left = np.where(tree.left[perm] >= 0, rank[tree.left[perm]], -1)
    right = np.where(tree.right[perm] >= 0, rank[tree.right[perm]], -1)
    return left, right, int(rank[tree.root])


def _cases(tree, rng):
    left, right = tree.left, tree.right
    values = rng.standard_normal(tree.n_nodes)
    sl, sr, root = _scrambled(tree, rng)
    return {
        "leaf_counts": lambda: _backend.leaf_counts(left, right),
        "balance": lambda: _backend.balance(left, right),
        "reduce_sum": lambda: _backend.reduce_sum(left, right, values),
        "postorder": lambda: _backend.postorder(sl, sr, root),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=1 << 18, help="leaf count")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = _backend.available()
    if "compiled" not in backends:
        print("compiled extension not built; timing the python backend only")
    rng = np.random.default_rng(0)
    shapes = {
        "ladder": make_ladder(args.n),
        "dac": make_divide_and_conquer(args.n),
        "mind": mind_descending(args.n - 1),
    }
    previous = _backend.name()
    print(f"{'shape':<7} {'kernel':<12}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    try:
        for shape, tree in shapes.items():
            cases = _cases(tree, rng)
            for kernel, fn in cases.items():
                times = {}
                for b in backends:
                    _backend.use(b)
                    times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
                cells = "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
                speed = (
                    f"{times['python'] / times['compiled']:>9.1f}x"
                    if len(times) == 2
                    else f"{'-':>10}"
                )
                print(f"{shape:<7} {kernel:<12}{cells}{speed}")
    finally:
        _backend.use(previous)


if __name__ == "__main__":
    main()
