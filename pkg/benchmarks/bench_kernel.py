"""Compare the compiled search kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--repeat N] [--quick]

Each workload runs on both backends with identical inputs; results must agree.
"""

import argparse
import random
import time
from itertools import combinations

from forestramsey import _pykernel
from forestramsey.forest import parse_forest

try:
    from forestramsey import _speedups
except ImportError:
    _speedups = None


def random_rows(rng, n, p):
    rows = [0] * n
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return rows


def clique_workload(quick):
    rng = random.Random(7)
    graphs = [random_rows(rng, 48, 0.5) for _ in range(2 if quick else 10)]

    def run(mod):
        return [mod.clique_in(rows, (1 << 48) - 1, 9) for rows in graphs]

    return "clique K9 in G(48, 1/2)", run


def forest_workload(quick):
    rng = random.Random(11)
    graphs = [random_rows(rng, 16, 0.2) for _ in range(50 if quick else 300)]
    code = parse_forest("3*P4").code()

    def run(mod):
        return [mod.embeds_forest(rows, 16, code) for rows in graphs]

    return "embed 3*P4 in G(16, 1/5)", run


def refutation_workload(spec, n, quick):
    f = parse_forest(spec)
    edges = sorted(combinations(range(n), 2), key=lambda e: (e[1], e[0]))
    targets = [(_pykernel.FOREST, f.edge_count, f.code()), (_pykernel.CLIQUE, 3, None)]

    def run(mod):
        empty = [[0] * n, [0] * n]
        status, sols, nodes, _ = mod.edge_search(n, empty, edges, targets, False, -1, 0.0)
        return status, nodes

    return f"refute K{n} for ({spec}, K3)", run


def timed(fn, mod, repeat):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(mod)
        spent = time.perf_counter() - start
        best = spent if best is None else min(best, spent)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="smaller inputs")
    args = parser.parse_args(argv)
    if _speedups is None:
        print("compiled kernel not built; nothing to compare")
        return 1
    workloads = [
        clique_workload(args.quick),
        forest_workload(args.quick),
        refutation_workload("3*K2", 7, args.quick),
        refutation_workload("2*P3", 8, args.quick),
    ]
    print(f"{'workload':<34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in workloads:
        t_py, r_py = timed(fn, _pykernel, args.repeat)
        t_cy, r_cy = timed(fn, _speedups, args.repeat)
        if r_py != r_cy:
            raise SystemExit(f"backends disagree on {name}: {r_py} vs {r_cy}")
        print(f"{name:<34} {t_py:>10.4f} {t_cy:>10.4f} {t_py / max(t_cy, 1e-9):>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
