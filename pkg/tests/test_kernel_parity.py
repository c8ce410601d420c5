"""The compiled kernel and the pure-Python fallback must agree call for call."""

import os
import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from forestramsey import _pykernel, kernel
from forestramsey.forest import parse_forest
from forestramsey.graph import disjoint_cliques

import brute

try:
    from forestramsey import _speedups
except ImportError:  # pragma: no cover - extension not built
    _speedups = None

needs_ext = pytest.mark.skipif(_speedups is None, reason="compiled kernel not built")

FORESTS = ["K2", "2*K2", "3*K2", "P3+K2", "P4", "S4", "2*P3", "S5+K2", "T(2,2,3)", "K1+P3", "2*K1+K2"]


def random_rows(rng, n, p):
    rows = [0] * n
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return rows


def test_backend_selected():
    assert kernel.BACKEND in ("cython", "python")
    if os.environ.get("FORESTRAMSEY_PURE"):
        assert kernel.BACKEND == "python"
    elif _speedups is not None:
        assert kernel.BACKEND == "cython"


@needs_ext
class TestParity:
    @given(st.integers(0, 2**32 - 1), st.integers(1, 14), st.integers(1, 6))
    def test_clique(self, seed, n, k):
        rng = random.Random(seed)
        rows = random_rows(rng, n, rng.random())
        cand = rng.getrandbits(n)
        assert _speedups.clique_in(rows, cand, k) == _pykernel.clique_in(rows, cand, k)

    @pytest.mark.parametrize("spec", FORESTS)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(0, 11))
    def test_forest(self, spec, seed, n):
        rng = random.Random(seed)
        rows = random_rows(rng, n, rng.random())
        code = parse_forest(spec).code()
        assert _speedups.embeds_forest(rows, n, code) == _pykernel.embeds_forest(rows, n, code)

    def test_large_order_rows(self):
        n = 64
        rows = random_rows(random.Random(1), n, 0.5)
        assert _speedups.clique_in(rows, (1 << n) - 1, 5) == _pykernel.clique_in(rows, (1 << n) - 1, 5)
        code = parse_forest("3*P4").code()
        assert _speedups.embeds_forest(rows, n, code) == _pykernel.embeds_forest(rows, n, code)

    @pytest.mark.parametrize("spec,n,m", [("2*K2", 4, 3), ("3*K2", 6, 3), ("P3+K2", 5, 3), ("2*K2", 5, 3)])
    def test_edge_search_all(self, spec, n, m):
        edges = list(combinations(range(n), 2))
        f = parse_forest(spec)
        targets = [(kernel.FOREST, f.edge_count, f.code()), (kernel.CLIQUE, m, None)]
        empty = [[0] * n, [0] * n]
        a = _speedups.edge_search(n, empty, edges, targets, True, -1, 0.0)
        b = _pykernel.edge_search(n, empty, edges, targets, True, -1, 0.0)
        assert a == b

    def test_edge_search_budget(self):
        n = 8
        edges = list(combinations(range(n), 2))
        targets = [(kernel.CLIQUE, 3, None), (kernel.CLIQUE, 4, None)]
        empty = [[0] * n, [0] * n]
        a = _speedups.edge_search(n, empty, edges, targets, False, 100, 0.0)
        b = _pykernel.edge_search(n, empty, edges, targets, False, 100, 0.0)
        assert a[0] == b[0] == kernel.OVER_BUDGET
        assert a == b

    def test_edge_search_prefilled(self):
        n = 5
        edges = [(u, v) for u, v in combinations(range(n), 2) if u > 0]
        pre = [[0] * n, [0] * n]
        for v in range(1, n):
            pre[0][0] |= 1 << v
            pre[0][v] |= 1
        targets = [(kernel.CLIQUE, 3, None), (kernel.CLIQUE, 3, None)]
        a = _speedups.edge_search(n, pre, edges, targets, True, -1, 0.0)
        b = _pykernel.edge_search(n, pre, edges, targets, True, -1, 0.0)
        assert a == b


# hosts where the packing prune decides the answer
PACKINGS = [
    ("3*P4", [7, 7, 3, 3], False),
    ("3*P4", [8, 4], True),
    ("2*P3+K2", [5, 2], False),
    ("2*P3+K2", [3, 3, 2], True),
    ("P4+2*K2", [4, 3], False),
    ("S4+P3", [3, 3, 3], False),
]


@pytest.mark.parametrize("spec,sizes,want", PACKINGS)
def test_packing_prune(spec, sizes, want):
    f = parse_forest(spec)
    g = disjoint_cliques(sizes)
    code = f.code()
    assert _pykernel.embeds_forest(g.rows, g.order, code) is want
    if _speedups is not None:
        assert _speedups.embeds_forest(g.rows, g.order, code) is want
    if g.order <= 10:
        assert brute.has_forest(g, f) is want


@needs_ext
def test_benchmark_quick_run(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernel.py"
    spec = importlib.util.spec_from_file_location("bench_kernel", path)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    assert bench.main(["--quick", "--repeat", "1"]) == 0
    assert "speedup" in capsys.readouterr().out
