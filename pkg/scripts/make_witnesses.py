"""Regenerate the bundled classical witness colorings.

Each file is a coloring of K_{r-1} avoiding K_{m_i} in color i, where the
m_i are the table tuple in sorted order. Every coloring is checked before it
is written.

    python scripts/make_witnesses.py src/forestramsey/data/witnesses
"""

import json
import random
import sys
import time
from pathlib import Path

from forestramsey.graph import EdgeColoring, build_complete, is_free_coloring


def circulant_coloring(n, red_dists):
    red = {d % n for d in red_dists} | {-d % n for d in red_dists}
    g = build_complete(n)
    return EdgeColoring.from_assignment(g, 2, {(u, v): 0 if (v - u) % n in red else 1 for u, v in g.edges()})


def gf16_coloring():
    # GF(16) = GF(2)[x]/(x^4 + x + 1); x is primitive. Color = discrete log of u + v mod 3.
    log = {}
    a = 1
    for k in range(15):
        log[a] = k
        a <<= 1
        if a & 0x10:
            a ^= 0x13
    g = build_complete(16)
    return EdgeColoring.from_assignment(g, 3, {(u, v): log[u ^ v] % 3 for u, v in g.edges()})


def _count(cand, k, rows):
    """Number of k-cliques inside the vertex set ``cand``."""
    if k == 0:
        return 1
    total = 0
    while cand and cand.bit_count() >= k:
        b = cand & -cand
        cand ^= b
        total += _count(cand & rows[b.bit_length() - 1], k - 1, rows)
    return total


def tabu_graph(n, s, t, seed=0, limit=120.0):
    """Tabu search for a graph on n vertices with no K_s and no independent t-set.

    Cost is 3 * (#K_s) + (#independent t-sets); each step flips the best
    non-tabu pair.
    """
    rng = random.Random(seed)
    full = (1 << n) - 1
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.25:
                adj[u] |= 1 << v
                adj[v] |= 1 << u

    def non():
        return [full & ~adj[v] & ~(1 << v) for v in range(n)]

    def delta(u, v):
        nr = non()
        common = _count(adj[u] & adj[v], s - 2, adj)
        if adj[u] >> v & 1:
            return -3 * common + _count(nr[u] & nr[v] & ~(1 << u) & ~(1 << v), t - 2, nr)
        return 3 * common - _count(nr[u] & nr[v], t - 2, nr)

    cost = 3 * _count(full, s, adj) + _count(full, t, non())
    start = time.monotonic()
    step = 0
    tabu = {}
    while cost and time.monotonic() - start < limit:
        step += 1
        best = None
        for u in range(n):
            for v in range(u + 1, n):
                if tabu.get((u, v), 0) > step:
                    continue
                d = delta(u, v)
                if best is None or d < best[0] or (d == best[0] and rng.random() < 0.3):
                    best = (d, u, v)
        d, u, v = best
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
        cost += d
        tabu[(u, v)] = step + rng.randint(5, 15)
    if cost:
        return None
    g = build_complete(n)
    return EdgeColoring.from_assignment(g, 2, {(u, v): 0 if adj[u] >> v & 1 else 1 for u, v in g.edges()})


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    squares17 = sorted({x * x % 17 for x in range(1, 17)})
    made = {
        (3, 3): circulant_coloring(5, [1]),
        (3, 4): circulant_coloring(8, [1, 4]),
        (3, 5): circulant_coloring(13, [1, 5]),
        (4, 4): circulant_coloring(17, squares17),
        (3, 3, 3): gf16_coloring(),
        (3, 6): tabu_graph(17, 3, 6),
    }
    for ms, c in made.items():
        assert is_free_coloring(c, None, ms), ms
        name = "r" + "-".join(map(str, ms)) + ".json"
        (out / name).write_text(json.dumps(c.to_json(), separators=(",", ":")) + "\n")
        print("wrote", name)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/forestramsey/data/witnesses")
