"""Pure-Python search kernels.

Reference implementation of the routines in ``_speedups.pyx``. Both modules
expose the same three functions with the same argument conventions:

* graphs are lists of int bit rows (bit ``v`` of ``rows[u]`` set iff uv is an edge);
* a forest is passed as the flat *code* tuple built by ``Forest.code()``;
* a coloring search takes one row list per color plus per-color targets.
"""

from __future__ import annotations

import time

FOUND = 1
EXHAUSTED = 0
OVER_BUDGET = 2
OVER_TIME = 3

CLIQUE = 0
FOREST = 1

_TIME_CHECK_MASK = 0xFFFF


def clique_in(rows, cand: int, k: int) -> bool:
    """True iff the vertex set ``cand`` holds ``k`` mutually adjacent vertices."""
    if k <= 0:
        return True
    if k == 1:
        return cand != 0
    while cand:
        if cand.bit_count() < k:
            return False
        b = cand & -cand
        cand ^= b
        v = b.bit_length() - 1
        if clique_in(rows, cand & rows[v], k - 1):
            return True
    return False


def _components(rows, unused):
    """Vertex sets of the connected components of the graph induced on ``unused``."""
    comps = []
    left = unused
    while left:
        comp = frontier = left & -left
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= rows[b.bit_length() - 1]
            frontier = nxt & unused & ~comp
            comp |= frontier
        comps.append(comp)
        left &= ~comp
    return comps


def _root_sizes(parent, total):
    """Orders of the components, listed by root, plus each root's position in that list."""
    roots = [i for i in range(total) if parent[i] < 0]
    sizes = [b - a for a, b in zip(roots, roots[1:] + [total])]
    return sizes, {r: q for q, r in enumerate(roots)}


def embeds_forest(rows, n, code) -> bool:
    """True iff the graph on ``n`` vertices contains the encoded forest.

    Tree vertices arrive in BFS order, components largest first. ``after[i]``
    forces the image of vertex ``i`` above the image of an interchangeable
    earlier vertex (sibling leaves, roots of identical components). Before each
    root is placed, the remaining trees must pack into the components of the
    unused part of the graph: a component with ``c`` free vertices takes at
    most ``c // s`` trees of order ``>= s``.
    """
    parent, after, nchild, total, isolated = code
    if total + isolated > n:
        return False
    if total == 0:
        return True
    img = [0] * total
    sizes, rindex = _root_sizes(parent, total)
    nroots = len(sizes)

    def packs(q, caps):
        for t in range(q, nroots):
            if t + 1 < nroots and sizes[t + 1] == sizes[t]:
                continue
            if sum(c // sizes[t] for c in caps) < t - q + 1:
                return False
        return True

    def place(i: int, unused: int) -> bool:
        if i == total:
            return unused.bit_count() >= isolated
        p = parent[i]
        if p < 0:
            if unused.bit_count() < total - i + isolated:
                return False
            comps = _components(rows, unused)
            q = rindex[i]
            if not packs(q, [c.bit_count() for c in comps]):
                return False
            cand = 0
            for c in comps:
                if c.bit_count() >= sizes[q]:
                    cand |= c
        else:
            cand = rows[img[p]] & unused
        a = after[i]
        if a >= 0:
            cand &= ~((2 << img[a]) - 1)
        need = nchild[i]
        while cand:
            b = cand & -cand
            cand ^= b
            w = b.bit_length() - 1
            rest = unused ^ b
            if need and (rows[w] & rest).bit_count() < need:
                continue
            img[i] = w
            if place(i + 1, rest):
                return True
        return False

    return place(0, (1 << n) - 1)


def _violates(rows, n, target, u, v, edge_count) -> bool:
    kind, m, code = target
    if kind == CLIQUE:
        if m <= 2:
            return True
        return clique_in(rows, rows[u] & rows[v], m - 2)
    if edge_count < m:
        return False
    return embeds_forest(rows, n, code)


def edge_search(n, rows0, edges, targets, collect_all=False, node_budget=-1, deadline=0.0):
    """Depth-first search over edge colorings.

    ``rows0[c]`` holds the already-fixed color-``c`` edges; ``edges`` are
    colored in order, colors tried ascending. For a forest target ``m`` is its
    edge count (a cheap lower bound before embedding). Returns
    ``(status, solutions, nodes, prunes)`` where each solution is a tuple of colors
    aligned with ``edges``.
    """
    rows = [list(r) for r in rows0]
    ncol = len(targets)
    counts = [sum(r.bit_count() for r in rows[c]) // 2 for c in range(ncol)]
    nedges = len(edges)
    col = [-1] * nedges
    sols = []
    nodes = 0
    prunes = 0
    pos = 0
    if nedges == 0:
        return FOUND, [()], 0, 0
    while pos >= 0:
        if pos == nedges:
            sols.append(tuple(col))
            if not collect_all:
                return FOUND, sols, nodes, prunes
            pos -= 1
            continue
        u, v = edges[pos]
        c = col[pos]
        if c >= 0:
            rows[c][u] ^= 1 << v
            rows[c][v] ^= 1 << u
            counts[c] -= 1
        c += 1
        placed = False
        while c < ncol:
            nodes += 1
            if node_budget >= 0 and nodes > node_budget:
                return OVER_BUDGET, sols, nodes, prunes
            if deadline and not nodes & _TIME_CHECK_MASK and time.monotonic() > deadline:
                return OVER_TIME, sols, nodes, prunes
            r = rows[c]
            r[u] |= 1 << v
            r[v] |= 1 << u
            counts[c] += 1
            if not _violates(r, n, targets[c], u, v, counts[c]):
                placed = True
                break
            prunes += 1
            r[u] ^= 1 << v
            r[v] ^= 1 << u
            counts[c] -= 1
            c += 1
        if placed:
            col[pos] = c
            pos += 1
        else:
            col[pos] = -1
            pos -= 1
    return (FOUND if sols else EXHAUSTED), sols, nodes, prunes
