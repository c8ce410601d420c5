"""Exhaustive arrowing oracle.

Decides ``G -> (F, K_m1, ..., K_mt)`` by searching for a free coloring.
Two search modes share the compiled kernel:

* **edge DFS** colors host edges in a fixed order, pruning as soon as the
  newest edge completes a forbidden clique or the forest color contains the
  forest. The tree is split after a fixed number of edges so it can be spread
  over worker processes without changing the outcome.
* **vertex extension** (``symmetry=True``) adds host vertices one at a time
  and keeps one prefix coloring per isomorphism class. Prefix vertices are
  marked with their adjacency to the vertices still to come, so two prefixes
  are merged only when every completion of one maps to a completion of the
  other. This is sound on any host and is what makes refutations on ten or
  more vertices tractable.

Running out of node or time budget is never reported as a verdict: ``arrows``
returns ``arrows=None`` and ``find_free_coloring`` raises
``SearchIndeterminate``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import kernel
from .canon import canonical_labeling
from .errors import CapacityError, InvalidInput, SearchIndeterminate
from .forest import Forest
from .graph import EdgeColoring, Graph, build_complete, build_pendant_star, is_free_coloring

SPLIT_DEPTH = 6
SYMMETRY_MIN_ORDER = 8


@dataclass(frozen=True)
class ArrowQuery:
    """Host graph plus targets: ``forest`` for color 0 (optional), cliques for the rest."""

    graph: Graph
    forest: Forest | None = None
    cliques: tuple[int, ...] = ()
    node_budget: int | None = None
    time_budget: float | None = None
    symmetry: bool | None = None
    workers: int = 1
    edge_order: str = "colex"

    def __post_init__(self):
        object.__setattr__(self, "cliques", tuple(self.cliques))
        if self.palette < 1:
            raise InvalidInput("at least one target is required")
        if any(m < 1 for m in self.cliques):
            raise InvalidInput("clique orders must be positive")
        if self.edge_order not in ("colex", "lex"):
            raise InvalidInput(f"unknown edge order {self.edge_order!r}")

    @property
    def palette(self) -> int:
        return (0 if self.forest is None else 1) + len(self.cliques)

    @property
    def uses_symmetry(self) -> bool:
        if self.symmetry is None:
            return self.graph.order >= SYMMETRY_MIN_ORDER
        return self.symmetry


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    elapsed: float = 0.0
    classes: int = 0
    mode: str = "dfs"


@dataclass
class ArrowVerdict:
    """``arrows`` is True/False, or None when the budget ran out."""

    arrows: bool | None
    certificate: EdgeColoring | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def indeterminate(self) -> bool:
        return self.arrows is None


@dataclass
class MinimumResult:
    value: int
    certificate: EdgeColoring | None
    stats: SearchStats = field(default_factory=SearchStats)


class _Budget:
    def __init__(self, query, stats):
        self.limit = -1 if query.node_budget is None else query.node_budget
        self.deadline = 0.0 if query.time_budget is None else time.monotonic() + query.time_budget
        self.stats = stats

    def remaining(self):
        if self.limit < 0:
            return -1
        return max(self.limit - self.stats.nodes, 0)

    def charge(self, status, nodes, prunes):
        self.stats.nodes += nodes
        self.stats.prunes += prunes
        if status == kernel.OVER_BUDGET or (self.limit >= 0 and self.stats.nodes > self.limit):
            raise SearchIndeterminate("node budget exhausted", self.stats)
        if status == kernel.OVER_TIME or (self.deadline and time.monotonic() > self.deadline):
            raise SearchIndeterminate("time budget exhausted", self.stats)


def _targets(query):
    out = []
    if query.forest is not None:
        out.append((kernel.FOREST, query.forest.edge_count, query.forest.code()))
    for m in query.cliques:
        out.append((kernel.CLIQUE, m, None))
    return out


def _trivially_blocked(query) -> bool:
    """True when some color class contains its target even with no edges."""
    n = query.graph.order
    empty = [0] * n
    if query.forest is not None and kernel.embeds_forest(empty, n, query.forest.code()):
        return True
    return any(m == 1 and n >= 1 for m in query.cliques)


def _edge_order(query):
    edges = query.graph.edges()
    if query.edge_order == "colex":
        edges.sort(key=lambda e: (e[1], e[0]))
    return edges


def _to_coloring(query, edges, colors):
    return EdgeColoring.from_assignment(query.graph, query.palette, dict(zip(edges, colors)))


def _apply(rows, edges, colors):
    rows = [list(r) for r in rows]
    for (u, v), c in zip(edges, colors):
        rows[c][u] |= 1 << v
        rows[c][v] |= 1 << u
    return rows


def _solve_prefix(args):
    n, rows, edges, targets, collect_all, budget, deadline = args
    return kernel.edge_search(n, rows, edges, targets, collect_all, budget, deadline)


def _dfs(query, budget, collect_all):
    """Edge DFS, split after SPLIT_DEPTH edges. Yields solutions as color tuples."""
    n = query.graph.order
    edges = _edge_order(query)
    targets = _targets(query)
    empty = [[0] * n for _ in targets]
    head, tail = edges[:SPLIT_DEPTH], edges[SPLIT_DEPTH:]
    status, prefixes, nodes, prunes = kernel.edge_search(
        n, empty, head, targets, True, budget.remaining(), budget.deadline
    )
    budget.charge(status, nodes, prunes)
    tasks = [
        (n, _apply(empty, head, p), tail, targets, collect_all, budget.remaining(), budget.deadline)
        for p in prefixes
    ]
    found = []
    if query.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=query.workers) as pool:
            for prefix, result in zip(prefixes, pool.map(_solve_prefix, tasks)):
                status, sols, nodes, prunes = result
                budget.charge(status, nodes, prunes)
                found.extend(prefix + s for s in sols)
                if found and not collect_all:
                    pool.shutdown(cancel_futures=True)
                    break
    else:
        for prefix, task in zip(prefixes, tasks):
            task = task[:5] + (budget.remaining(),) + task[6:]
            status, sols, nodes, prunes = _solve_prefix(task)
            budget.charge(status, nodes, prunes)
            found.extend(prefix + s for s in sols)
            if found and not collect_all:
                break
    return edges, found


def _prefix_key(rows, j, marks):
    """Canonical key of the coloring of vertices 0..j with future-adjacency marks."""
    cut = (1 << (j + 1)) - 1
    layers = [[r & cut for r in layer[: j + 1]] for layer in rows]
    cert, _ = canonical_labeling(j + 1, layers, marks)
    return cert


def _marks(graph, j):
    return [graph.rows[i] >> (j + 1) for i in range(j + 1)]


def _extensions(query, targets, rows, j, budget):
    g = query.graph
    edges_j = [(i, j) for i in range(j) if g.rows[j] >> i & 1]
    status, sols, nodes, prunes = kernel.edge_search(
        g.order, rows, edges_j, targets, True, budget.remaining(), budget.deadline
    )
    budget.charge(status, nodes, prunes)
    return [_apply(rows, edges_j, s) for s in sols]


def _rows_to_coloring(query, rows):
    assignment = {}
    for c, layer in enumerate(rows):
        for u, r in enumerate(layer):
            w = r >> (u + 1)
            v = u + 1
            while w:
                if w & 1:
                    assignment[(u, v)] = c
                w >>= 1
                v += 1
    return EdgeColoring.from_assignment(query.graph, query.palette, assignment)


def _sym_find(query, budget):
    n = query.graph.order
    targets = _targets(query)
    seen = set()
    stats = budget.stats

    def extend(j, rows):
        if j == n:
            return rows
        for new in _extensions(query, targets, rows, j, budget):
            if j < n - 1:
                key = (j, _prefix_key(new, j, _marks(query.graph, j)))
                if key in seen:
                    continue
                seen.add(key)
                stats.classes += 1
            hit = extend(j + 1, new)
            if hit is not None:
                return hit
        return None

    rows = extend(0, [[0] * n for _ in targets])
    return None if rows is None else _rows_to_coloring(query, rows)


def _sym_levels(query, budget):
    """All free colorings of the host, one per isomorphism class (vertex extension, BFS)."""
    n = query.graph.order
    targets = _targets(query)
    level = [[[0] * n for _ in targets]]
    for j in range(n):
        marks = _marks(query.graph, j)
        nxt = {}
        for rows in level:
            for new in _extensions(query, targets, rows, j, budget):
                key = _prefix_key(new, j, marks)
                if key not in nxt:
                    nxt[key] = new
        level = list(nxt.values())
        budget.stats.classes += len(level)
        if not level:
            break
    return level


def _run_find(query):
    stats = SearchStats(mode="symmetry" if query.uses_symmetry else "dfs")
    budget = _Budget(query, stats)
    start = time.monotonic()
    try:
        if _trivially_blocked(query):
            return None, stats
        if query.graph.order == 0 or query.graph.edge_count == 0:
            return _to_coloring(query, [], []), stats
        if query.uses_symmetry:
            return _sym_find(query, budget), stats
        edges, found = _dfs(query, budget, collect_all=False)
        return (_to_coloring(query, edges, found[0]) if found else None), stats
    finally:
        stats.elapsed = time.monotonic() - start


def find_free_coloring(q: ArrowQuery) -> EdgeColoring | None:
    """A free coloring of ``q.graph``, or None when exhaustive search finds none.

    Raises ``SearchIndeterminate`` when the budget runs out first.
    """
    coloring, _ = _run_find(q)
    return coloring


def arrows(q: ArrowQuery) -> ArrowVerdict:
    try:
        coloring, stats = _run_find(q)
    except SearchIndeterminate as exc:
        return ArrowVerdict(None, None, exc.stats)
    if coloring is not None and not is_free_coloring(coloring, q.forest, q.cliques):
        raise AssertionError("search produced a coloring that is not free")
    return ArrowVerdict(coloring is None, coloring, stats)


def enumerate_free_colorings(
    g: Graph,
    f: Forest | None,
    ms,
    dedup: bool = True,
    *,
    node_budget=None,
    time_budget=None,
    cap: int = 12,
) -> list[EdgeColoring]:
    """Every free coloring of ``g``; with ``dedup`` one per colored-isomorphism class."""
    if g.order > cap:
        raise CapacityError(f"order {g.order} exceeds enumeration cap {cap}")
    q = ArrowQuery(g, f, tuple(ms), node_budget=node_budget, time_budget=time_budget)
    stats = SearchStats(mode="levels" if dedup else "dfs")
    budget = _Budget(q, stats)
    if _trivially_blocked(q):
        return []
    if g.edge_count == 0:
        return [_to_coloring(q, [], [])]
    if dedup:
        return [_rows_to_coloring(q, rows) for rows in _sym_levels(q, budget)]
    edges, found = _dfs(q, budget, collect_all=True)
    return [_to_coloring(q, edges, s) for s in found]


def _query_opts(opts):
    allowed = {"node_budget", "time_budget", "symmetry", "workers", "edge_order"}
    bad = set(opts) - allowed
    if bad:
        raise TypeError(f"unexpected options {sorted(bad)}")
    return opts


def min_ramsey(f: Forest | None, ms, cap: int = 16, **opts) -> MinimumResult:
    """Least ``n <= cap`` with ``K_n`` arrowing; the certificate is a free coloring of ``K_{n-1}``."""
    _query_opts(opts)
    total = SearchStats(mode="scan")
    certificate = None
    for n in range(1, cap + 1):
        v = arrows(ArrowQuery(build_complete(n), f, tuple(ms), **opts))
        total.nodes += v.stats.nodes
        total.prunes += v.stats.prunes
        total.elapsed += v.stats.elapsed
        if v.indeterminate:
            raise SearchIndeterminate(f"undecided at order {n}", total)
        if v.arrows:
            return MinimumResult(n, certificate, total)
        certificate = v.certificate
    raise CapacityError(f"no arrowing complete graph up to order {cap}")


def min_star(f: Forest | None, ms, r: int | None = None, **opts) -> MinimumResult:
    """Least pendant degree ``k`` with ``K_{r-1} + K_{1,k}`` arrowing.

    ``r`` defaults to the oracle's own ``min_ramsey`` value. The certificate is
    a free coloring of the host with pendant degree ``k - 1``.
    """
    _query_opts(opts)
    total = SearchStats(mode="bisect")
    if r is None:
        r = min_ramsey(f, ms, **opts).value

    def check(k):
        v = arrows(ArrowQuery(build_pendant_star(r - 1, k), f, tuple(ms), **opts))
        total.nodes += v.stats.nodes
        total.prunes += v.stats.prunes
        total.elapsed += v.stats.elapsed
        if v.indeterminate:
            raise SearchIndeterminate(f"undecided at pendant degree {k}", total)
        return v

    lo_v = check(0)
    if lo_v.arrows:
        raise InvalidInput(f"K_{r - 1} already arrows; {r} is not the Ramsey number")
    hi_v = check(r - 1)
    if not hi_v.arrows:
        raise InvalidInput(f"K_{r} does not arrow; {r} is not the Ramsey number")
    lo, hi = 0, r - 1
    cert = lo_v.certificate
    while hi - lo > 1:
        mid = (lo + hi) // 2
        v = check(mid)
        if v.arrows:
            hi = mid
        else:
            lo, cert = mid, v.certificate
    return MinimumResult(hi, cert, total)
