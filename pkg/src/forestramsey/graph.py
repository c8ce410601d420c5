"""Simple graphs on bit rows, edge colorings, and containment predicates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import kernel
from .canon import canonical_form  # noqa: F401  (re-exported)
from .errors import CapacityError, InvalidInput

MAX_ORDER = 64


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``rows[v]`` is the neighbor bitmask of ``v``.

    ``parts`` optionally records a vertex partition the graph was built from
    (complete multipartite hosts, witness layouts). It is metadata only and
    does not take part in equality.
    """

    order: int
    rows: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.order < 0:
            raise InvalidInput("graph order must be nonnegative")
        if self.order > MAX_ORDER:
            raise CapacityError(f"order {self.order} exceeds the configured maximum {MAX_ORDER}")
        if len(self.rows) != self.order:
            raise InvalidInput("one adjacency row per vertex required")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.rows):
            if row & ~full or row >> v & 1:
                raise InvalidInput(f"bad adjacency row for vertex {v}")
            w = row
            while w:
                b = w & -w
                w ^= b
                if not self.rows[b.bit_length() - 1] >> v & 1:
                    raise InvalidInput("adjacency must be symmetric")

    @classmethod
    def from_edges(cls, order, edges, parts=None):
        rows = [0] * order
        for u, v in edges:
            if u == v or not (0 <= u < order and 0 <= v < order):
                raise InvalidInput(f"invalid edge ({u}, {v}) for order {order}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows), parts)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, sorted lexicographically."""
        out = []
        for u in range(self.order):
            w = self.rows[u] >> (u + 1)
            v = u + 1
            while w:
                if w & 1:
                    out.append((u, v))
                w >>= 1
                v += 1
        return out

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def has_edge(self, u, v) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def complement(self) -> Graph:
        full = (1 << self.order) - 1
        return Graph(self.order, tuple(full & ~r & ~(1 << v) for v, r in enumerate(self.rows)))

    def without_edge(self, u, v) -> Graph:
        if not self.has_edge(u, v):
            raise InvalidInput(f"({u}, {v}) is not an edge")
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.order, tuple(rows), self.parts)

    def to_json(self) -> dict:
        return {"order": self.order, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data) -> Graph:
        try:
            order = int(data["order"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed graph object: {exc}") from exc
        return cls.from_edges(order, edges)


@dataclass(frozen=True)
class EdgeColoring:
    """Total assignment of colors ``0..palette-1`` to the edges of ``graph``.

    ``colors`` is aligned with ``graph.edges()``.
    """

    graph: Graph
    palette: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.palette < 1:
            raise InvalidInput("palette must hold at least one color")
        if len(self.colors) != self.graph.edge_count:
            raise InvalidInput("every edge needs exactly one color")
        if any(not 0 <= c < self.palette for c in self.colors):
            raise InvalidInput("color index outside the palette")

    @classmethod
    def from_assignment(cls, graph, palette, assignment):
        """Build from a mapping ``{(u, v): color}`` covering every edge (either orientation)."""
        colors = []
        for u, v in graph.edges():
            c = assignment.get((u, v), assignment.get((v, u)))
            if c is None:
                raise InvalidInput(f"edge ({u}, {v}) has no color")
            colors.append(c)
        if len(assignment) != len(colors):
            extra = [e for e in assignment if not graph.has_edge(*e)]
            if extra:
                raise InvalidInput(f"colored non-edge {extra[0]}")
        return cls(graph, palette, tuple(colors))

    @property
    def assignment(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.graph.edges(), self.colors))

    def color(self, u, v) -> int:
        if u > v:
            u, v = v, u
        return self.assignment[(u, v)]

    def class_rows(self) -> list[list[int]]:
        rows = [[0] * self.graph.order for _ in range(self.palette)]
        for (u, v), c in zip(self.graph.edges(), self.colors):
            rows[c][u] |= 1 << v
            rows[c][v] |= 1 << u
        return rows

    def color_class(self, i) -> Graph:
        """Spanning subgraph formed by the color-``i`` edges."""
        if not 0 <= i < self.palette:
            raise InvalidInput(f"color {i} outside palette of size {self.palette}")
        return Graph(self.graph.order, tuple(self.class_rows()[i]))

    def recolor(self, u, v, c) -> EdgeColoring:
        a = self.assignment
        key = (min(u, v), max(u, v))
        if key not in a:
            raise InvalidInput(f"({u}, {v}) is not an edge")
        a[key] = c
        return EdgeColoring.from_assignment(self.graph, self.palette, a)

    def to_json(self) -> dict:
        return {
            "order": self.graph.order,
            "colors": self.palette,
            "edges": [[u, v, c] for (u, v), c in zip(self.graph.edges(), self.colors)],
        }

    @classmethod
    def from_json(cls, data) -> EdgeColoring:
        try:
            order = int(data["order"])
            palette = int(data["colors"])
            triples = [(int(u), int(v), int(c)) for u, v, c in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed coloring object: {exc}") from exc
        graph = Graph.from_edges(order, [(u, v) for u, v, _ in triples])
        return cls.from_assignment(graph, palette, {(min(u, v), max(u, v)): c for u, v, c in triples})


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), separators=(",", ":"))


def build_complete(n: int) -> Graph:
    if n < 0:
        raise InvalidInput("n must be nonnegative")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def build_complete_multipartite(sizes) -> Graph:
    """Complete multipartite graph; parts are consecutive vertex ranges."""
    sizes = list(sizes)
    if not sizes:
        raise InvalidInput("at least one part is required")
    if any(s < 1 for s in sizes):
        raise InvalidInput("part sizes must be positive")
    n = sum(sizes)
    full = (1 << n) - 1
    rows = [0] * n
    parts = []
    start = 0
    for s in sizes:
        block = ((1 << s) - 1) << start
        for v in range(start, start + s):
            rows[v] = full & ~block
        parts.append(tuple(range(start, start + s)))
        start += s
    return Graph(n, tuple(rows), tuple(parts))


def build_pendant_star(n: int, k: int) -> Graph:
    """``K_n`` plus vertex ``n`` joined to core vertices ``0..k-1``."""
    if n < 0 or not 0 <= k <= n:
        raise InvalidInput(f"pendant degree {k} must lie in 0..{n}")
    core = build_complete(n)
    attach = (1 << k) - 1
    rows = [r | (1 << n if v < k else 0) for v, r in enumerate(core.rows)]
    rows.append(attach)
    return Graph(n + 1, tuple(rows))


def disjoint_cliques(sizes) -> Graph:
    """Union of vertex-disjoint cliques laid out consecutively."""
    rows = []
    parts = []
    start = 0
    for s in sizes:
        block = ((1 << s) - 1) << start
        for v in range(start, start + s):
            rows.append(block & ~(1 << v))
        parts.append(tuple(range(start, start + s)))
        start += s
    return Graph(start, tuple(rows), tuple(parts))


def contains_clique(g: Graph, m: int) -> bool:
    if m < 1:
        raise InvalidInput("clique order must be at least 1")
    return kernel.clique_in(list(g.rows), (1 << g.order) - 1, m)


def contains_forest(g: Graph, f) -> bool:
    """True iff ``g`` has vertex-disjoint copies of all components of ``f``."""
    return kernel.embeds_forest(list(g.rows), g.order, f.code())


def color_class(c: EdgeColoring, i: int) -> Graph:
    return c.color_class(i)


def is_free_coloring(c: EdgeColoring, f, ms) -> bool:
    """True iff no color class contains its target.

    With a forest ``f`` color 0 must omit ``f`` and color ``i + 1`` must omit
    ``K_{ms[i]}``; without one, color ``i`` must omit ``K_{ms[i]}``.
    """
    ms = list(ms)
    offset = 0 if f is None else 1
    if c.palette != offset + len(ms):
        raise InvalidInput(f"palette {c.palette} does not match {offset + len(ms)} targets")
    rows = c.class_rows()
    n = c.graph.order
    if f is not None and kernel.embeds_forest(rows[0], n, f.code()):
        return False
    for i, m in enumerate(ms):
        if m < 1:
            raise InvalidInput("clique order must be at least 1")
        if kernel.clique_in(rows[offset + i], (1 << n) - 1, m):
            return False
    return True

