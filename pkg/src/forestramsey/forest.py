"""Forests as multisets of explicit trees, their text form, and component statistics."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property

from .canon import canonical_labeling
from .errors import InvalidInput, ParseError
from .graph import Graph


@dataclass(frozen=True, eq=False)
class Tree:
    order: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.order < 1:
            raise InvalidInput("a tree has at least one vertex")
        if len(self.edges) != self.order - 1:
            raise InvalidInput(f"a tree on {self.order} vertices has {self.order - 1} edges")
        g = self.graph  # validates endpoints
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            w = frontier
            while w:
                b = w & -w
                w ^= b
                nxt |= g.rows[b.bit_length() - 1]
            frontier = nxt & ~seen
            seen |= nxt
        if seen != (1 << self.order) - 1:
            raise InvalidInput("edge list is not connected")

    @cached_property
    def graph(self) -> Graph:
        return Graph.from_edges(self.order, self.edges)

    @cached_property
    def _canon(self):
        return canonical_labeling(self.order, [list(self.graph.rows)])

    @property
    def label(self):
        return (self.order, self._canon[0])

    def __eq__(self, other):
        return isinstance(other, Tree) and self.label == other.label

    def __hash__(self):
        return hash(self.label)

    def canonical(self) -> Tree:
        """Isomorphic copy relabeled into canonical vertex order."""
        perm = self._canon[1]
        pos = {v: p for p, v in enumerate(perm)}
        return Tree(self.order, tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in self.edges)))

    def is_path(self) -> bool:
        return self.order <= 2 or max(self.graph.degrees()) == 2

    def is_star(self) -> bool:
        return self.order <= 2 or max(self.graph.degrees()) == self.order - 1

    def to_spec(self) -> str:
        if self.order == 1:
            return "K1"
        if self.order == 2:
            return "K2"
        if self.is_path():
            return f"P{self.order}"
        if self.is_star():
            return f"S{self.order}"
        return "T(" + ",".join(map(str, prufer_encode(self.canonical()))) + ")"


def path(n: int) -> Tree:
    return Tree(n, tuple((i, i + 1) for i in range(n - 1)))


def star(n: int) -> Tree:
    return Tree(n, tuple((0, i) for i in range(1, n)))


def prufer_decode(seq) -> Tree:
    """Standard Prüfer decoding: a code of length L gives a tree on L + 2 vertices."""
    seq = list(seq)
    n = len(seq) + 2
    for x in seq:
        if not isinstance(x, int) or not 0 <= x < n:
            raise ParseError(f"Prüfer entry {x!r} outside 0..{n - 1}")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(n) if degree[v] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Tree(n, tuple(edges))


def prufer_encode(tree: Tree) -> list[int]:
    if tree.order < 2:
        raise InvalidInput("Prüfer codes need at least two vertices")
    rows = list(tree.graph.rows)
    alive = (1 << tree.order) - 1
    code = []
    for _ in range(tree.order - 2):
        leaf = next(v for v in range(tree.order) if alive >> v & 1 and (rows[v] & alive).bit_count() == 1)
        nb = (rows[leaf] & alive).bit_length() - 1
        code.append(nb)
        alive &= ~(1 << leaf)
    return code


@dataclass(frozen=True)
class ForestStats:
    n: int
    k: dict[int, int]
    C: tuple[int, ...]
    q: int
    total: int

    def tail_sum(self, j: int) -> int:
        """Vertices in components of order at least ``j``."""
        return sum(i * c for i, c in self.k.items() if i >= j)


class Forest:
    """Multiset of trees, kept sorted by (order, canonical label)."""

    __slots__ = ("components", "_code")

    def __init__(self, components=()):
        comps = list(components)
        for t in comps:
            if not isinstance(t, Tree):
                raise InvalidInput("forest components must be trees")
        comps.sort(key=lambda t: t.label)
        self.components = tuple(comps)
        self._code = None

    @property
    def total(self) -> int:
        return sum(t.order for t in self.components)

    @property
    def edge_count(self) -> int:
        return sum(t.order - 1 for t in self.components)

    def has_isolated(self) -> bool:
        return any(t.order == 1 for t in self.components)

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        return isinstance(other, Forest) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return tuple(t.label for t in self.components)

    def __add__(self, other: Forest) -> Forest:
        return Forest(self.components + other.components)

    def __repr__(self):
        return f"Forest({self.to_spec()!r})"

    def to_spec(self) -> str:
        groups = Counter(t.label for t in self.components)
        parts = []
        seen = set()
        for t in self.components:
            if t.label in seen:
                continue
            seen.add(t.label)
            c = groups[t.label]
            parts.append(t.to_spec() if c == 1 else f"{c}*{t.to_spec()}")
        return "+".join(parts)

    __str__ = to_spec

    def code(self):
        """Flat embedding plan consumed by the search kernels.

        ``(parent, after, nchild, total, isolated)`` over the non-trivial
        components, largest first, each in BFS order from a max-degree root.
        """
        if self._code is not None:
            return self._code
        parent, after, nchild = [], [], []
        isolated = 0
        prev_root = None
        prev_label = None
        for t in sorted(self.components, key=lambda t: t.label, reverse=True):
            if t.order == 1:
                isolated += 1
                continue
            ct = t.canonical()
            rows = ct.graph.rows
            base = len(parent)
            root = max(range(ct.order), key=lambda v: (rows[v].bit_count(), -v))
            order = [root]
            index = {root: 0}
            par = {root: -1}
            queue = deque([root])
            while queue:
                u = queue.popleft()
                kids = [v for v in range(ct.order) if rows[u] >> v & 1 and v not in index]
                for v in kids:
                    index[v] = len(order)
                    order.append(v)
                    par[v] = u
                    queue.append(v)
            last_leaf = {}
            for v in order:
                p = par[v]
                parent.append(-1 if p < 0 else base + index[p])
                kids = (rows[v].bit_count() - (0 if p < 0 else 1))
                nchild.append(kids)
                a = -1
                if p < 0:
                    if prev_label == t.label:
                        a = prev_root
                elif kids == 0:
                    a = last_leaf.get(p, -1)
                    last_leaf[p] = base + index[v]
                after.append(a)
            prev_root = base
            prev_label = t.label
        total = len(parent)
        self._code = (tuple(parent), tuple(after), tuple(nchild), total, isolated)
        return self._code


def stats(f: Forest) -> ForestStats:
    k = Counter(t.order for t in f.components)
    C = tuple(sorted(k))
    return ForestStats(n=max(C, default=0), k=dict(sorted(k.items())), C=C, q=len(C), total=f.total)


def j0_and_max(f: Forest, r: int) -> tuple[int, int]:
    """Smallest maximizing component order ``j`` and the maximum of
    ``(j - 1)(r - 2) + (vertices in components of order >= j)`` over orders present in ``f``.
    """
    if not f.components:
        raise InvalidInput("forest must be nonempty")
    if r < 2:
        raise InvalidInput("base Ramsey value must be at least 2")
    s = stats(f)
    best_j, best = None, None
    for j in s.C:
        value = (j - 1) * (r - 2) + s.tail_sum(j)
        if best is None or value > best:
            best_j, best = j, value
    return best_j, best


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            got = self.text[start] if start < len(self.text) else "end of input"
            raise ParseError(f"expected integer, got {got!r}", start)
        return int(self.text[start:self.pos]), start

    def forest(self):
        trees = self.term()
        while self.peek() == "+":
            self.pos += 1
            trees += self.term()
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r}", self.pos)
        return Forest(trees)

    def term(self):
        count = 1
        if self.peek().isdigit():
            count, at = self.integer()
            if count < 1:
                raise ParseError("repeat count must be positive", at)
            self.expect("*")
        return [self.tree()] * count

    def tree(self):
        ch = self.peek()
        at = self.pos
        if ch not in ("P", "S", "K", "T", "E"):
            raise ParseError(f"expected a tree, got {ch or 'end of input'!r}", at)
        self.pos += 1
        try:
            if ch in "PSK":
                n, nat = self.integer()
                if n < 1:
                    raise ParseError("tree order must be positive", nat)
                if ch == "K":
                    if n > 2:
                        raise ParseError("K accepts only K1 and K2", at)
                    return path(n)
                return path(n) if ch == "P" else star(n)
            self.expect("(")
            if ch == "T":
                seq = [self.integer()[0]]
                while self.peek() == ",":
                    self.pos += 1
                    seq.append(self.integer()[0])
                self.expect(")")
                try:
                    return prufer_decode(seq)
                except ParseError as exc:
                    raise ParseError(str(exc), at) from None
            pairs = [self.pair()]
            while self.peek() == ",":
                self.pos += 1
                pairs.append(self.pair())
            self.expect(")")
            order = max(max(p) for p in pairs) + 1
            edges = tuple(sorted((min(p), max(p)) for p in pairs))
            return Tree(order, edges)
        except InvalidInput as exc:
            raise ParseError(f"not a tree: {exc}", at) from None

    def pair(self):
        self.expect("(")
        u, _ = self.integer()
        self.expect(",")
        v, _ = self.integer()
        self.expect(")")
        return (u, v)


def parse_forest(text: str) -> Forest:
    """Parse e.g. ``"2*K2"``, ``"P3+K2"``, ``"T(1,1)"``, ``"E((0,1),(1,2))"``."""
    return _Parser(text).forest()
