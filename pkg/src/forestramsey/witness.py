"""Explicit free colorings that certify the lower bounds, plus the critical family."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .calc import ramsey_forest, star_forest
from .canon import canonical_labeling
from .errors import InvalidInput
from .forest import Forest, parse_forest, path, stats
from .graph import (
    EdgeColoring,
    build_complete,
    build_pendant_star,
    disjoint_cliques,
    is_free_coloring,
)
from .table import ClassicalTable, default_table

CRITICAL = "critical-family"
STAR_LOWER = "star-lower"
MULTI_STAR_LOWER = "multicolor-star-lower"
BLOWUP = "ramsey-lower-blowup"
FULL = "ramsey-full-duplication"
KINDS = (CRITICAL, STAR_LOWER, BLOWUP, MULTI_STAR_LOWER, FULL)


@dataclass(frozen=True)
class Claim:
    """``coloring`` is free for ``forest`` (color 0, if given) and ``cliques`` (remaining colors)."""

    forest: Forest | None
    cliques: tuple[int, ...]

    def to_json(self):
        return {"forest": None if self.forest is None else self.forest.to_spec(), "cliques": list(self.cliques)}


@dataclass(frozen=True)
class WitnessColoring:
    coloring: EdgeColoring
    kind: str
    params: dict = field(hash=False)
    claim: Claim

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown witness kind {self.kind!r}")

    def to_json(self) -> dict:
        out = self.coloring.to_json()
        out["kind"] = self.kind
        out["params"] = self.params
        out["claim"] = self.claim.to_json()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> WitnessColoring:
        if not isinstance(data, dict):
            raise InvalidInput("witness file must hold a JSON object")
        coloring = EdgeColoring.from_json(data)
        try:
            kind = data["kind"]
            params = dict(data["params"])
            claim = data["claim"]
            spec = claim["forest"]
            cliques = tuple(int(m) for m in claim["cliques"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed witness object: {exc}") from exc
        forest = None if spec is None else parse_forest(spec)
        return cls(coloring, kind, params, Claim(forest, cliques))


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _two_color(order, parts):
    """Color 0 inside the given vertex blocks, color 1 everywhere else on ``K_order``."""
    host = build_complete(order)
    block = [0] * order
    for idx, part in enumerate(parts):
        for v in part:
            block[v] = idx
    colors = tuple(0 if block[u] == block[v] else 1 for u, v in host.edges())
    return EdgeColoring(host, 2, colors)


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _layout(sizes):
    """Consecutive vertex blocks for the given sizes."""
    out, start = [], 0
    for s in sizes:
        out.append(tuple(range(start, start + s)))
        start += s
    return out


def _critical_order(n, m, k):
    if n < 2 or m < 3 or k < 1:
        raise InvalidInput("need n >= 2, m >= 3, k >= 1")
    return (n - 1) * (m - 2) + n * k - 1


def critical_family(n: int, m: int, k: int, distinct: bool = True) -> list[WitnessColoring]:
    """Free 2-colorings of ``K_{r-1}`` for ``(k T_n, K_m)``, ``r = (n-1)(m-2) + nk``.

    Red is ``m - 1`` disjoint cliques of orders ``(n-1) + n a_j`` for a
    composition ``a`` of ``i`` plus one of order ``(k-i)n - 1``. With
    ``distinct`` one witness per isomorphism class is returned (first
    parameters that produce it); otherwise one per ``(i, composition)``.
    """
    order = _critical_order(n, m, k)
    claim = Claim(Forest([path(n)] * k), (m,))
    out = []
    seen = set()
    for i in range(k):
        for comp in _compositions(i, m - 2):
            sizes = sorted([(n - 1) + n * a for a in comp] + [(k - i) * n - 1], reverse=True)
            if distinct:
                red = disjoint_cliques(sizes)
                key = canonical_labeling(red.order, [list(red.rows)])[0]
                if key in seen:
                    continue
                seen.add(key)
            params = {"n": n, "m": m, "k": k, "i": i, "composition": list(comp), "sizes": sizes}
            out.append(WitnessColoring(_two_color(order, _layout(sizes)), CRITICAL, params, claim))
    return out


def _components(rows, order):
    left = (1 << order) - 1
    comps = []
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            w = frontier
            while w:
                b = w & -w
                w ^= b
                nxt |= rows[b.bit_length() - 1]
            frontier = nxt & ~comp
            comp |= nxt
        comps.append(comp)
        left &= ~comp
    return comps


def _is_complete(g) -> bool:
    return g.edge_count == g.order * (g.order - 1) // 2


def family_membership(c: EdgeColoring, n: int, m: int, k: int) -> bool:
    """Membership in the critical family via the normal form: exactly ``m - 1``
    red cliques, each of order ``(n-1) + n a`` with the ``a`` summing to ``k - 1``.
    """
    order = _critical_order(n, m, k)
    if c.graph.order != order:
        raise InvalidInput(f"expected a coloring of K_{order}, got order {c.graph.order}")
    if c.palette != 2 or not _is_complete(c.graph):
        raise InvalidInput("expected a 2-coloring of a complete graph")
    red = c.class_rows()[0]
    comps = _components(red, order)
    if len(comps) != m - 1:
        return False
    spare = 0
    for comp in comps:
        size = comp.bit_count()
        w = comp
        while w:
            b = w & -w
            w ^= b
            v = b.bit_length() - 1
            if red[v] != comp & ~b:
                return False
        if size < n - 1 or (size - (n - 1)) % n:
            return False
        spare += (size - (n - 1)) // n
    return spare == k - 1


def ramsey_full_witness(ms, edge=None, table: ClassicalTable | None = None) -> WitnessColoring:
    """Free coloring of ``K_r - uv`` (``r = R(K_m1, ...)``): ``v`` copies ``u``
    in the classical witness on ``K_{r-1}``.
    """
    table = table or default_table()
    ms = tuple(ms)
    r = table.value(ms)
    if r < 2:
        raise InvalidInput("need R >= 2 to remove an edge")
    base = table.witness(ms)
    u, v = (r - 2, r - 1) if edge is None else sorted(edge)
    if u == v or not 0 <= u < v < r:
        raise InvalidInput(f"edge ({u}, {v}) is not an edge of K_{r}")
    host = build_complete(r).without_edge(u, v)
    image = [x for x in range(r) if x != v]
    phi = {x: i for i, x in enumerate(image)}
    phi[v] = phi[u]
    shadow = base.assignment
    colors = []
    for a, b in host.edges():
        pa, pb = phi[a], phi[b]
        colors.append(shadow[(min(pa, pb), max(pa, pb))])
    coloring = EdgeColoring(host, len(ms), tuple(colors))
    params = {"cliques": list(ms), "r": r, "edge": [u, v]}
    return WitnessColoring(coloring, FULL, params, Claim(None, ms))


def star_lower_witness(f: Forest, ms, table: ClassicalTable | None = None) -> WitnessColoring:
    """Free coloring of ``K_{R-1} + K_{1, R_* - 1}``.

    Core parts ``V_1..V_{b-1}`` (``b`` the classical value) are red cliques of
    order ``j0 - 1`` except the last, of order ``p0 - 1``; the pendant vertex
    sees every part but ``V_1``. Cross edges copy a free coloring of the graph
    on the parts plus the pendant vertex, which misses only the ``V_1``-pendant pair.
    """
    table = table or default_table()
    ms = tuple(ms)
    rs = star_forest(f, ms, table)
    big = ramsey_forest(f, ms, table)
    j0, b = rs.j0, rs.base_r
    p0 = stats(f).tail_sum(j0)
    nominal_sizes = [j0 - 1] * (b - 2) + [p0 - 1]
    # vertex layout: largest part first, V_1 last so the pendant takes a prefix
    blocks = _layout(list(reversed(nominal_sizes)))
    parts = list(reversed(blocks))  # parts[i] is V_{i+1}
    core = big.value - 1
    host = build_pendant_star(core, rs.value - 1)
    pendant = core
    shadow = ramsey_full_witness(ms, (0, b - 1), table).coloring.assignment
    where = [0] * host.order
    for idx, part in enumerate(parts):
        for v in part:
            where[v] = idx
    where[pendant] = b - 1
    colors = []
    for u, v in host.edges():
        pu, pv = where[u], where[v]
        colors.append(0 if pu == pv else 1 + shadow[(min(pu, pv), max(pu, pv))])
    coloring = EdgeColoring(host, 1 + len(ms), tuple(colors))
    params = {
        "forest": f.to_spec(),
        "cliques": list(ms),
        "R": big.value,
        "r_star": rs.value,
        "j0": j0,
        "base_r": b,
        "parts": [list(p) for p in parts],
        "pendant": pendant,
    }
    kind = STAR_LOWER if len(ms) == 1 else MULTI_STAR_LOWER
    return WitnessColoring(coloring, kind, params, Claim(f, ms))


def ramsey_lower_witness(f: Forest, ms, table: ClassicalTable | None = None) -> WitnessColoring:
    """Free coloring of ``K_{R-1}`` by blowing up the classical witness on ``K_{b-1}``:
    one vertex becomes a red ``K_{p0-1}``, the others red ``K_{j0-1}``.
    """
    table = table or default_table()
    ms = tuple(ms)
    if not ms:
        raise InvalidInput("at least one clique order is required")
    res = ramsey_forest(f, ms, table)
    j0, b = res.j0, res.base_r
    p0 = stats(f).tail_sum(j0)
    base = table.witness(ms).assignment
    blobs = _layout([p0 - 1] + [j0 - 1] * (b - 2))
    owner = {}
    for idx, blob in enumerate(blobs):
        for v in blob:
            owner[v] = idx
    host = build_complete(res.value - 1)
    colors = []
    for u, v in host.edges():
        a, c = owner[u], owner[v]
        colors.append(0 if a == c else 1 + base[(min(a, c), max(a, c))])
    coloring = EdgeColoring(host, 1 + len(ms), tuple(colors))
    params = {
        "forest": f.to_spec(),
        "cliques": list(ms),
        "R": res.value,
        "j0": j0,
        "base_r": b,
        "blobs": [list(x) for x in blobs],
    }
    return WitnessColoring(coloring, BLOWUP, params, Claim(f, ms))


def _check_blocks(c: EdgeColoring, blocks, vertices) -> str:
    """Empty string iff ``blocks`` partition ``vertices`` and color 0 is exactly the intra-block edges."""
    flat = sorted(v for blk in blocks for v in blk)
    if flat != sorted(vertices):
        return "parts do not partition the vertex set"
    owner = {v: i for i, blk in enumerate(blocks) for v in blk}
    for (u, v), col in zip(c.graph.edges(), c.colors):
        if u not in owner or v not in owner:
            continue
        inside = owner[u] == owner[v]
        if inside and col != 0:
            return f"intra-part edge ({u}, {v}) has color {col}"
        if not inside and col == 0:
            return f"cross edge ({u}, {v}) has color 0"
    return ""


def _structure(w: WitnessColoring) -> str:
    c, p = w.coloring, w.params
    g = c.graph
    if w.kind == CRITICAL:
        n, m, k = p["n"], p["m"], p["k"]
        order = _critical_order(n, m, k)
        if g.order != order or not _is_complete(g):
            return f"host is not K_{order}"
        comp = p["composition"]
        if len(comp) != m - 2 or sum(comp) != p["i"] or not 0 <= p["i"] < k:
            return "composition does not match i"
        expect = sorted([(n - 1) + n * a for a in comp] + [(k - p["i"]) * n - 1], reverse=True)
        if list(p["sizes"]) != expect:
            return f"part sizes {p['sizes']} differ from {expect}"
        why = _check_blocks(c, _layout(expect), range(order))
        if why:
            return why
        if not family_membership(c, n, m, k):
            return "coloring is not in the critical family"
        return ""
    if w.kind in (STAR_LOWER, MULTI_STAR_LOWER):
        f = parse_forest(p["forest"])
        j0, b = p["j0"], p["base_r"]
        parts = [tuple(x) for x in p["parts"]]
        core = p["R"] - 1
        pendant = p["pendant"]
        if g.order != p["R"] or pendant != core:
            return f"host order {g.order} differs from R = {p['R']}"
        if g.degree(pendant) != p["r_star"] - 1:
            return f"pendant degree {g.degree(pendant)} differs from {p['r_star'] - 1}"
        core_mask = (1 << core) - 1
        if any(g.rows[v] & core_mask != core_mask & ~(1 << v) for v in range(core)):
            return "core is not complete"
        sizes = [len(x) for x in parts]
        expect = [j0 - 1] * (b - 2) + [stats(f).tail_sum(j0) - 1]
        if sizes != expect:
            return f"part sizes {sizes} differ from {expect}"
        attach = sum(1 << v for x in parts[1:] for v in x)
        if g.rows[pendant] != attach:
            return "pendant is not joined to exactly the parts other than V_1"
        return _check_blocks(c, parts, range(core))
    if w.kind == BLOWUP:
        f = parse_forest(p["forest"])
        j0, b = p["j0"], p["base_r"]
        blobs = [tuple(x) for x in p["blobs"]]
        if g.order != p["R"] - 1 or not _is_complete(g):
            return f"host is not K_{p['R'] - 1}"
        sizes = [len(x) for x in blobs]
        expect = [stats(f).tail_sum(j0) - 1] + [j0 - 1] * (b - 2)
        if sizes != expect:
            return f"blob sizes {sizes} differ from {expect}"
        why = _check_blocks(c, blobs, range(g.order))
        if why:
            return why
        owner = {v: i for i, x in enumerate(blobs) for v in x}
        between = {}
        for (u, v), col in zip(g.edges(), c.colors):
            key = (min(owner[u], owner[v]), max(owner[u], owner[v]))
            if key[0] != key[1] and between.setdefault(key, col) != col:
                return f"blobs {key} are joined in more than one color"
        return ""
    if w.kind == FULL:
        r = p["r"]
        u, v = p["edge"]
        if g.order != r or g != build_complete(r).without_edge(u, v):
            return f"host is not K_{r} minus ({u}, {v})"
        return ""
    return f"unknown kind {w.kind!r}"


def verify_witness(w: WitnessColoring) -> WitnessCheck:
    """Freeness against the claim plus the structural metadata in ``params``."""
    try:
        cl = w.claim
        if "cliques" in w.params and tuple(w.params["cliques"]) != cl.cliques:
            return WitnessCheck(False, "claim cliques differ from params")
        if "forest" in w.params and (cl.forest is None or parse_forest(w.params["forest"]) != cl.forest):
            return WitnessCheck(False, "claim forest differs from params")
        if not is_free_coloring(w.coloring, cl.forest, cl.cliques):
            return WitnessCheck(False, "a color class contains its target")
        why = _structure(w)
    except (InvalidInput, KeyError, TypeError, ValueError) as exc:
        return WitnessCheck(False, f"malformed witness: {exc}")
    return WitnessCheck(not why, why or "ok")
