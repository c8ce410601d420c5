"""Canonical labeling of small vertex- and edge-colored graphs.

Equitable partition refinement followed by individualization, keeping the
lexicographically largest leaf certificate. Automorphisms discovered at
leaves prune the search tree (orbit pruning on the current path plus a
backjump to the first/best path).
"""

from __future__ import annotations

from .errors import CapacityError

DEFAULT_CAP = 10


def _refine(cells, layers, n):
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups = {}
            for v in cell:
                sig = tuple((layer[v] & m).bit_count() for m in masks for layer in layers)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(cell)
                continue
            changed = True
            for sig in sorted(groups):
                out.append(groups[sig])
        cells = out
        if not changed:
            return cells


def _certificate(perm, layers, vcolors):
    pos_color = []
    for v in perm:
        pos_color.append(vcolors[v])
    cert = [tuple(pos_color)]
    for a, u in enumerate(perm):
        row = []
        for v in perm[a + 1:]:
            x = 0
            for i, layer in enumerate(layers):
                if layer[u] >> v & 1:
                    x = i + 1
                    break
            row.append(x)
        cert.append(tuple(row))
    return tuple(cert)


def _orbit_finder(gens, n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for a in range(n):
            ra, rb = find(a), find(g[a])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return find


def canonical_labeling(n, layers, vcolors=None):
    """Return ``(certificate, perm)`` for a colored graph on ``n`` vertices.

    ``layers[i]`` are the bit rows of the color-``i`` edges (color classes
    must be disjoint); ``vcolors`` are optional integer vertex colors.
    ``perm[p]`` is the vertex placed at canonical position ``p``. Two inputs
    get equal certificates iff an isomorphism preserves vertex and edge colors.
    """
    if vcolors is None:
        vcolors = [0] * n
    if n == 0:
        return ((), ()), []
    by_color = {}
    for v in range(n):
        by_color.setdefault(vcolors[v], []).append(v)
    start = [by_color[c] for c in sorted(by_color)]

    state = {"best": None, "best_path": None, "first": None, "first_path": None}
    gens = []

    def leaf(cells, path):
        perm = [cell[0] for cell in cells]
        cert = _certificate(perm, layers, vcolors)
        if state["first"] is None:
            state["first"] = (cert, perm)
            state["first_path"] = list(path)
            state["best"] = (cert, perm)
            state["best_path"] = list(path)
            return len(path)
        for key, pkey in (("first", "first_path"), ("best", "best_path")):
            ref_cert, ref_perm = state[key]
            if cert == ref_cert:
                g = [0] * n
                for a in range(n):
                    g[ref_perm[a]] = perm[a]
                gens.append(g)
                ref_path = state[pkey]
                common = 0
                while common < len(path) and common < len(ref_path) and path[common] == ref_path[common]:
                    common += 1
                return common
        if cert > state["best"][0]:
            state["best"] = (cert, perm)
            state["best_path"] = list(path)
        return len(path)

    def search(cells, path):
        cells = _refine(cells, layers, n)
        target = None
        for i, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = i
        if target is None:
            return leaf(cells, path)
        depth = len(path)
        tried = []
        for v in sorted(cells[target]):
            if tried:
                fixing = [g for g in gens if all(g[p] == p for p in path)]
                if fixing:
                    find = _orbit_finder(fixing, n)
                    rv = find(v)
                    if any(find(t) == rv for t in tried):
                        continue
            tried.append(v)
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            back = search(child, path + [v])
            if back < depth:
                return back
        return depth

    search(start, [])
    cert, perm = state["best"]
    return cert, perm


def canonical_form(g, cap: int = DEFAULT_CAP):
    """Canonical label of a plain graph: equal labels iff isomorphic."""
    if g.order > cap:
        raise CapacityError(f"order {g.order} exceeds canonicalization cap {cap}")
    cert, _ = canonical_labeling(g.order, [list(g.rows)])
    return (g.order, cert)


def canonical_coloring_form(coloring, marks=None, cap: int = DEFAULT_CAP):
    """Canonical label of an edge coloring (non-edges of the host are a distinct value)."""
    n = coloring.graph.order
    if n > cap:
        raise CapacityError(f"order {n} exceeds canonicalization cap {cap}")
    layers = [list(coloring.color_class(i).rows) for i in range(coloring.palette)]
    cert, _ = canonical_labeling(n, layers, marks)
    return (n, coloring.palette, cert)
