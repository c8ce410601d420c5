# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract as ``_pykernel``."""

from libc.stdint cimport uint64_t
from cpython.mem cimport PyMem_Malloc, PyMem_Free

import time

cdef extern from * nogil:
    int popcount "__builtin_popcountll"(unsigned long long)
    int ctz "__builtin_ctzll"(unsigned long long)

cdef enum:
    MAXN = 64
    MAXC = 16

FOUND = 1
EXHAUSTED = 0
OVER_BUDGET = 2
OVER_TIME = 3


cdef inline uint64_t _full(int n) nogil:
    if n >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return (<uint64_t>1 << n) - 1


cdef inline uint64_t _above(int w) nogil:
    # bits strictly above w
    if w >= 63:
        return 0
    return ~((<uint64_t>2 << w) - 1)


cdef bint _clique(const uint64_t* rows, uint64_t cand, int k) nogil:
    cdef uint64_t b
    cdef int v
    if k <= 0:
        return True
    if k == 1:
        return cand != 0
    while cand:
        if popcount(cand) < k:
            return False
        v = ctz(cand)
        b = (<uint64_t>1) << v
        cand ^= b
        if _clique(rows, cand & rows[v], k - 1):
            return True
    return False


cdef struct ForestCode:
    int total
    int isolated
    int edges
    int parent[MAXN]
    int after[MAXN]
    int nchild[MAXN]
    int nroots
    int rindex[MAXN]
    int rsize[MAXN]


cdef int _load_code(ForestCode* fc, object code) except -1:
    parent, after, nchild, total, isolated = code
    if total > MAXN:
        raise ValueError("forest too large for compiled kernel")
    fc.total = total
    fc.isolated = isolated
    fc.edges = 0
    for i in range(total):
        fc.parent[i] = parent[i]
        fc.after[i] = after[i]
        fc.nchild[i] = nchild[i]
        if parent[i] >= 0:
            fc.edges += 1
    # component orders by root; roots are listed largest component first
    fc.nroots = 0
    for i in range(total):
        fc.rindex[i] = -1
        if parent[i] < 0:
            fc.rindex[i] = fc.nroots
            fc.rsize[fc.nroots] = 0
            fc.nroots += 1
        fc.rsize[fc.nroots - 1] += 1
    return 0


cdef int _components(const uint64_t* rows, uint64_t unused, uint64_t* masks, int* caps) nogil:
    cdef uint64_t left = unused
    cdef uint64_t comp, frontier, nxt, f
    cdef int nc = 0
    while left:
        comp = left & (~left + 1)
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                nxt |= rows[ctz(f)]
                f &= f - 1
            frontier = nxt & unused & ~comp
            comp |= frontier
        masks[nc] = comp
        caps[nc] = popcount(comp)
        nc += 1
        left &= ~comp
    return nc


cdef bint _packs(const ForestCode* fc, int q, const int* caps, int nc) nogil:
    # a component with c free vertices holds at most c // s trees of order >= s
    cdef int t, h, s, fit
    for t in range(q, fc.nroots):
        if t + 1 < fc.nroots and fc.rsize[t + 1] == fc.rsize[t]:
            continue
        s = fc.rsize[t]
        fit = 0
        for h in range(nc):
            fit += caps[h] // s
        if fit < t - q + 1:
            return False
    return True


cdef bint _place(const uint64_t* rows, const ForestCode* fc, int* img, int i, uint64_t unused) nogil:
    cdef uint64_t cand, b, rest
    cdef int p, a, need, w, nc, q, h
    cdef uint64_t masks[MAXN]
    cdef int caps[MAXN]
    if i == fc.total:
        return popcount(unused) >= fc.isolated
    p = fc.parent[i]
    if p < 0:
        if popcount(unused) < fc.total - i + fc.isolated:
            return False
        nc = _components(rows, unused, masks, caps)
        q = fc.rindex[i]
        if not _packs(fc, q, caps, nc):
            return False
        cand = 0
        for h in range(nc):
            if caps[h] >= fc.rsize[q]:
                cand |= masks[h]
    else:
        cand = rows[img[p]] & unused
    a = fc.after[i]
    if a >= 0:
        cand &= _above(img[a])
    need = fc.nchild[i]
    while cand:
        w = ctz(cand)
        b = (<uint64_t>1) << w
        cand ^= b
        rest = unused ^ b
        if need and popcount(rows[w] & rest) < need:
            continue
        img[i] = w
        if _place(rows, fc, img, i + 1, rest):
            return True
    return False


cdef bint _embeds(const uint64_t* rows, int n, const ForestCode* fc) nogil:
    cdef int img[MAXN]
    if fc.total + fc.isolated > n:
        return False
    if fc.total == 0:
        return True
    return _place(rows, fc, img, 0, _full(n))


def clique_in(rows, cand, int k):
    cdef uint64_t r[MAXN]
    cdef int i
    for i in range(len(rows)):
        r[i] = rows[i]
    return _clique(r, <uint64_t>cand, k)


def embeds_forest(rows, int n, code):
    cdef uint64_t r[MAXN]
    cdef ForestCode fc
    cdef int i
    if n > MAXN:
        raise ValueError("graph too large for compiled kernel")
    for i in range(n):
        r[i] = rows[i]
    _load_code(&fc, code)
    return _embeds(r, n, &fc)


def edge_search(int n, rows0, edges, targets, bint collect_all=False,
                long long node_budget=-1, double deadline=0.0):
    cdef uint64_t rows[MAXC][MAXN]
    cdef ForestCode codes[MAXC]
    cdef int kinds[MAXC]
    cdef int ms[MAXC]
    cdef int counts[MAXC]
    cdef int ncol = len(targets)
    cdef int nedges = len(edges)
    cdef int c, u, v, pos, i
    cdef long long nodes = 0
    cdef long long prunes = 0
    cdef bint placed, bad
    cdef uint64_t bu, bv
    cdef uint64_t* r

    if ncol > MAXC or n > MAXN:
        raise ValueError("instance too large for compiled kernel")
    if nedges == 0:
        return FOUND, [()], 0, 0

    cdef int* eu = <int*>PyMem_Malloc(nedges * sizeof(int))
    cdef int* ev = <int*>PyMem_Malloc(nedges * sizeof(int))
    cdef int* col = <int*>PyMem_Malloc(nedges * sizeof(int))
    sols = []
    try:
        for c in range(ncol):
            counts[c] = 0
            for i in range(n):
                rows[c][i] = rows0[c][i]
                counts[c] += popcount(rows[c][i])
            counts[c] //= 2
            kind, m, code = targets[c]
            kinds[c] = kind
            ms[c] = m
            if kind == 1:
                _load_code(&codes[c], code)
        for i in range(nedges):
            eu[i] = edges[i][0]
            ev[i] = edges[i][1]
            col[i] = -1

        pos = 0
        while pos >= 0:
            if pos == nedges:
                sols.append(tuple([col[i] for i in range(nedges)]))
                if not collect_all:
                    return FOUND, sols, nodes, prunes
                pos -= 1
                continue
            u = eu[pos]
            v = ev[pos]
            bu = (<uint64_t>1) << u
            bv = (<uint64_t>1) << v
            c = col[pos]
            if c >= 0:
                rows[c][u] ^= bv
                rows[c][v] ^= bu
                counts[c] -= 1
            c += 1
            placed = False
            while c < ncol:
                nodes += 1
                if node_budget >= 0 and nodes > node_budget:
                    return OVER_BUDGET, sols, nodes, prunes
                if deadline > 0 and (nodes & 0xFFFF) == 0 and time.monotonic() > deadline:
                    return OVER_TIME, sols, nodes, prunes
                r = rows[c]
                r[u] |= bv
                r[v] |= bu
                counts[c] += 1
                if kinds[c] == 0:
                    if ms[c] <= 2:
                        bad = True
                    else:
                        bad = _clique(r, r[u] & r[v], ms[c] - 2)
                else:
                    bad = counts[c] >= ms[c] and _embeds(r, n, &codes[c])
                if not bad:
                    placed = True
                    break
                prunes += 1
                r[u] ^= bv
                r[v] ^= bu
                counts[c] -= 1
                c += 1
            if placed:
                col[pos] = c
                pos += 1
            else:
                col[pos] = -1
                pos -= 1
        return (FOUND if sols else EXHAUSTED), sols, nodes, prunes
    finally:
        PyMem_Free(eu)
        PyMem_Free(ev)
        PyMem_Free(col)

