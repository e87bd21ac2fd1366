"""Compiled inner loop for repeated extreme-set searches.

Each iteration grows ``U`` from the start vertex by the minimum-weight cut
edge (Prim order on random weights), skipping endpoints that are too heavy,
and stops at ``|U| = t`` or ``deg(U) < j``.  The weight of edge ``{a, b}`` in
iteration ``it`` is ``hash_words(key, it, min(a, b), max(a, b))``; ties fall
back to ``(lo, hi)``.  Must agree bit-for-bit with ``kconn.search_once``.
"""
from __future__ import annotations

import numpy as np
from numba import njit, uint64

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)


@njit(cache=True)
def _mix64(z):
    z = z + _GOLDEN
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True)
def _weight(head, lo, hi):
    # head = _mix64(key ^ it), shared by every edge of one iteration
    return _mix64(_mix64(head ^ uint64(lo)) ^ uint64(hi))


@njit(cache=True)
def _less(e_w, e_lo, e_hi, a, b):
    if e_w[a] != e_w[b]:
        return e_w[a] < e_w[b]
    if e_lo[a] != e_lo[b]:
        return e_lo[a] < e_lo[b]
    return e_hi[a] < e_hi[b]


@njit(cache=True)
def _push(heap, size, e, e_w, e_lo, e_hi):
    i = size
    heap[i] = e
    while i > 0:
        parent = (i - 1) // 2
        if _less(e_w, e_lo, e_hi, heap[i], heap[parent]):
            heap[i], heap[parent] = heap[parent], heap[i]
            i = parent
        else:
            break
    return size + 1


@njit(cache=True)
def _pop(heap, size, e_w, e_lo, e_hi):
    top = heap[0]
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        child = left
        if left + 1 < size and _less(e_w, e_lo, e_hi, heap[left + 1], heap[left]):
            child = left + 1
        if _less(e_w, e_lo, e_hi, heap[child], heap[i]):
            heap[i], heap[child] = heap[child], heap[i]
            i = child
        else:
            break
    return top, size


@njit(cache=True)
def first_candidate(indptr, indices, gid, expandable, deg, start, key,
                    it_begin, it_end, t, j, members):
    """Run iterations ``it_begin..it_end-1``; return ``(it, size)`` of the first
    iteration that stops with ``deg(U) == j - 1`` (members written to
    ``members``), or ``(-1, 0)``.

    Cut edges sit in a binary heap; entries whose far end already joined U
    (or can never join) are dropped when they surface.
    """
    nloc = gid.shape[0]
    stamp = np.zeros(nloc, dtype=np.int64)
    cap = 0
    for x in range(nloc):
        cap += indptr[x + 1] - indptr[x]
    e_tgt = np.empty(cap + 1, dtype=np.int64)
    e_w = np.empty(cap + 1, dtype=np.uint64)
    e_lo = np.empty(cap + 1, dtype=np.int64)
    e_hi = np.empty(cap + 1, dtype=np.int64)
    heap = np.empty(cap + 1, dtype=np.int64)
    for it in range(it_begin, it_end):
        mark = it + 1
        head = _mix64(key ^ uint64(it))
        stamp[start] = mark
        members[0] = start
        size = 1
        deg_u = deg[start]
        nb = 0
        hsize = 0
        w = start
        dead = False
        while True:
            gw = gid[w]
            inside = 0
            for p in range(indptr[w], indptr[w + 1]):
                y = indices[p]
                if stamp[y] == mark:
                    inside += 1
                elif expandable[y]:
                    gy = gid[y]
                    lo = gw if gw < gy else gy
                    hi = gy if gw < gy else gw
                    e_tgt[nb] = y
                    e_w[nb] = _weight(head, lo, hi)
                    e_lo[nb] = lo
                    e_hi[nb] = hi
                    hsize = _push(heap, hsize, nb, e_w, e_lo, e_hi)
                    nb += 1
            if w != start:
                deg_u += deg[w] - 2 * inside
            if deg_u < j or size >= t:
                break
            w = -1
            while hsize > 0:
                e, hsize = _pop(heap, hsize, e_w, e_lo, e_hi)
                if stamp[e_tgt[e]] != mark:
                    w = e_tgt[e]
                    break
            if w == -1:
                dead = True
                break
            stamp[w] = mark
            members[size] = w
            size += 1
        if not dead and deg_u == j - 1:
            return it, size
    return -1, 0


@njit(cache=True)
def reverse_arcs(indptr, indices):
    """``rev[p]`` is the index of arc ``v -> u`` for arc ``p = u -> v``."""
    n = indptr.shape[0] - 1
    rev = np.full(indices.shape[0], -1, dtype=np.int64)
    for u in range(n):
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            for q in range(indptr[v], indptr[v + 1]):
                if indices[q] == u:
                    rev[p] = q
                    break
    return rev


@njit(cache=True)
def _paths(indptr, indices, rev, flow, parent, stamp, mark, in_s, sources, ns, sink, need):
    """Edge-disjoint paths from the source set to ``sink``, counted up to ``need``."""
    flow[:] = 0
    queue = np.empty(indptr.shape[0], dtype=np.int64)
    found = 0
    while found < need:
        mark += 1
        head, tail = 0, 0
        for i in range(ns):
            queue[tail] = sources[i]
            tail += 1
            stamp[sources[i]] = mark
        reached = False
        while head < tail and not reached:
            u = queue[head]
            head += 1
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if stamp[v] == mark or in_s[v] or flow[p] >= 1:
                    continue
                stamp[v] = mark
                parent[v] = p
                if v == sink:
                    reached = True
                    break
                queue[tail] = v
                tail += 1
        if not reached:
            break
        v = sink
        while not in_s[v]:
            p = parent[v]
            flow[p] += 1
            flow[rev[p]] -= 1
            v = indices[rev[p]]
        found += 1
    return found, mark


@njit(cache=True)
def no_small_set(indptr, indices, rev, start, j, t, tries):
    """True if no vertex set of size <= t containing ``start`` has cut < j.

    Grows a forced set S from ``start``: a vertex joined to S by j edge-disjoint
    paths lies in every such set.  Once |S| > t none can exist.  Gives up
    (False) after ``tries`` sinks that fail the test.
    """
    n = indptr.shape[0] - 1
    flow = np.zeros(indices.shape[0], dtype=np.int64)
    parent = np.zeros(n, dtype=np.int64)
    stamp = np.zeros(n, dtype=np.int64)
    in_s = np.zeros(n, dtype=np.bool_)
    sources = np.empty(t + 1, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    order[0] = start
    seen[start] = True
    tail = 1
    in_s[start] = True
    sources[0] = start
    ns = 1
    mark = 0
    misses = 0
    head = 0
    while head < tail:
        z = order[head]
        head += 1
        for p in range(indptr[z], indptr[z + 1]):
            y = indices[p]
            if not seen[y]:
                seen[y] = True
                order[tail] = y
                tail += 1
        if in_s[z]:
            continue
        got, mark = _paths(indptr, indices, rev, flow, parent, stamp, mark, in_s,
                           sources, ns, z, j)
        if got >= j:
            in_s[z] = True
            sources[ns] = z
            ns += 1
            if ns > t:
                return True
        else:
            misses += 1
            if misses > tries:
                return False
    return False
