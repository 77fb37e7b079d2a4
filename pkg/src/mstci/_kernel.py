"""Compiled MSTCI search: the include/exclude spanning-tree enumeration of
``trees.enumerate_spanning_trees`` with per-tree intersection counting inlined.

Tree order is identical to the Python enumerator, so "first minimizer" means
the same tree on both paths.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_BIG = np.int64(1) << 62


@njit(cache=True, nogil=True)
def _find(parent, x):
    while parent[x] != x:
        x = parent[x]
    return x


@njit(cache=True, nogil=True)
def _spans_from(n, k, j, eu, ev, parent, aux):
    # forest plus edges[j:] connected?
    need = n - k - 1
    if need == 0:
        return True
    for v in range(n):
        aux[v] = v
    m = eu.shape[0]
    for e in range(j, m):
        a = _find(parent, eu[e])
        b = _find(parent, ev[e])
        while aux[a] != a:
            aux[a] = aux[aux[a]]
            a = aux[a]
        while aux[b] != b:
            aux[b] = aux[aux[b]]
            b = aux[b]
        if a != b:
            aux[a] = b
            need -= 1
            if need == 0:
                return True
    return False


@njit(cache=True, nogil=True)
def _evaluate(n, eu, ev, choice, limit, tpos, nb, nbpos, tdeg, par, ppos, depth, queue, masks):
    """Intersection count of the current tree (capped at limit + 1) and its max degree."""
    m = eu.shape[0]
    for v in range(n):
        tdeg[v] = 0
    p = 0
    for e in range(m):
        if choice[e] == 1:
            u = eu[e]
            w = ev[e]
            nb[u, tdeg[u]] = w
            nbpos[u, tdeg[u]] = p
            tdeg[u] += 1
            nb[w, tdeg[w]] = u
            nbpos[w, tdeg[w]] = p
            tdeg[w] += 1
            tpos[e] = p
            p += 1
    maxd = 0
    for v in range(n):
        if tdeg[v] > maxd:
            maxd = tdeg[v]
        par[v] = -1
    par[0] = 0
    depth[0] = 0
    head = 0
    tail = 1
    queue[0] = 0
    while head < tail:
        x = queue[head]
        head += 1
        for d in range(tdeg[x]):
            y = nb[x, d]
            if par[y] == -1:
                par[y] = x
                ppos[y] = nbpos[x, d]
                depth[y] = depth[x] + 1
                queue[tail] = y
                tail += 1
    mu = 0
    for e in range(m):
        if choice[e] != 1:
            u = eu[e]
            w = ev[e]
            mask = np.int64(0)
            while depth[u] > depth[w]:
                mask |= np.int64(1) << ppos[u]
                u = par[u]
            while depth[w] > depth[u]:
                mask |= np.int64(1) << ppos[w]
                w = par[w]
            while u != w:
                mask |= (np.int64(1) << ppos[u]) | (np.int64(1) << ppos[w])
                u = par[u]
                w = par[w]
            masks[mu] = mask
            mu += 1
    c = 0
    for a in range(mu):
        ma = masks[a]
        for b in range(a + 1, mu):
            if ma & masks[b]:
                c += 1
        if c > limit:
            return limit + 1, maxd
    return c, maxd


@njit(cache=True, nogil=True)
def solve_kernel(n, eu, ev, collect, target_deg):
    """Exhaustive MSTCI search.

    Returns (best, trees_enumerated, minimizers, best_at_target) where
    ``minimizers`` rows are the tree edge indices of every optimal tree when
    ``collect`` is set (else the first one only), and ``best_at_target`` is the
    least count over trees whose maximum degree equals ``target_deg``
    (``_BIG`` when no such tree exists or ``target_deg < 0``).
    """
    m = eu.shape[0]
    parent = np.arange(n)
    size = np.ones(n, dtype=np.int64)
    aux = np.empty(n, dtype=np.int64)
    choice = np.zeros(m, dtype=np.int8)
    attached = np.full(m, -1, dtype=np.int64)
    tpos = np.zeros(m, dtype=np.int64)
    nb = np.zeros((n, n), dtype=np.int64)
    nbpos = np.zeros((n, n), dtype=np.int64)
    tdeg = np.zeros(n, dtype=np.int64)
    par = np.zeros(n, dtype=np.int64)
    ppos = np.zeros(n, dtype=np.int64)
    depth = np.zeros(n, dtype=np.int64)
    queue = np.zeros(n, dtype=np.int64)
    masks = np.zeros(max(m, 1), dtype=np.int64)

    best = _BIG
    best_target = _BIG
    count = 0
    cap = 16
    buf = np.empty((cap, n - 1), dtype=np.int64)
    nbuf = 0

    i = 0
    k = 0
    down = True
    while True:
        if down:
            if k == n - 1 or i == m:
                limit = best
                if target_deg >= 0 and best_target > limit:
                    limit = best_target
                if limit >= _BIG:
                    limit = _BIG - 1
                val, maxd = _evaluate(n, eu, ev, choice, limit, tpos, nb, nbpos,
                                      tdeg, par, ppos, depth, queue, masks)
                count += 1
                if maxd == target_deg and val < best_target:
                    best_target = val
                if val < best:
                    best = val
                    nbuf = 0
                if val == best and (collect or nbuf == 0):
                    if nbuf == cap:
                        cap *= 2
                        grown = np.empty((cap, n - 1), dtype=np.int64)
                        grown[:nbuf] = buf[:nbuf]
                        buf = grown
                    r = 0
                    for e in range(m):
                        if choice[e] == 1:
                            buf[nbuf, r] = e
                            r += 1
                    nbuf += 1
                down = False
                i -= 1
                continue
            ru = _find(parent, eu[i])
            rv = _find(parent, ev[i])
            if ru != rv:
                if size[ru] < size[rv]:
                    ru, rv = rv, ru
                parent[rv] = ru
                size[ru] += size[rv]
                attached[i] = rv
                choice[i] = 1
                k += 1
            else:
                choice[i] = 2
            i += 1
        else:
            if i < 0:
                break
            if choice[i] == 1:
                c = attached[i]
                size[parent[c]] -= size[c]
                parent[c] = c
                k -= 1
                if _spans_from(n, k, i + 1, eu, ev, parent, aux):
                    choice[i] = 2
                    i += 1
                    down = True
                else:
                    choice[i] = 0
                    i -= 1
            else:
                choice[i] = 0
                i -= 1
    return best, count, buf[:nbuf].copy(), best_target
