"""Pure-Python versions of the Morse kernels.

Same signatures and results as the compiled ``_ckernels`` module.  All
arguments are positional int64 arrays (CSR for adjacency); results are
returned as numpy int64 arrays.
"""

from __future__ import annotations

import heapq
from collections import deque

import numpy as np

_UNMARKED, _CRITICAL, _MATCHED = 0, 1, 2


def greedy_matching(dims, filt, bd_ptr, bd_idx, cb_ptr, cb_idx, same_level):
    """Acyclic matching by marking critical cells and draining unique-face cofaces.

    A cell becomes critical when it is the lowest-dimensional unmarked cell
    (ties: first in position order).  After each such marking, every
    unmarked cell with exactly one unmarked face is matched with that face,
    until none is left.  With ``same_level`` only faces at the coface's
    filtration value are counted, so every pair shares a filtration value.
    Returns ``mate``: the partner position of each cell, or -1.
    """
    n = len(dims)
    dims = np.asarray(dims).tolist()
    filt = np.asarray(filt).tolist()
    bp = np.asarray(bd_ptr).tolist()
    bi = np.asarray(bd_idx).tolist()
    cp = np.asarray(cb_ptr).tolist()
    ci = np.asarray(cb_idx).tolist()

    state = [_UNMARKED] * n
    mate = [-1] * n
    count = [0] * n
    for a in range(n):
        if same_level:
            fa = filt[a]
            count[a] = sum(1 for f in bi[bp[a]:bp[a + 1]] if filt[f] == fa)
        else:
            count[a] = bp[a + 1] - bp[a]
    queue = deque(a for a in range(n) if count[a] == 1)

    def mark(x):
        fx = filt[x]
        for a in ci[cp[x]:cp[x + 1]]:
            if same_level and filt[a] != fx:
                continue
            count[a] -= 1
            if count[a] == 1 and state[a] == _UNMARKED:
                queue.append(a)

    order = sorted(range(n), key=dims.__getitem__)
    for x in order:
        if state[x] != _UNMARKED:
            continue
        state[x] = _CRITICAL
        mark(x)
        while queue:
            a = queue.popleft()
            if state[a] != _UNMARKED or count[a] != 1:
                continue
            fa = filt[a]
            b = -1
            for f in bi[bp[a]:bp[a + 1]]:
                if state[f] == _UNMARKED and (not same_level or filt[f] == fa):
                    b = f
                    break
            state[a] = state[b] = _MATCHED
            mate[a] = b
            mate[b] = a
            mark(b)
            mark(a)
    return np.array(mate, dtype=np.int64)


def morse_graph(dims, bd_ptr, bd_idx, mate):
    """Out-edges of the Morse graph: faces, except a matched face; plus a matched coface."""
    dims = np.asarray(dims).tolist()
    bp = np.asarray(bd_ptr).tolist()
    bi = np.asarray(bd_idx).tolist()
    mate = np.asarray(mate).tolist()
    n = len(dims)
    ptr = [0] * (n + 1)
    out = []
    for v in range(n):
        m = mate[v]
        for f in bi[bp[v]:bp[v + 1]]:
            if f != m:
                out.append(f)
        if m >= 0 and dims[m] > dims[v]:
            out.append(m)
        ptr[v + 1] = len(out)
    return np.array(ptr, dtype=np.int64), np.array(out, dtype=np.int64)


def topological_order(out_ptr, out_idx):
    """Kahn's algorithm; the result is shorter than ``n`` iff there is a cycle."""
    op = np.asarray(out_ptr).tolist()
    oi = np.asarray(out_idx).tolist()
    n = len(op) - 1
    indeg = [0] * n
    for w in oi:
        indeg[w] += 1
    queue = deque(v for v in range(n) if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in oi[op[v]:op[v + 1]]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return np.array(order, dtype=np.int64)


def morse_sweeps(out_ptr, out_idx, dims, rank, critical, sources):
    """Mod-2 path counts from each source to critical cells one dimension down.

    ``rank`` is each vertex's index in a topological order.  Vertices are
    visited in that order, only those reachable with an odd running count
    are expanded, and cells more than one dimension below the source are
    pruned (no V-path returns from them to a critical cell).  Returns the
    Morse boundaries of the sources as CSR over positions, rows sorted.
    """
    op = np.asarray(out_ptr).tolist()
    oi = np.asarray(out_idx).tolist()
    dims = np.asarray(dims).tolist()
    rank = np.asarray(rank).tolist()
    critical = np.asarray(critical).tolist()
    res_ptr = [0]
    res_idx = []
    for s in np.asarray(sources).tolist():
        lo = dims[s] - 1
        parity = {}
        heap = []
        for w in oi[op[s]:op[s + 1]]:
            if dims[w] >= lo:
                if w in parity:
                    parity[w] ^= 1
                else:
                    parity[w] = 1
                    heapq.heappush(heap, (rank[w], w))
        found = []
        while heap:
            _, v = heapq.heappop(heap)
            if not parity.pop(v):
                continue
            if critical[v]:
                if dims[v] == lo:
                    found.append(v)
                continue
            for w in oi[op[v]:op[v + 1]]:
                if dims[w] >= lo:
                    if w in parity:
                        parity[w] ^= 1
                    else:
                        parity[w] = 1
                        heapq.heappush(heap, (rank[w], w))
        found.sort()
        res_idx.extend(found)
        res_ptr.append(len(res_idx))
    return np.array(res_ptr, dtype=np.int64), np.array(res_idx, dtype=np.int64)
