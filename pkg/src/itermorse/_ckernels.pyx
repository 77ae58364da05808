# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled Morse kernels.  Mirrors ``_pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t
from libcpp.vector cimport vector
from libcpp.deque cimport deque
from libcpp.queue cimport priority_queue
from libcpp.pair cimport pair
from libcpp.algorithm cimport sort as cpp_sort

cnp.import_array()


cdef inline void _mark(int64_t x, bint same_level, const int64_t* filt,
                       const int64_t* cp, const int64_t* ci,
                       int64_t* count, uint8_t* state, deque[int64_t]& queue) noexcept nogil:
    cdef int64_t k, a
    for k in range(cp[x], cp[x + 1]):
        a = ci[k]
        if same_level and filt[a] != filt[x]:
            continue
        count[a] -= 1
        if count[a] == 1 and state[a] == 0:
            queue.push_back(a)


def greedy_matching(const int64_t[::1] dims, const int64_t[::1] filt, const int64_t[::1] bd_ptr, const int64_t[::1] bd_idx,
                    const int64_t[::1] cb_ptr, const int64_t[::1] cb_idx, bint same_level):
    cdef Py_ssize_t n = dims.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] mate_arr = np.full(n, -1, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] count_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[uint8_t, ndim=1] state_arr = np.zeros(n, dtype=np.uint8)
    cdef int64_t[::1] mate = mate_arr
    cdef int64_t[::1] count = count_arr
    cdef uint8_t[::1] state = state_arr
    cdef int64_t[::1] order = np.argsort(np.asarray(dims), kind="stable").astype(np.int64)
    cdef deque[int64_t] queue
    cdef int64_t a, b, f, k, x, c
    cdef Py_ssize_t t
    cdef const int64_t* fp = &filt[0] if n else NULL
    cdef const int64_t* cpp = &cb_ptr[0]
    cdef const int64_t* cip = &cb_idx[0] if cb_idx.shape[0] else NULL
    with nogil:
        for a in range(n):
            if same_level:
                c = 0
                for k in range(bd_ptr[a], bd_ptr[a + 1]):
                    if filt[bd_idx[k]] == filt[a]:
                        c += 1
                count[a] = c
            else:
                count[a] = bd_ptr[a + 1] - bd_ptr[a]
            if count[a] == 1:
                queue.push_back(a)
        for t in range(n):
            x = order[t]
            if state[x] != 0:
                continue
            state[x] = 1
            _mark(x, same_level, fp, cpp, cip, &count[0], &state[0], queue)
            while not queue.empty():
                a = queue.front()
                queue.pop_front()
                if state[a] != 0 or count[a] != 1:
                    continue
                b = -1
                for k in range(bd_ptr[a], bd_ptr[a + 1]):
                    f = bd_idx[k]
                    if state[f] == 0 and (not same_level or filt[f] == filt[a]):
                        b = f
                        break
                state[a] = 2
                state[b] = 2
                mate[a] = b
                mate[b] = a
                _mark(b, same_level, fp, cpp, cip, &count[0], &state[0], queue)
                _mark(a, same_level, fp, cpp, cip, &count[0], &state[0], queue)
    return mate_arr


def morse_graph(const int64_t[::1] dims, const int64_t[::1] bd_ptr, const int64_t[::1] bd_idx, const int64_t[::1] mate):
    cdef Py_ssize_t n = dims.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] ptr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] out_arr = np.empty(bd_idx.shape[0], dtype=np.int64)
    cdef int64_t[::1] ptr = ptr_arr
    cdef int64_t[::1] out = out_arr
    cdef int64_t v, k, f, m, e = 0
    with nogil:
        for v in range(n):
            m = mate[v]
            for k in range(bd_ptr[v], bd_ptr[v + 1]):
                f = bd_idx[k]
                if f != m:
                    out[e] = f
                    e += 1
            if m >= 0 and dims[m] > dims[v]:
                out[e] = m
                e += 1
            ptr[v + 1] = e
    return ptr_arr, out_arr[:e].copy()


def topological_order(const int64_t[::1] out_ptr, const int64_t[::1] out_idx):
    cdef Py_ssize_t n = out_ptr.shape[0] - 1
    cdef cnp.ndarray[int64_t, ndim=1] indeg_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] order_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] indeg = indeg_arr
    cdef int64_t[::1] order = order_arr
    cdef Py_ssize_t head = 0, tail = 0, k
    cdef int64_t v, w
    with nogil:
        for k in range(out_idx.shape[0]):
            indeg[out_idx[k]] += 1
        for v in range(n):
            if indeg[v] == 0:
                order[tail] = v
                tail += 1
        while head < tail:
            v = order[head]
            head += 1
            for k in range(out_ptr[v], out_ptr[v + 1]):
                w = out_idx[k]
                indeg[w] -= 1
                if indeg[w] == 0:
                    order[tail] = w
                    tail += 1
    return order_arr[:tail].copy()


def morse_sweeps(const int64_t[::1] out_ptr, const int64_t[::1] out_idx, const int64_t[::1] dims, const int64_t[::1] rank,
                 const uint8_t[::1] critical, const int64_t[::1] sources):
    cdef Py_ssize_t n = dims.shape[0]
    cdef Py_ssize_t ns = sources.shape[0]
    cdef vector[uint8_t] parity = vector[uint8_t](n, 0)
    cdef vector[uint8_t] seen = vector[uint8_t](n, 0)
    # max-heap on (-rank, vertex) gives increasing topological rank
    cdef priority_queue[pair[int64_t, int64_t]] heap
    cdef vector[int64_t] found
    cdef vector[int64_t] res_idx
    cdef cnp.ndarray[int64_t, ndim=1] res_ptr_arr = np.zeros(ns + 1, dtype=np.int64)
    cdef int64_t[::1] res_ptr = res_ptr_arr
    cdef Py_ssize_t t
    cdef int64_t s, v, w, k, lo
    with nogil:
        for t in range(ns):
            s = sources[t]
            lo = dims[s] - 1
            found.clear()
            for k in range(out_ptr[s], out_ptr[s + 1]):
                w = out_idx[k]
                if dims[w] >= lo:
                    parity[w] ^= 1
                    if not seen[w]:
                        seen[w] = 1
                        heap.push(pair[int64_t, int64_t](-rank[w], w))
            while not heap.empty():
                v = heap.top().second
                heap.pop()
                seen[v] = 0
                if not parity[v]:
                    continue
                parity[v] = 0
                if critical[v]:
                    if dims[v] == lo:
                        found.push_back(v)
                    continue
                for k in range(out_ptr[v], out_ptr[v + 1]):
                    w = out_idx[k]
                    if dims[w] >= lo:
                        parity[w] ^= 1
                        if not seen[w]:
                            seen[w] = 1
                            heap.push(pair[int64_t, int64_t](-rank[w], w))
            cpp_sort(found.begin(), found.end())
            for k in range(<int64_t>found.size()):
                res_idx.push_back(found[k])
            res_ptr[t + 1] = res_idx.size()
    cdef cnp.ndarray[int64_t, ndim=1] res = np.empty(res_idx.size(), dtype=np.int64)
    for k in range(<int64_t>res_idx.size()):
        res[k] = res_idx[k]
    return res_ptr_arr, res
