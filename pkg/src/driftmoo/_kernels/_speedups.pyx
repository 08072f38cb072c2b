# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: non-dominated sorting, crowding, rmnk evaluation."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def front_ranks(values):
    """Front index per row (0 = non-dominated) under minimization."""
    cdef const double[:, ::1] f = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = f.shape[0], m = f.shape[1]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] ranks = np.full(n, -1, dtype=np.int32)
    cdef int[::1] rv = ranks
    if n == 0:
        return ranks

    dom_np = np.zeros(n * n, dtype=np.uint8)
    cdef unsigned char[::1] dom = dom_np
    ndom_np = np.zeros(n, dtype=np.int64)
    cdef long long[::1] n_dom = ndom_np
    cdef Py_ssize_t i, j, k
    cdef bint le, lt, ge, gt

    for i in range(n):
        for j in range(i + 1, n):
            le = True
            lt = False
            ge = True
            gt = False
            for k in range(m):
                if f[i, k] < f[j, k]:
                    ge = False
                    lt = True
                elif f[i, k] > f[j, k]:
                    le = False
                    gt = True
                if not le and not ge:
                    break
            if le and lt:
                dom[i * n + j] = 1
                n_dom[j] += 1
            elif ge and gt:
                dom[j * n + i] = 1
                n_dom[i] += 1

    frontier_np = np.empty(n, dtype=np.int64)
    cdef long long[::1] frontier = frontier_np
    nxt_np = np.empty(n, dtype=np.int64)
    cdef long long[::1] nxt = nxt_np
    cdef Py_ssize_t n_front = 0, n_next, level = 0, assigned = 0

    for i in range(n):
        if n_dom[i] == 0:
            frontier[n_front] = i
            n_front += 1
    while n_front > 0:
        n_next = 0
        for k in range(n_front):
            i = frontier[k]
            rv[i] = <int>level
            assigned += 1
        for k in range(n_front):
            i = frontier[k]
            for j in range(n):
                if dom[i * n + j]:
                    n_dom[j] -= 1
                    if n_dom[j] == 0:
                        nxt[n_next] = j
                        n_next += 1
        for k in range(n_next):
            frontier[k] = nxt[k]
        n_front = n_next
        level += 1
    return ranks


def crowding(values):
    """Crowding distance over the rows of one front."""
    f_np = np.ascontiguousarray(values, dtype=np.float64)
    cdef const double[:, ::1] f = f_np
    cdef Py_ssize_t n = f.shape[0], m = f.shape[1]
    if n <= 2:
        return np.full(n, np.inf)
    out_np = np.zeros(n, dtype=np.float64)
    cdef double[::1] d = out_np
    cdef Py_ssize_t j, t
    cdef double span
    cdef const long long[::1] order
    for j in range(m):
        order_np = np.argsort(f_np[:, j], kind="stable").astype(np.int64)
        order = order_np
        span = f[order[n - 1], j] - f[order[0], j]
        if span <= 0.0:
            continue
        d[order[0]] = float("inf")
        d[order[n - 1]] = float("inf")
        for t in range(1, n - 1):
            d[order[t]] += (f[order[t + 1], j] - f[order[t - 1], j]) / span
    return out_np


def rmnk_eval(tables, links, genomes, objectives):
    """Mean contribution-table lookup per genome for the selected objectives."""
    cdef const double[:, :, ::1] tab = np.ascontiguousarray(tables, dtype=np.float64)
    cdef const int[:, ::1] lk = np.ascontiguousarray(links, dtype=np.int32)
    cdef const signed char[:, ::1] x = np.ascontiguousarray(genomes, dtype=np.int8)
    cdef const long long[::1] objs = np.ascontiguousarray(objectives, dtype=np.int64)
    cdef Py_ssize_t n_gen = x.shape[0], n_pos = lk.shape[0]
    cdef Py_ssize_t deg = lk.shape[1], n_obj = objs.shape[0]
    out_np = np.empty((n_gen, n_obj), dtype=np.float64)
    cdef double[:, ::1] out = out_np
    cdef Py_ssize_t g, p, j, c
    cdef long long idx
    cdef double acc
    for g in range(n_gen):
        for c in range(n_obj):
            out[g, c] = 0.0
        for p in range(n_pos):
            idx = 0
            for j in range(deg):
                idx |= (<long long>x[g, lk[p, j]]) << j
            for c in range(n_obj):
                out[g, c] += tab[objs[c], p, idx]
        for c in range(n_obj):
            out[g, c] /= n_pos
    return out_np
