# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled bit-parallel netlist simulation kernel.

Same contract as ``_simpy.simulate``: each uint64 word carries 64 independent
simulations, gates are evaluated in the given topological order, and DFFs
latch simultaneously once per cycle.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t
from libc.string cimport memcpy

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

cnp.import_array()

DEF K_AND2 = 0
DEF K_OR2 = 1
DEF K_XOR2 = 2
DEF K_NAND2 = 3
DEF K_NOR2 = 4
DEF K_INV = 5
DEF K_MUX2 = 6
DEF K_HA = 7
DEF K_FA = 8


cdef inline void _eval(const int32_t[:, ::1] ops, uint64_t* v, Py_ssize_t W) noexcept nogil:
    cdef Py_ssize_t g, w
    cdef int32_t kind
    cdef uint64_t* a
    cdef uint64_t* b
    cdef uint64_t* c
    cdef uint64_t* o
    cdef uint64_t* o2
    cdef uint64_t t
    for g in range(ops.shape[0]):
        kind = ops[g, 0]
        a = v + ops[g, 1] * W
        o = v + ops[g, 4] * W
        if kind == K_AND2:
            b = v + ops[g, 2] * W
            for w in range(W):
                o[w] = a[w] & b[w]
        elif kind == K_MUX2:
            b = v + ops[g, 2] * W
            c = v + ops[g, 3] * W
            for w in range(W):
                o[w] = a[w] ^ ((a[w] ^ b[w]) & c[w])
        elif kind == K_FA:
            b = v + ops[g, 2] * W
            c = v + ops[g, 3] * W
            o2 = v + ops[g, 5] * W
            for w in range(W):
                t = a[w] ^ b[w]
                o[w] = t ^ c[w]
                o2[w] = (a[w] & b[w]) | (t & c[w])
        elif kind == K_HA:
            b = v + ops[g, 2] * W
            o2 = v + ops[g, 5] * W
            for w in range(W):
                t = a[w]
                o[w] = t ^ b[w]
                o2[w] = t & b[w]
        elif kind == K_OR2:
            b = v + ops[g, 2] * W
            for w in range(W):
                o[w] = a[w] | b[w]
        elif kind == K_XOR2:
            b = v + ops[g, 2] * W
            for w in range(W):
                o[w] = a[w] ^ b[w]
        elif kind == K_INV:
            for w in range(W):
                o[w] = ~a[w]
        elif kind == K_NAND2:
            b = v + ops[g, 2] * W
            for w in range(W):
                o[w] = ~(a[w] & b[w])
        elif kind == K_NOR2:
            b = v + ops[g, 2] * W
            for w in range(W):
                o[w] = ~(a[w] | b[w])


cdef inline void _count(uint64_t* cur, uint64_t* prev, int64_t* toggles, Py_ssize_t n_nets, Py_ssize_t W) noexcept nogil:
    cdef Py_ssize_t i, w
    cdef int64_t acc
    for i in range(n_nets):
        acc = 0
        for w in range(W):
            acc += __builtin_popcountll(cur[i * W + w] ^ prev[i * W + w])
        toggles[i] += acc
    memcpy(prev, cur, n_nets * W * sizeof(uint64_t))


def simulate(const int32_t[:, ::1] ops, Py_ssize_t n_nets, const int32_t[::1] pi_nets,
             const uint64_t[:, :, ::1] stim, Py_ssize_t repeat, const int32_t[::1] po_nets,
             const int32_t[::1] dff_q, const int32_t[::1] dff_d, const uint8_t[::1] dff_init,
             bint count_toggles):
    cdef Py_ssize_t V = stim.shape[0]
    cdef Py_ssize_t P = stim.shape[1]
    cdef Py_ssize_t W = stim.shape[2]
    cdef Py_ssize_t Q = po_nets.shape[0]
    cdef Py_ssize_t F = dff_q.shape[0]
    cdef Py_ssize_t vi, r, p, q, f, w
    cdef bint started = False

    values_arr = np.zeros((n_nets, W), dtype=np.uint64)
    prev_arr = np.zeros((n_nets, W), dtype=np.uint64)
    latch_arr = np.zeros((max(F, 1), W), dtype=np.uint64)
    out_arr = np.zeros((V, Q, W), dtype=np.uint64)
    toggles_arr = np.zeros(n_nets, dtype=np.int64)
    cdef uint64_t[:, ::1] values = values_arr
    cdef uint64_t[:, ::1] prev = prev_arr
    cdef uint64_t[:, ::1] latch = latch_arr
    cdef uint64_t[:, :, ::1] out = out_arr
    cdef int64_t[::1] toggles = toggles_arr
    cdef uint64_t* v = &values[0, 0]

    with nogil:
        for w in range(W):
            values[1, w] = <uint64_t>(-1)
        for f in range(F):
            if dff_init[f]:
                for w in range(W):
                    values[dff_q[f], w] = <uint64_t>(-1)
        for vi in range(V):
            for p in range(P):
                for w in range(W):
                    values[pi_nets[p], w] = stim[vi, p, w]
            for r in range(repeat):
                if r == 0:
                    _eval(ops, v, W)
                    if count_toggles:
                        if started:
                            _count(v, &prev[0, 0], &toggles[0], n_nets, W)
                        else:
                            memcpy(&prev[0, 0], v, n_nets * W * sizeof(uint64_t))
                            started = True
                if F:
                    for f in range(F):
                        for w in range(W):
                            latch[f, w] = values[dff_d[f], w]
                    for f in range(F):
                        for w in range(W):
                            values[dff_q[f], w] = latch[f, w]
                    _eval(ops, v, W)
                    if count_toggles:
                        _count(v, &prev[0, 0], &toggles[0], n_nets, W)
            for q in range(Q):
                for w in range(W):
                    out[vi, q, w] = values[po_nets[q], w]
    return out_arr, toggles_arr
