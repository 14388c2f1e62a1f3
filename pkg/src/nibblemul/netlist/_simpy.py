"""Pure-Python netlist simulation kernel.

Each net's lanes live in one Python ``int`` (64 lanes per input word), so the
bit-parallel semantics match the compiled kernel exactly.
"""

from __future__ import annotations

import numpy as np

from .core import GateKind

_AND2, _OR2, _XOR2, _NAND2, _NOR2, _INV, _MUX2, _HA, _FA = (int(k) for k in list(GateKind)[:9])


def _to_int(words: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(words, dtype="<u8").tobytes(), "little")


def _to_words(x: int, W: int) -> np.ndarray:
    return np.frombuffer(x.to_bytes(8 * W, "little"), dtype="<u8").astype(np.uint64)


def _eval(ops, v, mask):
    for kind, i0, i1, i2, o0, o1 in ops:
        if kind == _AND2:
            v[o0] = v[i0] & v[i1]
        elif kind == _MUX2:
            a = v[i0]
            v[o0] = a ^ ((a ^ v[i1]) & v[i2])
        elif kind == _FA:
            a, b, c = v[i0], v[i1], v[i2]
            t = a ^ b
            v[o0] = t ^ c
            v[o1] = (a & b) | (t & c)
        elif kind == _HA:
            a, b = v[i0], v[i1]
            v[o0] = a ^ b
            v[o1] = a & b
        elif kind == _OR2:
            v[o0] = v[i0] | v[i1]
        elif kind == _XOR2:
            v[o0] = v[i0] ^ v[i1]
        elif kind == _INV:
            v[o0] = v[i0] ^ mask
        elif kind == _NAND2:
            v[o0] = (v[i0] & v[i1]) ^ mask
        elif kind == _NOR2:
            v[o0] = (v[i0] | v[i1]) ^ mask


def _count(cur, prev, toggles):
    for i, (x, y) in enumerate(zip(cur, prev)):
        if x != y:
            toggles[i] += (x ^ y).bit_count()


def simulate(ops, n_nets, pi_nets, stim, repeat, po_nets, dff_q, dff_d, dff_init, count_toggles):
    V, P, W = stim.shape
    mask = (1 << (64 * W)) - 1
    ops = [tuple(int(x) for x in row) for row in ops]
    pi_nets = [int(x) for x in pi_nets]
    po_nets = [int(x) for x in po_nets]
    flops = [(int(q), int(d)) for q, d in zip(dff_q, dff_d)]

    v = [0] * n_nets
    v[1] = mask
    for (q, _), init in zip(flops, dff_init):
        if init:
            v[q] = mask
    toggles = [0] * n_nets
    prev = None
    out = np.zeros((V, len(po_nets), W), dtype=np.uint64)

    for vi in range(V):
        for p, net in enumerate(pi_nets):
            v[net] = _to_int(stim[vi, p])
        for r in range(repeat):
            if r == 0:
                _eval(ops, v, mask)
                if count_toggles:
                    if prev is not None:
                        _count(v, prev, toggles)
                    prev = list(v)
            if flops:
                latched = [v[d] for _, d in flops]
                for (q, _), x in zip(flops, latched):
                    v[q] = x
                _eval(ops, v, mask)
                if count_toggles:
                    _count(v, prev, toggles)
                    prev = list(v)
        for qi, net in enumerate(po_nets):
            out[vi, qi] = _to_words(v[net], W)
    return out, np.array(toggles, dtype=np.int64)
