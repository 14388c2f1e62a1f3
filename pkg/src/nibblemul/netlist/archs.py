"""Structural netlists for the five multiplier architectures.

Every netlist has the same ports: ``a`` (8N bits, element ``i`` at bits
``8i .. 8i+7``), ``b`` (8 bits) and ``p`` (16N bits).  Sequential designs start
from their reset state, expect ``a`` and ``b`` held for the whole job and
present results in output registers; after the per-design cycle count every
element's register holds its product.  Control is one-hot: a phase ring steps
through the cycles of one element and a slot ring through the elements.
"""

from __future__ import annotations

import math

from ..arith import MAX_VECTOR_LEN, ArchKind, InvalidJobError, vector_latency
from ..lut_array import SLICE_BITS, SLICES, build_res_string
from ..nibble import SEQUENTIAL, NibbleMode, NibbleSchedule
from .builder import NetlistBuilder
from .core import CONST0, CONST1, Netlist


def _ports(bld: NetlistBuilder, n: int):
    a = bld.add_input("a", 8 * n)
    b = bld.add_input("b", 8)
    return [a[8 * i: 8 * i + 8] for i in range(n)], b


def netlist_cycles(arch: ArchKind, n: int, mode: NibbleMode = SEQUENTIAL) -> int:
    """Cycles to step a netlist from reset before every output is valid."""
    if ArchKind(arch) is ArchKind.NIBBLE:
        return mode.cycles(n)
    return vector_latency(arch, n)


# -- shift-add ---------------------------------------------------------------

def build_shift_add(n: int) -> Netlist:
    bld = NetlistBuilder(f"shiftadd_n{n}")
    elems, b = _ports(bld, n)
    phase = bld.ring("phase", 8)
    slot = bld.ring("slot", n, advance=phase[-1])

    a_sel = bld.onehot_select(slot, elems)
    bit = bld.onehot_select(phase, [[x] for x in b])[0]
    acc = [bld.dff(f"acc_{k}") for k in range(16)]
    keep = bld.inv(phase[0])  # a fresh element starts from zero
    acc_in = bld.and_word(acc, keep)

    addend = bld.and_word(a_sel, bit)
    hi = bld.add_operands([(acc_in[8:], 0), (addend, 0)], 9)
    nxt = acc_in[1:8] + hi
    for q, d in zip(acc, nxt):
        bld.connect(q, d)

    outs = []
    for i in range(n):
        outs += bld.register(f"r{i}", nxt, en=bld.and2(slot[i], phase[-1]))
    bld.add_output("p", outs)
    return bld.build()


# -- radix-4 Booth -----------------------------------------------------------

def build_booth(n: int) -> Netlist:
    bld = NetlistBuilder(f"booth_n{n}")
    elems, b = _ports(bld, n)
    phase = bld.ring("phase", 4)
    slot = bld.ring("slot", n, advance=phase[-1])
    a_sel = bld.onehot_select(slot, elems)

    # digit j looks at b[2j+1], b[2j], b[2j-1]
    ext = [CONST0] + list(b)
    y0, y1, y2 = (bld.onehot_select(phase, [[ext[2 * j + off]] for j in range(4)])[0] for off in range(3))
    neg = bld.and2(y2, bld.nand2(y1, y0))
    one = bld.xor2(y1, y0)
    two = bld.or2(
        bld.and2(y2, bld.nor2(y1, y0)),
        bld.and2(bld.inv(y2), bld.and2(y1, y0)),
    )

    shifted = [[CONST0] * (2 * j) + a_sel + [CONST0] * (8 - 2 * j) for j in range(4)]
    m = bld.onehot_select(phase, shifted)
    x = [bld.or2(bld.and2(one, m[k]), bld.and2(two, m[k - 1] if k else CONST0)) for k in range(16)]
    y = [bld.xor2(xk, neg) for xk in x]

    acc = [bld.dff(f"acc_{k}") for k in range(16)]
    # unsigned correction a * 256 * b[7], preloaded on the first step
    corr = [CONST0] * 8 + bld.and_word(a_sel, b[7])
    acc_in = bld.mux_word(acc, corr, phase[0])
    total = bld.add_operands([(acc_in, 0), (y, 0), ([neg], 0)], 16)
    for q, d in zip(acc, total):
        bld.connect(q, d)

    outs = []
    for i in range(n):
        outs += bld.register(f"r{i}", total, en=bld.and2(slot[i], phase[-1]))
    bld.add_output("p", outs)
    return bld.build()


# -- Wallace -----------------------------------------------------------------

def wallace_unit(bld: NetlistBuilder, a: list[int], b: list[int]) -> list[int]:
    cols: list[list[int]] = [[] for _ in range(15)]
    for j in range(8):
        for i in range(8):
            cols[i + j].append(bld.and2(a[i], b[j]))
    return bld.add_columns(cols, 16)


def build_wallace(n: int) -> Netlist:
    bld = NetlistBuilder(f"wallace_n{n}")
    elems, b = _ports(bld, n)
    outs = []
    for a in elems:
        outs += wallace_unit(bld, a, b)
    bld.add_output("p", outs)
    return bld.build()


# -- LUT array ---------------------------------------------------------------

def lut_cone(bld: NetlistBuilder, truth: list[int], x: list[int]) -> int:
    """4-input constant function as literal leaves plus three MUX2 levels."""
    level = []
    for m in range(8):
        lo, hi = truth[2 * m], truth[2 * m + 1]
        level.append(bld.mux2(CONST1 if lo else CONST0, CONST1 if hi else CONST0, x[0]))
    for sel in x[1:]:
        level = [bld.mux2(level[2 * m], level[2 * m + 1], sel) for m in range(len(level) // 2)]
    return level[0]


def res_string_bits(bld: NetlistBuilder, nib: list[int]) -> list[int]:
    strings = [build_res_string(v) for v in range(16)]
    return [lut_cone(bld, [(s >> k) & 1 for s in strings], nib) for k in range(SLICE_BITS * SLICES)]


def slice_select(bld: NetlistBuilder, rs: list[int], a_nib: list[int]) -> list[int]:
    """Byte ``a`` of the result string (``a`` = 1..15) through a 16:1 MUX2 tree; zero for ``a`` = 0."""
    out = []
    for k in range(SLICE_BITS):
        level = [CONST0] + [rs[SLICE_BITS * (a - 1) + k] for a in range(1, 16)]
        for sel in a_nib:
            level = [bld.mux2(level[2 * m], level[2 * m + 1], sel) for m in range(len(level) // 2)]
        out.append(level[0])
    return out


def lm_unit(bld: NetlistBuilder, rs0: list[int], rs1: list[int], a16: list[int]) -> tuple[list[int], list[int]]:
    outs = []
    for byte in (a16[:8], a16[8:]):
        a_lo, a_hi = byte[:4], byte[4:]
        p0 = slice_select(bld, rs0, a_lo)
        p2 = slice_select(bld, rs1, a_lo)
        p1 = slice_select(bld, rs0, a_hi)
        p3 = slice_select(bld, rs1, a_hi)
        outs.append(bld.add_operands([(p0, 0), (p2, 4), (p1, 4), (p3, 8)], 16))
    return outs[0], outs[1]


def build_lut_array(n: int) -> Netlist:
    bld = NetlistBuilder(f"lutarray_n{n}")
    elems, b = _ports(bld, n)
    rs0 = res_string_bits(bld, b[:4])
    rs1 = res_string_bits(bld, b[4:])
    outs = []
    for k in range(0, n, 2):
        hi = elems[k + 1] if k + 1 < n else [CONST0] * 8
        out1, out2 = lm_unit(bld, rs0, rs1, elems[k] + hi)
        outs += out1
        if k + 1 < n:
            outs += out2
    bld.add_output("p", outs)
    return bld.build()


# -- nibble ------------------------------------------------------------------

def pl_terms(bld: NetlistBuilder, a: list[int], nib: list[int]) -> list[tuple[list[int], int]]:
    """The four gated, shifted copies of ``a`` that a PL configuration sums."""
    return [(bld.and_word(a, nib[i]), i) for i in range(4)]


def _lane_slots(n: int, lanes: int) -> list[list[int]]:
    return [list(range(lane, n, lanes)) for lane in range(min(lanes, n))]


def build_nibble_sequential(n: int, lanes: int = 1) -> Netlist:
    bld = NetlistBuilder(f"nibble_seq_n{n}_l{lanes}")
    elems, b = _ports(bld, n)
    slots = math.ceil(n / lanes)
    phase = bld.ring("phase", 2)
    slot = bld.ring("slot", slots, advance=phase[1])
    nib = bld.mux_word(b[:4], b[4:], phase[1])  # broadcast nibble, decoded once for all lanes

    outs: dict[int, list[int]] = {}
    for lane, members in enumerate(_lane_slots(n, lanes)):
        tag = f"lane{lane}_" if lanes > 1 else ""
        a_sel = bld.onehot_select(slot[: len(members)], [elems[i] for i in members])
        acc = [bld.dff(f"{tag}acc_{k}") for k in range(16)]
        # PL terms and the upper accumulator bits meet in one narrow carry-save adder
        hi_in = bld.and_word(acc[4:12], phase[1])
        s = bld.add_operands(pl_terms(bld, a_sel, nib) + [(hi_in, 0)], 12)
        low = bld.mux_word(s[:4], acc[:4], phase[1])
        high = bld.mux_word(s[4:] + [CONST0] * 4, s, phase[1])
        nxt = low + high
        for q, d in zip(acc, nxt):
            bld.connect(q, d)
        for j, i in enumerate(members):
            outs[i] = bld.register(f"r{i}", nxt, en=bld.and2(slot[j], phase[1]))
    bld.add_output("p", [net for i in range(n) for net in outs[i]])
    return bld.build()


def build_nibble_unrolled(n: int, lanes: int = 1) -> Netlist:
    bld = NetlistBuilder(f"nibble_unr_n{n}_l{lanes}")
    elems, b = _ports(bld, n)
    slots = math.ceil(n / lanes)
    slot = bld.ring("slot", slots)

    outs: dict[int, list[int]] = {}
    for lane, members in enumerate(_lane_slots(n, lanes)):
        a_sel = bld.onehot_select(slot[: len(members)], [elems[i] for i in members])
        lo = bld.add_operands(pl_terms(bld, a_sel, b[:4]), 12)
        hi = bld.add_operands(pl_terms(bld, a_sel, b[4:]), 12)
        prod = bld.add_operands([(lo, 0), (hi, 4)], 16)
        for j, i in enumerate(members):
            outs[i] = prod if slots == 1 else bld.register(f"r{i}", prod, en=slot[j])
    bld.add_output("p", [net for i in range(n) for net in outs[i]])
    return bld.build()


def build_netlist(arch: ArchKind, n: int, mode: NibbleMode = SEQUENTIAL) -> Netlist:
    """Gate-level netlist for ``arch`` processing ``n``-element vector jobs."""
    arch = ArchKind(arch)
    if not 1 <= n <= MAX_VECTOR_LEN:
        raise InvalidJobError(f"unsupported vector length {n} for {arch.value}")
    if arch is ArchKind.SHIFT_ADD:
        return build_shift_add(n)
    if arch is ArchKind.BOOTH:
        return build_booth(n)
    if arch is ArchKind.WALLACE:
        return build_wallace(n)
    if arch is ArchKind.LUT_ARRAY:
        return build_lut_array(n)
    if mode.mode is NibbleSchedule.SEQUENTIAL:
        return build_nibble_sequential(n, mode.lanes)
    return build_nibble_unrolled(n, mode.lanes)
