"""Single-cycle LUT-based array multiplier.

Each nibble value ``b`` owns a 120-bit result string holding the fifteen
products ``1*b .. 15*b`` as 8-bit slices, slice ``a`` at bits ``8(a-1)..8a-1``.
A Lookup Multiplier (LM) takes a 16-bit A word (two packed 8-bit elements)
and the two result strings selected by B's nibbles, pulls four slices per
element and composes them with fixed shifts.  Wider vectors replicate LMs;
the two result strings are looked up once per job and shared by every LM.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .arith import ArchKind, InvalidJobError, VectorJob, check_nibble, check_operand, split_nibbles
from .trace import CycleTrace

SLICE_BITS = 8
SLICES = 15
RES_STRING_BITS = SLICE_BITS * SLICES
_SLICE_MASK = (1 << SLICE_BITS) - 1


def build_res_string(b: int) -> int:
    """120-bit string whose slice ``a`` (1..15) equals ``a * b``."""
    check_nibble(b)
    s = 0
    for a in range(1, SLICES + 1):
        s |= (a * b) << (SLICE_BITS * (a - 1))
    return s


def extract_slice(s: int, a: int) -> int:
    """Bits ``[8(a-1), 8a)`` of ``s``; zero for ``a == 0``."""
    check_nibble(a)
    if a == 0:
        return 0
    return (s >> (SLICE_BITS * (a - 1))) & _SLICE_MASK


class HexLut:
    """The 16-entry table of result strings, indexed by a B nibble.  Immutable."""

    __slots__ = ("_entries",)

    def __init__(self):
        self._entries = tuple(build_res_string(b) for b in range(16))

    @property
    def entries(self) -> tuple[int, ...]:
        return self._entries

    def __getitem__(self, b: int) -> int:
        return self._entries[check_nibble(b)]

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def storage_bits(self) -> int:
        return len(self._entries) * RES_STRING_BITS

    def slice_table(self) -> np.ndarray:
        """``table[b, a] == extract_slice(self[b], a)``, as a 16x16 array."""
        t = np.zeros((16, 16), dtype=np.int64)
        for b, s in enumerate(self._entries):
            for a in range(16):
                t[b, a] = extract_slice(s, a)
        return t


DEFAULT_LUT = HexLut()


class LmInput(NamedTuple):
    a16: int
    b: int


class LmOutput(NamedTuple):
    out1: int
    out2: int


def _compose(rs0: int, rs1: int, a_lo: int, a_hi: int) -> int:
    p0 = extract_slice(rs0, a_lo)
    p2 = extract_slice(rs1, a_lo)
    p1 = extract_slice(rs0, a_hi)
    p3 = extract_slice(rs1, a_hi)
    return p0 + (p2 << 4) + (p1 << 4) + (p3 << 8)


def lm_multiply(inp: LmInput, lut: HexLut = DEFAULT_LUT, strings: tuple[int, int] | None = None) -> LmOutput:
    """Multiply both bytes of ``inp.a16`` by ``inp.b`` with one LM.

    ``strings`` lets a caller pass result strings it already looked up, which
    is how a replicated array shares one lookup across all of its LMs.
    """
    if not 0 <= inp.a16 <= 0xFFFF:
        raise InvalidJobError(f"LM A word out of range: {inp.a16}")
    check_operand(inp.b)
    if strings is None:
        b0, b1 = split_nibbles(inp.b)
        strings = (lut[b0], lut[b1])
    rs0, rs1 = strings
    a = inp.a16
    return LmOutput(
        _compose(rs0, rs1, a & 0xF, (a >> 4) & 0xF),
        _compose(rs0, rs1, (a >> 8) & 0xF, (a >> 12) & 0xF),
    )


@dataclass
class LutArrayRun:
    products: list[int]
    cycles: int
    lookups: int
    lm_blocks: int
    trace: CycleTrace


def run_lut_array(job: VectorJob, lut: HexLut = DEFAULT_LUT) -> LutArrayRun:
    """Evaluate a job on ``ceil(N/2)`` replicated LMs in a single cycle."""
    lo, hi = split_nibbles(job.b)
    strings = (lut[lo], lut[hi])
    lookups = 2
    ops = list(job.a_ops)
    if len(ops) % 2:
        ops.append(0)  # padded high byte; its out2 is dropped
    products: list[int] = []
    for k in range(0, len(ops), 2):
        out = lm_multiply(LmInput(ops[k] | (ops[k + 1] << 8), job.b), lut, strings)
        products.extend(out)
    products = products[: job.n]

    trace = CycleTrace(ArchKind.LUT_ARRAY, job.n)
    for i, a in enumerate(job.a_ops):
        trace.add(1, i, "load", a, job.b)
    for i, p in enumerate(products):
        trace.add(1, i, "write_output", p, job.b)
    return LutArrayRun(products, 1, lookups, len(ops) // 2, trace)


def lut_array_multiply(job: VectorJob) -> list[int]:
    return run_lut_array(job).products


def lut_products(a, b, lut: HexLut = DEFAULT_LUT):
    """Elementwise LM composition over integer arrays ``a`` and ``b``."""
    table = lut.slice_table()
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a0, a1 = split_nibbles(a)
    b0, b1 = split_nibbles(b)
    return table[b0, a0] + (table[b1, a0] << 4) + (table[b0, a1] << 4) + (table[b1, a1] << 8)
