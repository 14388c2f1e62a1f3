"""Comparison multipliers: sequential shift-add, radix-4 Booth, and a Wallace tree.

The shift-add and Booth engines step one clock cycle at a time and record a
trace; their ``*_products`` twins run the same per-cycle recurrence over numpy
arrays so that exhaustive sweeps stay cheap.  The Wallace model works on the
explicit 8x8 partial-product matrix and never calls a wide multiply.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import ArchKind, VectorJob, check_operand
from .compress import dadda_reduce, ripple_columns
from .trace import CycleTrace

SHIFT_ADD_STEPS = 8
BOOTH_STEPS = 4
BOOTH_ACC_BITS = 18


# -- shift-add -------------------------------------------------------------

def shift_add_step(acc, a, b, i):
    """One cycle of the right-shifting accumulator: add ``a`` to the high byte
    when multiplier bit ``i`` is set, then shift the 16-bit register right."""
    hi = (acc >> 8) + ((b >> i) & 1) * a
    return (hi << 7) | ((acc & 0xFF) >> 1)


@dataclass
class ShiftAddState:
    multiplicand: int
    multiplier: int
    acc: int = 0
    bit_index: int = 0

    @property
    def done(self) -> bool:
        return self.bit_index == SHIFT_ADD_STEPS

    def step(self) -> None:
        self.acc = shift_add_step(self.acc, self.multiplicand, self.multiplier, self.bit_index)
        self.bit_index += 1


def shift_add_products(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    acc = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for i in range(SHIFT_ADD_STEPS):
        acc = shift_add_step(acc, a, b, i)
    return acc


# -- radix-4 Booth ----------------------------------------------------------

def booth_digit(b, j):
    """Radix-4 digit ``j`` from bits ``b[2j+1], b[2j], b[2j-1]`` (``b[-1] = 0``)."""
    y0 = (b >> (2 * j - 1)) & 1 if j else 0
    y1 = (b >> (2 * j)) & 1
    y2 = (b >> (2 * j + 1)) & 1
    return y1 + y0 - 2 * y2


def booth_digits(b: int) -> tuple[int, int, int, int]:
    """Four digits in {-2..2} with ``sum(d * 4**j) == b - 256 * b[7]``.

    Four radix-4 digits only span -170..170, so an unsigned ``b >= 128`` is
    recoded as its two's-complement value and the missing ``256 * a * b[7]``
    is supplied by :func:`booth_correction`.
    """
    check_operand(b)
    return tuple(booth_digit(b, j) for j in range(BOOTH_STEPS))


def booth_correction(a, b):
    """Unsigned-product correction preloaded into the accumulator: ``a * 256 * b[7]``."""
    return ((b >> 7) & 1) * (a << 8)


@dataclass
class BoothState:
    multiplicand: int
    recoded_digits: tuple[int, ...]
    acc: int = 0
    step: int = 0

    @classmethod
    def start(cls, a: int, b: int) -> "BoothState":
        return cls(a, booth_digits(b), booth_correction(a, b))

    @property
    def done(self) -> bool:
        return self.step == BOOTH_STEPS

    def advance(self) -> None:
        self.acc += self.recoded_digits[self.step] * (self.multiplicand << (2 * self.step))
        if not -(1 << (BOOTH_ACC_BITS - 1)) <= self.acc < (1 << (BOOTH_ACC_BITS - 1)):
            raise OverflowError(f"Booth accumulator left the 18-bit signed range: {self.acc}")
        self.step += 1

    @property
    def product(self) -> int:
        return self.acc & 0xFFFF


def booth_products(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    acc = booth_correction(a, b)
    for j in range(BOOTH_STEPS):
        acc = acc + booth_digit(b, j) * (a << (2 * j))
    return acc & 0xFFFF


# -- Wallace tree ----------------------------------------------------------

def _fa(x, y, z):
    return x ^ y ^ z, (x & y) | (z & (x ^ y))


def _ha(x, y):
    return x ^ y, x & y


def partial_product_columns(a, b) -> list[list]:
    """The 8x8 AND matrix arranged by weight: column ``k`` holds ``a_i & b_j`` with ``i + j = k``."""
    cols: list[list] = [[] for _ in range(15)]
    for j in range(8):
        bj = (b >> j) & 1
        for i in range(8):
            cols[i + j].append(((a >> i) & 1) & bj)
    return cols


def wallace_products(a, b, stages: list | None = None):
    """Products through AND matrix, Dadda-scheduled compressors and a ripple adder.

    If ``stages`` is given it receives the row count after each layer.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    cols, heights = dadda_reduce(partial_product_columns(a, b), _fa, _ha)
    if stages is not None:
        stages.extend(heights)
    bits = ripple_columns(cols, _fa, _ha, 16, np.zeros_like(a))
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for k, bit in enumerate(bits):
        out = out | (bit << k)
    return out


# -- vector jobs ------------------------------------------------------------

@dataclass
class BaselineRun:
    products: list[int]
    cycles: int
    trace: CycleTrace


def run_shift_add(job: VectorJob) -> BaselineRun:
    trace = CycleTrace(ArchKind.SHIFT_ADD, job.n)
    products = []
    cycle = 0
    for idx, a in enumerate(job.a_ops):
        state = ShiftAddState(a, job.b)
        trace.add(cycle + 1, idx, "load", a, job.b)
        while not state.done:
            state.step()
            cycle += 1
            trace.add(cycle, idx, "step", state.acc, job.b)
        trace.add(cycle, idx, "write_output", state.acc, job.b)
        products.append(state.acc)
    return BaselineRun(products, cycle, trace)


def run_booth(job: VectorJob) -> BaselineRun:
    trace = CycleTrace(ArchKind.BOOTH, job.n)
    products = []
    cycle = 0
    for idx, a in enumerate(job.a_ops):
        state = BoothState.start(a, job.b)
        trace.add(cycle + 1, idx, "load", a, job.b)
        while not state.done:
            state.advance()
            cycle += 1
            trace.add(cycle, idx, "step", state.acc & 0x3FFFF, job.b)
        trace.add(cycle, idx, "write_output", state.product, job.b)
        products.append(state.product)
    return BaselineRun(products, cycle, trace)


def run_wallace(job: VectorJob) -> BaselineRun:
    products = [int(p) for p in wallace_products(np.array(job.a_ops), job.b)]
    trace = CycleTrace(ArchKind.WALLACE, job.n)
    for idx, a in enumerate(job.a_ops):
        trace.add(1, idx, "load", a, job.b)
    for idx, p in enumerate(products):
        trace.add(1, idx, "write_output", p, job.b)
    return BaselineRun(products, 1, trace)


def shift_add_multiply(job: VectorJob) -> tuple[list[int], int]:
    run = run_shift_add(job)
    return run.products, run.cycles


def booth_multiply(job: VectorJob) -> tuple[list[int], int]:
    run = run_booth(job)
    return run.products, run.cycles


def wallace_multiply(job: VectorJob) -> tuple[list[int], int]:
    run = run_wallace(job)
    return run.products, run.cycles
