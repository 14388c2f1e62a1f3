"""Precompute-reuse nibble multiplier.

B is split into two nibbles once per job.  Each nibble picks one of sixteen
precompute-logic (PL) configurations, a fixed set of left shifts of A that are
summed; the partial is aligned by ``4 * nibble_index`` and accumulated.  The
sequential schedule spends one cycle per nibble (2 cycles per element); the
unrolled schedule evaluates both nibbles with duplicated PL in one cycle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .arith import ArchKind, InvalidJobError, VectorJob, check_nibble, check_operand, split_nibbles
from .trace import CycleTrace, merge_traces


class EngineFinishedError(RuntimeError):
    """Stepping an engine that already wrote its last output."""


class PlConfig(NamedTuple):
    nibble: int
    shifts: tuple[int, ...]

    @property
    def additions(self) -> int:
        return max(len(self.shifts) - 1, 0)


def pl_config(n: int) -> PlConfig:
    check_nibble(n)
    return PlConfig(n, tuple(i for i in range(4) if (n >> i) & 1))


def pl_config_table() -> tuple[PlConfig, ...]:
    return tuple(pl_config(n) for n in range(16))


_PL_TABLE = pl_config_table()


def pl_eval(a: int, n: int) -> tuple[int, int]:
    """``(a * n, additions used)`` through the shift-add configuration for ``n``."""
    check_operand(a)
    cfg = _PL_TABLE[check_nibble(n)]
    if not cfg.shifts:
        return 0, 0
    total = a << cfg.shifts[0]
    for s in cfg.shifts[1:]:
        total += a << s
    return total, cfg.additions


def pl(a, n):
    """Scaled value ``a * n`` built from shifted copies of ``a``.

    Scalars go through the configuration table; numpy arrays are evaluated
    elementwise with the same per-bit gating.
    """
    if isinstance(a, np.ndarray) or isinstance(n, np.ndarray):
        a = np.asarray(a, dtype=np.int64)
        n = np.asarray(n, dtype=np.int64)
        return sum(((n >> i) & 1) * (a << i) for i in range(4))
    return pl_eval(a, n)[0]


class NibbleSchedule(str, enum.Enum):
    SEQUENTIAL = "sequential"
    UNROLLED = "unrolled"


@dataclass(frozen=True)
class NibbleMode:
    mode: NibbleSchedule = NibbleSchedule.SEQUENTIAL
    lanes: int = 1

    def __post_init__(self):
        object.__setattr__(self, "mode", NibbleSchedule(self.mode))
        if self.lanes < 1:
            raise InvalidJobError(f"lanes must be >= 1, got {self.lanes}")

    def cycles(self, n: int) -> int:
        slots = math.ceil(n / self.lanes)
        return 2 * slots if self.mode is NibbleSchedule.SEQUENTIAL else slots

    def write_cycle(self, i: int) -> int:
        """Cycle at which element ``i`` reaches its output register."""
        per = 2 if self.mode is NibbleSchedule.SEQUENTIAL else 1
        return per * (i // self.lanes + 1)


SEQUENTIAL = NibbleMode()
UNROLLED = NibbleMode(NibbleSchedule.UNROLLED)


@dataclass(frozen=True)
class NibbleEngineState:
    element_index: int = 0
    nibble_index: int = 0
    acc: int = 0
    outputs: tuple[int, ...] = ()
    cycle: int = 0
    done: bool = False

    @classmethod
    def initial(cls, job: VectorJob) -> "NibbleEngineState":
        return cls(outputs=(0,) * job.n)


def nibble_step(state: NibbleEngineState, job: VectorJob, nibbles: tuple[int, int] | None = None) -> NibbleEngineState:
    """Advance the sequential engine by one clock cycle."""
    if state.done:
        raise EngineFinishedError("nibble engine already finished")
    if nibbles is None:
        nibbles = split_nibbles(job.b)
    a = job.a_ops[state.element_index]
    acc = state.acc + (pl(a, nibbles[state.nibble_index]) << (4 * state.nibble_index))
    cycle = state.cycle + 1
    if state.nibble_index == 0:
        return replace(state, nibble_index=1, acc=acc, cycle=cycle)
    outputs = list(state.outputs)
    outputs[state.element_index] = acc
    nxt = state.element_index + 1
    return NibbleEngineState(
        element_index=nxt if nxt < job.n else state.element_index,
        nibble_index=0,
        acc=0,
        outputs=tuple(outputs),
        cycle=cycle,
        done=nxt >= job.n,
    )


@dataclass
class NibbleRun:
    products: list[int]
    cycles: int
    decodes: int
    trace: CycleTrace
    max_acc: int = 0
    max_additions: int = 0
    lane_cycles: list[int] = field(default_factory=list)


def _lane_elements(n: int, lanes: int) -> list[list[int]]:
    return [list(range(lane, n, lanes)) for lane in range(min(lanes, n))]


def run_nibble(job: VectorJob, mode: NibbleMode = SEQUENTIAL) -> NibbleRun:
    nibbles = split_nibbles(job.b)  # the single broadcast decode
    decodes = 1
    products = [0] * job.n
    traces = []
    max_acc = 0
    max_adds = 0
    lane_cycles = []

    for elems in _lane_elements(job.n, mode.lanes):
        trace = CycleTrace(ArchKind.NIBBLE, job.n)
        sub = VectorJob([job.a_ops[i] for i in elems], job.b)
        if mode.mode is NibbleSchedule.SEQUENTIAL:
            state = NibbleEngineState.initial(sub)
            while not state.done:
                local, nib = state.element_index, state.nibble_index
                max_adds = max(max_adds, pl_eval(sub.a_ops[local], nibbles[nib])[1])
                state = nibble_step(state, sub, nibbles)
                if nib == 0:
                    trace.add(state.cycle, elems[local], "load", sub.a_ops[local], job.b)
                    trace.add(state.cycle, elems[local], "nibble0", state.acc, job.b)
                    max_acc = max(max_acc, state.acc)
                else:
                    value = state.outputs[local]
                    max_acc = max(max_acc, value)
                    trace.add(state.cycle, elems[local], "nibble1", value, job.b)
                    trace.add(state.cycle, elems[local], "write_output", value, job.b)
                    products[elems[local]] = value
            lane_cycles.append(state.cycle)
        else:
            for slot, (idx, a) in enumerate(zip(elems, sub.a_ops), start=1):
                lo, adds_lo = pl_eval(a, nibbles[0])
                hi, adds_hi = pl_eval(a, nibbles[1])
                acc = lo + (hi << 4)
                max_adds = max(max_adds, adds_lo, adds_hi)
                max_acc = max(max_acc, acc)
                trace.add(slot, idx, "load", a, job.b)
                trace.add(slot, idx, "nibble0", lo, job.b)
                trace.add(slot, idx, "nibble1", acc, job.b)
                trace.add(slot, idx, "write_output", acc, job.b)
                products[idx] = acc
            lane_cycles.append(len(elems))
        traces.append(trace)

    trace = merge_traces(traces, ArchKind.NIBBLE, job.n)
    return NibbleRun(products, max(lane_cycles), decodes, trace, max_acc, max_adds, lane_cycles)


def nibble_multiply(job: VectorJob, mode: NibbleMode = SEQUENTIAL) -> tuple[list[int], int]:
    run = run_nibble(job, mode)
    return run.products, run.cycles


def nibble_products(a, b, mode: NibbleMode = SEQUENTIAL):
    """Elementwise products over integer arrays, following the chosen schedule."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    lo, hi = split_nibbles(b)
    if mode.mode is NibbleSchedule.UNROLLED:
        return pl(a, lo) + (pl(a, hi) << 4)
    acc = np.zeros_like(a)
    for idx, nib in enumerate((lo, hi)):
        acc = acc + (pl(a, nib) << (4 * idx))
    return acc
