"""Per-cycle event logs of the cycle engines, with CSV and VCD writers."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable

from vcd import VCDWriter

from .arith import PER_OPERAND_CYCLES, ArchKind, VectorJob

EVENTS = ("load", "nibble0", "nibble1", "step", "write_output")


class TraceShapeError(AssertionError):
    """A trace does not have the timing shape its architecture guarantees."""


@dataclass(frozen=True)
class TraceRecord:
    cycle: int
    element_index: int
    event: str
    value: int
    b: int


@dataclass
class CycleTrace:
    arch: ArchKind
    n: int
    records: list[TraceRecord] = field(default_factory=list)

    def add(self, cycle: int, element_index: int, event: str, value: int, b: int) -> None:
        if event not in EVENTS:
            raise ValueError(f"unknown trace event {event!r}")
        self.records.append(TraceRecord(cycle, element_index, event, int(value), b))

    @property
    def cycles(self) -> int:
        return max((r.cycle for r in self.records), default=0)

    def writes(self) -> list[TraceRecord]:
        return [r for r in self.records if r.event == "write_output"]

    def products(self) -> list[int]:
        out = [0] * self.n
        for r in self.writes():
            out[r.element_index] = r.value
        return out


def check_trace_shape(trace: CycleTrace, job: VectorJob, write_cycle=None) -> None:
    """Assert the write timing the architecture promises.

    ``write_cycle(i)`` gives the cycle at which element ``i`` must be written.
    The default is the single-datapath schedule: ``(i + 1) * cycles_per_operand``
    for sequential architectures, cycle 1 for combinational ones.  B must hold
    the same value in every record.
    """
    if write_cycle is None:
        per = PER_OPERAND_CYCLES[trace.arch]
        if trace.arch.is_sequential:
            write_cycle = lambda i: (i + 1) * per  # noqa: E731
        else:
            write_cycle = lambda i: 1  # noqa: E731
    writes = trace.writes()
    if sorted(r.element_index for r in writes) != list(range(job.n)):
        raise TraceShapeError("every element must be written exactly once")
    if any(r.b != job.b for r in trace.records):
        raise TraceShapeError("broadcast operand changed during the job")
    for r in writes:
        want = write_cycle(r.element_index)
        if r.cycle != want:
            raise TraceShapeError(
                f"element {r.element_index} written at cycle {r.cycle}, expected {want}"
            )
        if r.value != job.a_ops[r.element_index] * job.b:
            raise TraceShapeError(f"element {r.element_index} has wrong product {r.value}")


def trace_to_csv(trace: CycleTrace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["cycle", "element_index", "event", "value", "b"])
    for r in trace.records:
        w.writerow([r.cycle, r.element_index, r.event, r.value, r.b])
    return buf.getvalue()


def _index_width(n: int) -> int:
    return max(1, (n - 1).bit_length())


def trace_to_vcd(trace: CycleTrace, job: VectorJob) -> str:
    """Render the trace as a VCD waveform, one timestamp per clock cycle (1 ns)."""
    buf = io.StringIO()
    with VCDWriter(buf, timescale="1 ns", date="-", version="nibblemul", comment=f"{trace.arch.value} n={trace.n}") as w:
        scope = f"{trace.arch.value}"
        v_b = w.register_var(scope, "b", "wire", size=8, init=job.b)
        v_idx = w.register_var(scope, "elem_idx", "wire", size=_index_width(job.n), init=0)
        v_a = w.register_var(scope, "a_sel", "wire", size=8, init=0)
        v_acc = w.register_var(scope, "acc", "wire", size=16, init=0)
        v_we = w.register_var(scope, "wr_en", "wire", size=1, init=0)
        v_out = [w.register_var(scope, f"r{i}", "wire", size=16, init=0) for i in range(job.n)]

        by_cycle: dict[int, list[TraceRecord]] = {}
        for r in trace.records:
            by_cycle.setdefault(r.cycle, []).append(r)
        for cycle in range(1, trace.cycles + 1):
            recs = by_cycle.get(cycle, [])
            w.change(v_b, cycle, job.b)
            we = 0
            for r in recs:
                if r.event == "load":
                    w.change(v_idx, cycle, r.element_index)
                    w.change(v_a, cycle, job.a_ops[r.element_index])
                elif r.event in ("nibble0", "nibble1", "step"):
                    w.change(v_acc, cycle, r.value)
                elif r.event == "write_output":
                    we = 1
                    w.change(v_out[r.element_index], cycle, r.value)
            w.change(v_we, cycle, we)
        w.change(v_we, trace.cycles + 1, 0)
    return buf.getvalue()


def merge_traces(traces: Iterable[CycleTrace], arch: ArchKind, n: int) -> CycleTrace:
    out = CycleTrace(arch, n)
    for t in traces:
        out.records.extend(t.records)
    out.records.sort(key=lambda r: (r.cycle, r.element_index, EVENTS.index(r.event)))
    return out
