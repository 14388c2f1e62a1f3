"""Cost benchmark: gate equivalents, depth and switching activity per (arch, N).

Every architecture of one N sees the same seeded jobs.  Jobs are simulated 64
at a time, one per bit lane, each lane running its jobs back to back; an
all-zero warm-up job in front of each lane makes every real job's transitions
count.  Ratio columns are shift-add divided by the design, as in the published
improvement factors, and are computed from the printed raw columns so they can
be recomputed from the CSV exactly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arith import ArchKind, VectorJob
from .config import RunConfig, job_arrays, make_jobs
from .netlist.archs import build_netlist, netlist_cycles
from .netlist.core import Netlist, area_proxy, critical_depth
from .netlist.sim import CompiledNetlist, compile_netlist, run_bits
from .nibble import SEQUENTIAL, NibbleMode
from .reference import AREA_UM2, POWER_MW, paper_ratio, paper_reference

CSV_HEADER = (
    "arch", "n", "cycles", "ge", "depth", "toggles_per_product",
    "paper_area_um2", "paper_power_mw", "area_ratio_vs_shiftadd", "power_proxy_ratio_vs_shiftadd",
)
LANE_WORD = 64


class BenchMismatchError(AssertionError):
    """A netlist produced a wrong product during the benchmark."""


@dataclass(frozen=True)
class CostReport:
    arch: ArchKind
    n: int
    cycles: int
    gate_equivalents: float
    depth: int
    toggles_total: int
    jobs: int

    @property
    def toggles_per_product(self) -> float:
        return self.toggles_total / (self.n * self.jobs) if self.jobs else 0.0

    # printed forms; ratios are computed from these
    def ge_text(self) -> str:
        return f"{self.gate_equivalents:.2f}"

    def tpp_text(self) -> str:
        return f"{self.toggles_per_product:.4f}"


def _bits(values: np.ndarray, width: int) -> np.ndarray:
    return ((values[..., None] >> np.arange(width)) & 1).astype(np.uint8)


def simulate_jobs(
    compiled: CompiledNetlist, jobs: Sequence[VectorJob], cycles: int, kernel: str | None = None
) -> tuple[np.ndarray, int]:
    """Run ``jobs`` through a netlist with ports a/b/p; returns (products, toggles_total)."""
    if not jobs:
        return np.zeros((0, 0), dtype=np.int64), 0
    a, b = job_arrays(jobs)
    n = a.shape[1]
    full = len(jobs) // LANE_WORD * LANE_WORD
    products = []
    toggles = 0
    for lo, hi, lanes in ((0, full, LANE_WORD), (full, len(jobs), len(jobs) - full)):
        if hi <= lo:
            continue
        V = (hi - lo) // lanes
        ga = np.zeros((V + 1, lanes, n), dtype=np.int64)
        gb = np.zeros((V + 1, lanes), dtype=np.int64)
        ga[1:] = a[lo:hi].reshape(V, lanes, n)
        gb[1:] = b[lo:hi].reshape(V, lanes)
        res = run_bits(
            compiled,
            {"a": _bits(ga, 8).reshape(V + 1, lanes, 8 * n), "b": _bits(gb, 8)},
            repeat=cycles,
            kernel=kernel,
        )
        p = res.outputs["p"][1:].reshape(V, lanes, n, 16).astype(np.int64)
        products.append((p << np.arange(16)).sum(axis=-1).reshape(V * lanes, n))
        toggles += res.toggles_total
    return np.concatenate(products), toggles


def measure(
    arch: ArchKind,
    n: int,
    jobs: Sequence[VectorJob],
    mode: NibbleMode = SEQUENTIAL,
    netlist: Netlist | None = None,
    kernel: str | None = None,
) -> CostReport:
    arch = ArchKind(arch)
    nl = netlist or build_netlist(arch, n, mode)
    cycles = netlist_cycles(arch, n, mode)
    products, toggles = simulate_jobs(compile_netlist(nl), jobs, cycles, kernel)
    expected = job_arrays(jobs)[0] * job_arrays(jobs)[1][:, None]
    if not np.array_equal(products, expected):
        bad = int(np.argwhere(products != expected)[0][0])
        raise BenchMismatchError(f"{arch.value} N={n}: netlist output wrong for job {jobs[bad]}")
    return CostReport(arch, n, cycles, area_proxy(nl), critical_depth(nl), toggles, len(jobs))


def run_bench(cfg: RunConfig, kernel: str | None = None) -> list[CostReport]:
    reports = []
    for n in cfg.ns:
        jobs = make_jobs(cfg, n)
        for arch in cfg.archs:
            reports.append(measure(arch, n, jobs, cfg.nibble_mode, kernel=kernel))
    return reports


def _ratio(base: str | None, val: str) -> str:
    if base is None or float(val) == 0.0:
        return ""
    return f"{float(base) / float(val):.4f}"


def _baselines(reports: Sequence[CostReport]) -> dict[int, CostReport]:
    return {r.n: r for r in reports if r.arch is ArchKind.SHIFT_ADD}


def bench_rows(reports: Sequence[CostReport]) -> list[dict[str, str]]:
    base = _baselines(reports)
    rows = []
    for r in reports:
        ref = paper_reference(r.arch, r.n)
        sa = base.get(r.n)
        rows.append({
            "arch": r.arch.value,
            "n": str(r.n),
            "cycles": str(r.cycles),
            "ge": r.ge_text(),
            "depth": str(r.depth),
            "toggles_per_product": r.tpp_text(),
            "paper_area_um2": ref.area_text(),
            "paper_power_mw": ref.power_text(),
            "area_ratio_vs_shiftadd": _ratio(sa and sa.ge_text(), r.ge_text()),
            "power_proxy_ratio_vs_shiftadd": _ratio(sa and sa.tpp_text(), r.tpp_text()),
        })
    return rows


def bench_csv(reports: Sequence[CostReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(bench_rows(reports))
    return buf.getvalue()


def _fmt_ratio(x: float | None) -> str:
    return "-" if x is None else f"{x:.2f}x"


def bench_table(reports: Sequence[CostReport]) -> str:
    """Aligned text table with the published numbers alongside the proxies."""
    head = ("arch", "N", "cycles", "GE", "depth", "tog/prod", "ref um2", "ref mW",
            "GE ratio", "ref area ratio", "tog ratio", "ref power ratio")
    lines = [head]
    for r, row in zip(reports, bench_rows(reports)):
        lines.append((
            row["arch"], row["n"], row["cycles"], row["ge"], row["depth"], row["toggles_per_product"],
            row["paper_area_um2"] or "-", row["paper_power_mw"] or "-",
            row["area_ratio_vs_shiftadd"] and f"{float(row['area_ratio_vs_shiftadd']):.2f}x" or "-",
            _fmt_ratio(paper_ratio(AREA_UM2, r.arch, r.n)),
            row["power_proxy_ratio_vs_shiftadd"] and f"{float(row['power_proxy_ratio_vs_shiftadd']):.2f}x" or "-",
            _fmt_ratio(paper_ratio(POWER_MW, r.arch, r.n)),
        ))
    widths = [max(len(line[i]) for line in lines) for i in range(len(head))]
    out = ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in lines]
    out.insert(1, "  ".join("-" * w for w in widths))
    notes = [
        "",
        "Ratios are shift-add / design (>1 means smaller or less active than shift-add).",
        "GE and toggle counts are desk-scale proxies; the ref columns are published 28 nm synthesis results",
        "and are shown for direction only.",
    ]
    return "\n".join(out + notes) + "\n"
