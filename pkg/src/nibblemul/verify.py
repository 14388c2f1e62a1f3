"""Verification campaign: functional models, cycle engines, LUT/PL properties and netlists."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .arith import ArchKind, VectorJob
from .bench import simulate_jobs
from .config import RunConfig, job_arrays, make_jobs, random_jobs
from .engines import products_fn, run_engine
from .lut_array import build_res_string, extract_slice
from .netlist.archs import build_netlist, netlist_cycles
from .netlist.sim import compile_netlist
from .nibble import SEQUENTIAL, UNROLLED, NibbleMode, pl_eval
from .trace import TraceShapeError, check_trace_shape

ENGINE_JOBS = 32  # cycle engines are slow Python loops; a few jobs per N suffice
MODE_JOBS = 1000


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"[{status}] {self.name}: {self.passed}/{self.total} matches ({self.seconds:.2f} s){extra}"


@dataclass
class VerifyReport:
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    def text(self) -> str:
        lines = [s.line() for s in self.suites]
        failed = sum(not s.ok for s in self.suites)
        lines.append(f"overall: {'PASS' if self.ok else 'FAIL'} ({len(self.suites) - failed}/{len(self.suites)} suites)")
        return "\n".join(lines) + "\n"


def _timed(fn: Callable[[], SuiteResult]) -> SuiteResult:
    t0 = time.perf_counter()
    res = fn()
    res.seconds = time.perf_counter() - t0
    return res


def _pairs(cfg: RunConfig) -> tuple[np.ndarray, np.ndarray]:
    if cfg.stimulus.exhaustive:
        a, b = np.meshgrid(np.arange(256), np.arange(256), indexing="ij")
        return a.ravel(), b.ravel()
    rng = np.random.default_rng([cfg.seed, 0, 1])
    return rng.integers(0, 256, cfg.stimulus.count), rng.integers(0, 256, cfg.stimulus.count)


def functional_suite(arch: ArchKind, cfg: RunConfig) -> SuiteResult:
    a, b = _pairs(cfg)
    got = products_fn(arch, cfg.nibble_mode)(a, b)
    return SuiteResult(f"functional {arch.value}", int(np.sum(got == a * b)), a.size)


def engine_suite(arch: ArchKind, cfg: RunConfig) -> SuiteResult:
    """Cycle engines: products, latency and trace shape on seeded jobs."""
    mode = cfg.nibble_mode
    passed = total = 0
    problems = []
    for n in cfg.ns:
        for job in random_jobs(cfg.seed, n, ENGINE_JOBS, stream=2):
            total += 1
            run = run_engine(arch, job, mode)
            want = netlist_cycles(arch, n, mode)
            try:
                if run.products != job.expected():
                    raise TraceShapeError("wrong products")
                if run.cycles != want:
                    raise TraceShapeError(f"{run.cycles} cycles, expected {want}")
                check_trace_shape(run.trace, job, write_cycle_fn(arch, mode))
            except TraceShapeError as exc:
                problems.append(f"N={n}: {exc}")
                continue
            passed += 1
    return SuiteResult(f"engine {arch.value}", passed, total, "; ".join(problems[:3]))


def write_cycle_fn(arch: ArchKind, mode: NibbleMode):
    """Expected write cycle per element; None selects the single-datapath default."""
    return mode.write_cycle if ArchKind(arch) is ArchKind.NIBBLE else None


def lut_suite() -> SuiteResult:
    passed = sum(extract_slice(build_res_string(b), a) == a * b for b in range(16) for a in range(16))
    return SuiteResult("lut slices", passed, 256)


def pl_suite() -> SuiteResult:
    passed = 0
    for a in range(256):
        for n in range(16):
            value, adds = pl_eval(a, n)
            passed += value == a * n and adds <= 3
    return SuiteResult("pl precompute", passed, 4096)


def mode_suite(cfg: RunConfig) -> SuiteResult:
    """Sequential and unrolled nibble schedules give identical products."""
    count = cfg.stimulus.count if not cfg.stimulus.exhaustive else MODE_JOBS
    passed = total = 0
    for n in cfg.ns:
        a, b = job_arrays(random_jobs(cfg.seed, n, count, stream=3))
        seq = products_fn(ArchKind.NIBBLE, SEQUENTIAL)(a, b[:, None])
        unr = products_fn(ArchKind.NIBBLE, UNROLLED)(a, b[:, None])
        passed += int(np.sum(np.all(seq == unr, axis=1)))
        total += len(b)
    return SuiteResult("nibble modes agree", passed, total)


def netlist_pairs_suite(arch: ArchKind, cfg: RunConfig) -> SuiteResult:
    """N=1 netlist against the products of every (a, b) pair in the stimulus."""
    a, b = _pairs(cfg)
    jobs = [VectorJob([int(x)], int(y)) for x, y in zip(a, b)]
    nl = build_netlist(arch, 1, cfg.nibble_mode)
    got, _ = simulate_jobs(compile_netlist(nl), jobs, netlist_cycles(arch, 1, cfg.nibble_mode))
    return SuiteResult(f"netlist {arch.value} N=1", int(np.sum(got[:, 0] == a * b)), a.size)


def netlist_vector_suite(arch: ArchKind, cfg: RunConfig) -> SuiteResult:
    passed = total = 0
    mode = cfg.nibble_mode
    for n in cfg.ns:
        jobs = make_jobs(cfg, n)
        got, _ = simulate_jobs(compile_netlist(build_netlist(arch, n, mode)), jobs, netlist_cycles(arch, n, mode))
        a, b = job_arrays(jobs)
        passed += int(np.sum(np.all(got == a * b[:, None], axis=1)))
        total += len(jobs)
    return SuiteResult(f"netlist {arch.value} N={','.join(map(str, cfg.ns))}", passed, total)


def run_verify(cfg: RunConfig, progress: Callable[[SuiteResult], None] | None = None) -> VerifyReport:
    report = VerifyReport()

    def add(fn):
        res = _timed(fn)
        report.suites.append(res)
        if progress:
            progress(res)

    add(lut_suite)
    add(pl_suite)
    for arch in cfg.archs:
        add(lambda: functional_suite(arch, cfg))
        add(lambda: engine_suite(arch, cfg))
        add(lambda: netlist_pairs_suite(arch, cfg))
        add(lambda: netlist_vector_suite(arch, cfg))
    if ArchKind.NIBBLE in cfg.archs:
        add(lambda: mode_suite(cfg))
    return report
