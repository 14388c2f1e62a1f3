"""``nibblemul`` command line: verify, bench, trace and emit.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .arith import ArchKind, InvalidJobError, VectorJob
from .bench import BenchMismatchError, bench_csv, bench_table, run_bench
from .config import ConfigError, RunConfig, format_config, load_config, random_jobs
from .engines import run_engine
from .netlist.archs import build_netlist
from .netlist.core import NetlistError
from .netlist.verilog import emit_verilog
from .trace import TraceShapeError, check_trace_shape, trace_to_csv, trace_to_vcd
from .verify import run_verify, write_cycle_fn

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

TRACE_DEFAULT_N = 8


class UsageError(ValueError):
    pass


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return path


def _config(args) -> RunConfig:
    overrides = {
        "arch": args.arch,
        "n": args.n,
        "mode": args.mode,
        "lanes": args.lanes,
        "seed": args.seed,
        "stimulus": args.stimulus,
        "out": args.out,
    }
    return load_config(args.config, overrides)


def _single(cfg: RunConfig) -> tuple[ArchKind, int]:
    if len(cfg.archs) != 1 or len(cfg.ns) != 1:
        raise UsageError("this command needs exactly one --arch and one --n")
    return cfg.archs[0], cfg.ns[0]


def cmd_verify(args) -> int:
    cfg = _config(args)
    report = run_verify(cfg, progress=lambda s: print(s.line(), flush=True))
    text = "# config\n" + format_config(cfg) + "\n# results\n" + report.text()
    path = _write(cfg.out / "verify_report.txt", text)
    print(f"overall: {'PASS' if report.ok else 'FAIL'}  (report: {path})")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_bench(args) -> int:
    cfg = _config(args)
    reports = run_bench(cfg)
    table = bench_table(reports)
    _write(cfg.out / "bench.csv", bench_csv(reports))
    _write(cfg.out / "bench.txt", table)
    print(table, end="")
    print(f"wrote {cfg.out / 'bench.csv'} and {cfg.out / 'bench.txt'}")
    return EXIT_OK


def _trace_job(args, cfg: RunConfig, n: int) -> VectorJob:
    """Job from ``--a``/``--b``; whatever is missing comes from the seeded generator."""
    seeded = random_jobs(cfg.seed, n, 1, stream=4)[0]
    try:
        a_ops = [int(t, 0) for t in args.a.split(",") if t.strip()] if args.a is not None else seeded.a_ops
        b = int(args.b, 0) if args.b is not None else seeded.b
    except ValueError as exc:
        raise UsageError(f"bad operand: {exc}") from None
    if len(a_ops) != n:
        raise UsageError(f"--a has {len(a_ops)} operands but --n is {n}")
    return VectorJob(a_ops, b)


def cmd_trace(args) -> int:
    if args.a is not None and args.n is None:
        args.n = str(len([t for t in args.a.split(",") if t.strip()]))
    cfg = _config(args)
    if len(cfg.ns) > 1 and args.n is None:
        cfg = replace(cfg, ns=(TRACE_DEFAULT_N,))
    arch, n = _single(cfg)
    job = _trace_job(args, cfg, n)
    run = run_engine(arch, job, cfg.nibble_mode)
    check_trace_shape(run.trace, job, write_cycle_fn(arch, cfg.nibble_mode))
    stem = f"trace_{arch.value}_n{job.n}"
    csv_path = _write(cfg.out / f"{stem}.csv", trace_to_csv(run.trace))
    vcd_path = _write(cfg.out / f"{stem}.vcd", trace_to_vcd(run.trace, job))
    writes = ", ".join(f"{r.element_index}@{r.cycle}" for r in run.trace.writes())
    print(f"{arch.value} N={job.n} b={job.b}: {run.cycles} cycles; writes (element@cycle): {writes}")
    print(f"wrote {csv_path} and {vcd_path}")
    return EXIT_OK


def cmd_emit(args) -> int:
    cfg = _config(args)
    arch, n = _single(cfg)
    nl = build_netlist(arch, n, cfg.nibble_mode)
    text = emit_verilog(nl)
    out = cfg.out
    path = out if out.suffix == ".v" else out / f"{nl.name}.v"
    _write(path, text)
    print(f"wrote {path} ({len(nl.gates)} gates, {len(nl.flops)} flops)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file; command-line flags override it")
    common.add_argument("--arch", help="comma-separated: shiftadd, booth, nibble, wallace, lutarray")
    common.add_argument("--n", help="comma-separated vector lengths (1..64)")
    common.add_argument("--mode", help="nibble schedule: sequential or unrolled")
    common.add_argument("--lanes", help="nibble datapath lanes (>= 1)")
    common.add_argument("--seed", help="64-bit seed for random stimulus")
    common.add_argument("--stimulus", help="exhaustive or random:COUNT")
    common.add_argument("--out", help="output directory (emit: directory or .v file)")

    parser = argparse.ArgumentParser(prog="nibblemul", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("bench", parents=[common], help="cost and activity benchmark with reference columns")
    p.set_defaults(func=cmd_bench)
    p = sub.add_parser("trace", parents=[common], help="dump a cycle trace as CSV and VCD")
    p.add_argument("--a", help="comma-separated A operands (default: one seeded random job)")
    p.add_argument("--b", help="broadcast B operand")
    p.set_defaults(func=cmd_trace)
    p = sub.add_parser("emit", parents=[common], help="write structural Verilog for one design")
    p.set_defaults(func=cmd_emit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (ConfigError, InvalidJobError, NetlistError, UsageError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BenchMismatchError, TraceShapeError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        where = f" ({exc.filename})" if exc.filename else ""
        print(f"I/O error{where}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
