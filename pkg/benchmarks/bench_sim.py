"""Compare the compiled and pure-Python simulation kernels.

    python benchmarks/bench_sim.py [--repeat 3]

Both kernels run the same netlists on the same packed stimulus; the script
checks their outputs and toggle counts agree and prints wall times.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from nibblemul.arith import ArchKind
from nibblemul.netlist.archs import build_netlist, netlist_cycles
from nibblemul.netlist.sim import KERNELS, compile_netlist, run_bits

CASES = [
    (ArchKind.SHIFT_ADD, 4, 1024),
    (ArchKind.NIBBLE, 4, 1024),
    (ArchKind.WALLACE, 4, 1024),
    (ArchKind.LUT_ARRAY, 8, 1024),
]


def _stimulus(n: int, jobs: int, seed: int = 0) -> dict[str, np.ndarray]:
    rng = np.random.default_rng(seed)
    V = jobs // 64
    return {
        "a": rng.integers(0, 2, size=(V, 64, 8 * n), dtype=np.uint8),
        "b": rng.integers(0, 2, size=(V, 64, 8), dtype=np.uint8),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "compiled" not in KERNELS:
        print("compiled kernel not built; only the Python kernel is available")
    print(f"{'design':>18} {'gates':>6} {'cycles':>7} " + " ".join(f"{k:>10}" for k in KERNELS) + "  speedup")
    for arch, n, jobs in CASES:
        nl = build_netlist(arch, n)
        compiled = compile_netlist(nl)
        stim = _stimulus(n, jobs)
        cycles = netlist_cycles(arch, n)
        times, results = {}, {}
        for name in KERNELS:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[name] = run_bits(compiled, stim, repeat=cycles, kernel=name)
                best = min(best, time.perf_counter() - t0)
            times[name] = best
        if len(results) == 2:
            py, c = results["python"], results["compiled"]
            assert py.toggles_total == c.toggles_total
            assert all(np.array_equal(py.outputs[p], c.outputs[p]) for p in py.outputs)
        speed = times["python"] / times["compiled"] if "compiled" in times else 1.0
        total_cycles = cycles * jobs // 64
        print(f"{nl.name:>18} {len(nl.gates):>6} {total_cycles:>7} "
              + " ".join(f"{times[k] * 1e3:>8.1f}ms" for k in KERNELS) + f"  {speed:6.1f}x")


if __name__ == "__main__":
    main()
