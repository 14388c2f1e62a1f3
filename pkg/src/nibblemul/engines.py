"""Uniform entry points over the five architectures."""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial

from .arith import ArchKind, VectorJob
from .baselines import booth_products, run_booth, run_shift_add, run_wallace, shift_add_products, wallace_products
from .lut_array import lut_products, run_lut_array
from .nibble import SEQUENTIAL, NibbleMode, nibble_products, run_nibble
from .trace import CycleTrace


@dataclass
class EngineRun:
    arch: ArchKind
    products: list[int]
    cycles: int
    trace: CycleTrace


def run_engine(arch: ArchKind, job: VectorJob, mode: NibbleMode = SEQUENTIAL) -> EngineRun:
    """Run ``job`` on the cycle engine for ``arch``."""
    arch = ArchKind(arch)
    if arch is ArchKind.NIBBLE:
        run = run_nibble(job, mode)
    elif arch is ArchKind.LUT_ARRAY:
        run = run_lut_array(job)
    elif arch is ArchKind.SHIFT_ADD:
        run = run_shift_add(job)
    elif arch is ArchKind.BOOTH:
        run = run_booth(job)
    else:
        run = run_wallace(job)
    return EngineRun(arch, run.products, run.cycles, run.trace)


def products_fn(arch: ArchKind, mode: NibbleMode = SEQUENTIAL):
    """Elementwise ``f(a, b)`` over integer arrays implementing ``arch``'s algorithm."""
    return {
        ArchKind.SHIFT_ADD: shift_add_products,
        ArchKind.BOOTH: booth_products,
        ArchKind.NIBBLE: partial(nibble_products, mode=mode),
        ArchKind.WALLACE: wallace_products,
        ArchKind.LUT_ARRAY: lut_products,
    }[ArchKind(arch)]
