"""Bit- and cycle-accurate models of nibble-based 8-bit vector-scalar multipliers.

Two designs (a LUT-based array multiplier and a precompute-reuse nibble
multiplier) sit next to shift-add, radix-4 Booth and Wallace baselines, with
gate-level netlists, cost proxies, traces and Verilog emission.
"""

from .arith import ArchKind, InvalidJobError, VectorJob, oracle_mul, split_nibbles, vector_latency
from .baselines import booth_multiply, shift_add_multiply, wallace_multiply
from .engines import products_fn, run_engine
from .lut_array import HexLut, LmInput, LmOutput, build_res_string, extract_slice, lm_multiply, lut_array_multiply
from .nibble import SEQUENTIAL, UNROLLED, NibbleMode, NibbleSchedule, nibble_multiply, pl, pl_config
from .trace import CycleTrace, check_trace_shape

__version__ = "0.1.0"

__all__ = [
    "ArchKind", "InvalidJobError", "VectorJob", "oracle_mul", "split_nibbles", "vector_latency",
    "booth_multiply", "shift_add_multiply", "wallace_multiply",
    "products_fn", "run_engine",
    "HexLut", "LmInput", "LmOutput", "build_res_string", "extract_slice", "lm_multiply", "lut_array_multiply",
    "SEQUENTIAL", "UNROLLED", "NibbleMode", "NibbleSchedule", "nibble_multiply", "pl", "pl_config",
    "CycleTrace", "check_trace_shape",
]
