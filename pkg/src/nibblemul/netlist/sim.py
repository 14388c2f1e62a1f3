"""Two-valued, zero-delay, cycle-based netlist simulation with toggle counting.

One simulated cycle applies the input vector, settles the combinational
logic, clocks every DFF at once and settles again; outputs are sampled after
the clock edge.  Toggles are counted on every settled state change, so a net
that moves when the inputs change and again after the edge counts twice.

The compiled kernel is used when it was built; set ``NIBBLEMUL_KERNEL=python``
to force the pure-Python one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import _simpy
from .core import Netlist, levelize

try:
    from . import _simcore
except ImportError:  # extension not built
    _simcore = None

KERNELS = {"python": _simpy.simulate}
if _simcore is not None:
    KERNELS["compiled"] = _simcore.simulate


def default_kernel() -> str:
    forced = os.environ.get("NIBBLEMUL_KERNEL")
    if forced:
        if forced not in KERNELS:
            raise RuntimeError(f"NIBBLEMUL_KERNEL={forced!r} is not available; have {sorted(KERNELS)}")
        return forced
    return "compiled" if "compiled" in KERNELS else "python"


class StimulusError(ValueError):
    """Stimulus does not match the netlist's ports."""


@dataclass
class CompiledNetlist:
    netlist: Netlist
    ops: np.ndarray
    pi_nets: np.ndarray
    po_nets: np.ndarray
    dff_q: np.ndarray
    dff_d: np.ndarray
    dff_init: np.ndarray
    weights: np.ndarray


def compile_netlist(netlist: Netlist) -> CompiledNetlist:
    order = levelize(netlist)
    ops = np.full((len(order), 6), 0, dtype=np.int32)
    for row, g in zip(ops, order):
        row[0] = int(g.kind)
        row[1: 1 + len(g.inputs)] = g.inputs
        row[4: 4 + len(g.outputs)] = g.outputs
    flops = netlist.flops
    return CompiledNetlist(
        netlist,
        ops,
        np.array([n for bits in netlist.inputs.values() for n in bits], dtype=np.int32),
        np.array([n for bits in netlist.outputs.values() for n in bits], dtype=np.int32),
        np.array([g.outputs[0] for g in flops], dtype=np.int32),
        np.array([g.inputs[0] for g in flops], dtype=np.int32),
        np.array([g.init for g in flops], dtype=np.uint8),
        1 + netlist.fanout(),
    )


def _pack(bits: np.ndarray) -> np.ndarray:
    """(..., lanes) 0/1 array -> (..., W) uint64 words, lane ``i`` at bit ``i % 64`` of word ``i // 64``."""
    lanes = bits.shape[-1]
    W = max(1, -(-lanes // 64))
    padded = np.zeros(bits.shape[:-1] + (64 * W,), dtype=np.uint8)
    padded[..., :lanes] = bits
    packed = np.packbits(padded, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def _unpack(words: np.ndarray, lanes: int) -> np.ndarray:
    raw = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(raw, axis=-1, bitorder="little")[..., :lanes]


@dataclass
class BatchResult:
    outputs: dict[str, np.ndarray]  # port -> (V, lanes, width) bits
    net_toggles: np.ndarray
    toggles_total: int


def run_bits(
    compiled: CompiledNetlist,
    inputs: Mapping[str, np.ndarray],
    repeat: int = 1,
    count_toggles: bool = True,
    kernel: str | None = None,
    n_vectors: int | None = None,
) -> BatchResult:
    """Simulate ``lanes`` independent copies of the netlist over ``V`` vectors.

    ``inputs[port]`` is a 0/1 array of shape ``(V, lanes, width)``.  Each vector
    is held for ``repeat`` cycles and outputs are sampled after the last one.
    A netlist without inputs needs ``n_vectors`` instead.
    """
    nl = compiled.netlist
    if set(inputs) != set(nl.inputs):
        raise StimulusError(f"stimulus ports {sorted(inputs)} do not match {sorted(nl.inputs)}")
    if inputs:
        V, lanes = np.shape(next(iter(inputs.values())))[:2]
    else:
        V, lanes = n_vectors or 0, 1
    planes = [np.zeros((V, 0, lanes), dtype=np.uint8)]
    for port, bits in nl.inputs.items():
        arr = np.asarray(inputs[port], dtype=np.uint8)
        if arr.shape != (V, lanes, len(bits)):
            raise StimulusError(f"port {port}: expected shape {(V, lanes, len(bits))}, got {arr.shape}")
        planes.append(np.swapaxes(arr, 1, 2))  # (V, width, lanes)
    stim = np.ascontiguousarray(_pack(np.concatenate(planes, axis=1)), dtype=np.uint64)

    run = KERNELS[kernel or default_kernel()]
    out, toggles = run(
        compiled.ops,
        nl.n_nets,
        compiled.pi_nets,
        stim,
        int(repeat),
        compiled.po_nets,
        compiled.dff_q,
        compiled.dff_d,
        compiled.dff_init,
        bool(count_toggles),
    )
    bits = np.swapaxes(_unpack(out, lanes), 1, 2)  # (V, lanes, Q)
    outputs = {}
    k = 0
    for port, nets in nl.outputs.items():
        outputs[port] = bits[:, :, k: k + len(nets)]
        k += len(nets)
    return BatchResult(outputs, toggles, int(np.dot(toggles, compiled.weights)))


def int_to_bits(values: Sequence[int], width: int) -> np.ndarray:
    return np.array([[(int(v) >> k) & 1 for k in range(width)] for v in values], dtype=np.uint8).reshape(len(values), width)


def bits_to_int(bits: np.ndarray) -> list[int]:
    """Rows of LSB-first bits to Python ints (arbitrary width)."""
    return [int("".join(map(str, row[::-1].tolist())) or "0", 2) for row in bits]


@dataclass
class SimResult:
    outputs: list[dict[str, int]]
    toggles_total: int
    net_toggles: np.ndarray


def simulate_netlist(
    netlist: Netlist | CompiledNetlist,
    stimulus: Sequence[Mapping[str, int]],
    repeat: int = 1,
    kernel: str | None = None,
) -> SimResult:
    """Apply ``stimulus`` vectors (port -> integer) one after another.

    Toggles are weighted by ``1 + fanout`` of each net.  Returns the outputs
    sampled after each vector (after ``repeat`` cycles of it).
    """
    compiled = netlist if isinstance(netlist, CompiledNetlist) else compile_netlist(netlist)
    nl = compiled.netlist
    inputs = {}
    for port, bits in nl.inputs.items():
        vals = []
        for vec in stimulus:
            if set(vec) != set(nl.inputs):
                raise StimulusError(f"vector ports {sorted(vec)} do not match {sorted(nl.inputs)}")
            val = int(vec[port])
            if not 0 <= val < (1 << len(bits)):
                raise StimulusError(f"value {val} does not fit {len(bits)}-bit port {port}")
            vals.append(val)
        inputs[port] = int_to_bits(vals, len(bits))[:, None, :]
    res = run_bits(compiled, inputs, repeat=repeat, kernel=kernel, n_vectors=len(stimulus))
    outputs = [dict() for _ in stimulus]
    for port, bits in res.outputs.items():
        for v, val in enumerate(bits_to_int(bits[:, 0, :])):
            outputs[v][port] = val
    return SimResult(outputs, res.toggles_total, res.net_toggles)
