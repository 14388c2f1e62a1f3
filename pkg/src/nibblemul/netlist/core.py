"""Gate-level netlist representation and the static cost proxies.

Nets are integers.  Net 0 is constant 0 and net 1 is constant 1; every other
net is driven by exactly one primary-input bit or gate output.  DFF outputs
act as sources for the combinational graph, which must be acyclic.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

CONST0 = 0
CONST1 = 1


class NetlistError(ValueError):
    """Structural problem: multiple drivers, undriven nets, or a combinational loop."""


class GateKind(enum.IntEnum):
    AND2 = 0
    OR2 = 1
    XOR2 = 2
    NAND2 = 3
    NOR2 = 4
    INV = 5
    MUX2 = 6  # inputs (d0, d1, sel)
    HA = 7  # outputs (sum, carry)
    FA = 8  # inputs (a, b, cin), outputs (sum, carry)
    DFF = 9  # input (d,), output (q,)


ARITY = {
    GateKind.AND2: (2, 1),
    GateKind.OR2: (2, 1),
    GateKind.XOR2: (2, 1),
    GateKind.NAND2: (2, 1),
    GateKind.NOR2: (2, 1),
    GateKind.INV: (1, 1),
    GateKind.MUX2: (3, 1),
    GateKind.HA: (2, 2),
    GateKind.FA: (3, 2),
    GateKind.DFF: (1, 1),
}

GE_WEIGHTS = {
    GateKind.INV: 0.5,
    GateKind.NAND2: 1.0,
    GateKind.NOR2: 1.0,
    GateKind.AND2: 1.25,
    GateKind.OR2: 1.25,
    GateKind.XOR2: 2.0,
    GateKind.MUX2: 2.0,
    GateKind.HA: 2.5,
    GateKind.FA: 4.5,
    GateKind.DFF: 4.0,
}

LEVELS = {kind: 1 for kind in GateKind}
LEVELS[GateKind.HA] = 2
LEVELS[GateKind.FA] = 2


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    name: str = ""
    init: int = 0  # reset value, DFF only


@dataclass
class Netlist:
    name: str
    n_nets: int = 2
    inputs: dict[str, list[int]] = field(default_factory=dict)
    outputs: dict[str, list[int]] = field(default_factory=dict)
    gates: list[Gate] = field(default_factory=list)

    @property
    def flops(self) -> list[Gate]:
        return [g for g in self.gates if g.kind is GateKind.DFF]

    @property
    def comb_gates(self) -> list[Gate]:
        return [g for g in self.gates if g.kind is not GateKind.DFF]

    def input_width(self) -> int:
        return sum(len(v) for v in self.inputs.values())

    def count(self, kind: GateKind) -> int:
        return sum(1 for g in self.gates if g.kind is kind)

    def kind_counts(self) -> dict[str, int]:
        c = Counter(g.kind.name for g in self.gates)
        return dict(sorted(c.items()))

    def drivers(self) -> dict[int, object]:
        """Map each driven net to its driver; raises on conflicts."""
        drv: dict[int, object] = {CONST0: "const", CONST1: "const"}

        def claim(net, who):
            if not 0 <= net < self.n_nets:
                raise NetlistError(f"net {net} out of range")
            if net in drv:
                raise NetlistError(f"net {net} has more than one driver")
            drv[net] = who

        for port, bits in self.inputs.items():
            for net in bits:
                claim(net, port)
        for g in self.gates:
            n_in, n_out = ARITY[g.kind]
            if len(g.inputs) != n_in or len(g.outputs) != n_out:
                raise NetlistError(f"{g.kind.name} gate {g.name!r} has wrong arity")
            for net in g.outputs:
                claim(net, g)
        return drv

    def validate(self) -> None:
        drv = self.drivers()
        for g in self.gates:
            for net in g.inputs:
                if net not in drv:
                    raise NetlistError(f"net {net} feeding {g.kind.name} {g.name!r} is undriven")
        for port, bits in self.outputs.items():
            for net in bits:
                if net not in drv:
                    raise NetlistError(f"output {port} uses undriven net {net}")
        levelize(self)

    def fanout(self) -> np.ndarray:
        """Number of gate input pins on each net."""
        fo = np.zeros(self.n_nets, dtype=np.int64)
        for g in self.gates:
            for net in g.inputs:
                fo[net] += 1
        return fo


def levelize(netlist: Netlist) -> list[Gate]:
    """Combinational gates in topological order; DFF outputs count as sources."""
    comb = netlist.comb_gates
    ready = np.zeros(netlist.n_nets, dtype=bool)
    ready[[CONST0, CONST1]] = True
    for bits in netlist.inputs.values():
        ready[bits] = True
    for g in netlist.flops:
        ready[g.outputs[0]] = True

    waiting: dict[int, list[int]] = {}
    missing = []
    order: list[Gate] = []
    queue = []
    for idx, g in enumerate(comb):
        pending = {net for net in g.inputs if not ready[net]}
        missing.append(len(pending))
        for net in pending:
            waiting.setdefault(net, []).append(idx)
        if not pending:
            queue.append(idx)
    head = 0
    while head < len(queue):
        g = comb[queue[head]]
        head += 1
        order.append(g)
        for net in g.outputs:
            for j in waiting.pop(net, ()):
                missing[j] -= 1
                if missing[j] == 0:
                    queue.append(j)
    if len(order) != len(comb):
        stuck = [comb[i].name or comb[i].kind.name for i, m in enumerate(missing) if m > 0]
        raise NetlistError(f"combinational loop or undriven input through {len(stuck)} gates, e.g. {stuck[:3]}")
    return order


def area_proxy(netlist: Netlist) -> float:
    """Gate-equivalent area: weighted gate count relative to a NAND2."""
    return float(sum(GE_WEIGHTS[g.kind] for g in netlist.gates))


def net_levels(netlist: Netlist) -> np.ndarray:
    level = np.zeros(netlist.n_nets, dtype=np.int64)
    for g in levelize(netlist):
        lv = max((level[n] for n in g.inputs), default=0) + LEVELS[g.kind]
        for n in g.outputs:
            level[n] = lv
    return level


def critical_depth(netlist: Netlist) -> int:
    """Longest port-to-port or flop-to-flop path in gate levels (HA/FA count 2)."""
    level = net_levels(netlist)
    ends = [n for bits in netlist.outputs.values() for n in bits]
    ends += [g.inputs[0] for g in netlist.flops]
    return int(max((level[n] for n in ends), default=0))
