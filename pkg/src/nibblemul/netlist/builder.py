"""Netlist construction with constant folding and structural hashing.

The helpers fold gates whose result is already known (``AND(x, 0)``,
``MUX(x, x, s)``, half adders fed by a constant, ...) and reuse an existing
gate when the same kind is applied to the same inputs, which is roughly what
a synthesis front end does before mapping.
"""

from __future__ import annotations

from typing import Sequence

from ..compress import dadda_reduce, ripple_columns
from .core import ARITY, CONST0, CONST1, Gate, GateKind, Netlist, NetlistError

_COMMUTATIVE = {GateKind.AND2, GateKind.OR2, GateKind.XOR2, GateKind.NAND2, GateKind.NOR2, GateKind.HA, GateKind.FA}


class NetlistBuilder:
    def __init__(self, name: str):
        self.netlist = Netlist(name)
        self._strash: dict[tuple, tuple[int, ...]] = {}
        self._inv_of: dict[int, int] = {}
        self._open_flops: dict[int, int] = {}

    # -- nets and ports ------------------------------------------------------

    def new_net(self) -> int:
        net = self.netlist.n_nets
        self.netlist.n_nets += 1
        return net

    def add_input(self, name: str, width: int) -> list[int]:
        if name in self.netlist.inputs:
            raise NetlistError(f"duplicate input port {name}")
        bits = [self.new_net() for _ in range(width)]
        self.netlist.inputs[name] = bits
        return bits

    def add_output(self, name: str, bits: Sequence[int]) -> None:
        if name in self.netlist.outputs:
            raise NetlistError(f"duplicate output port {name}")
        self.netlist.outputs[name] = list(bits)

    def build(self) -> Netlist:
        if self._open_flops:
            raise NetlistError(f"{len(self._open_flops)} flops have no D input")
        self.netlist.validate()
        return self.netlist

    # -- raw gates -----------------------------------------------------------

    def _emit(self, kind: GateKind, ins: Sequence[int]) -> tuple[int, ...]:
        ins = tuple(ins)
        key = (kind, tuple(sorted(ins)) if kind in _COMMUTATIVE else ins)
        hit = self._strash.get(key)
        if hit is not None:
            return hit
        outs = tuple(self.new_net() for _ in range(ARITY[kind][1]))
        self.netlist.gates.append(Gate(kind, ins, outs, f"g{len(self.netlist.gates)}"))
        self._strash[key] = outs
        return outs

    # -- folded logic --------------------------------------------------------

    def inv(self, x: int) -> int:
        if x in (CONST0, CONST1):
            return CONST1 - x
        if x in self._inv_of:
            return self._inv_of[x]
        (y,) = self._emit(GateKind.INV, (x,))
        self._inv_of[y] = x
        self._inv_of[x] = y
        return y

    def _complements(self, x: int, y: int) -> bool:
        return self._inv_of.get(x) == y

    def and2(self, x: int, y: int) -> int:
        if CONST0 in (x, y) or self._complements(x, y):
            return CONST0
        if x == CONST1 or x == y:
            return y
        if y == CONST1:
            return x
        return self._emit(GateKind.AND2, (x, y))[0]

    def or2(self, x: int, y: int) -> int:
        if CONST1 in (x, y) or self._complements(x, y):
            return CONST1
        if x == CONST0 or x == y:
            return y
        if y == CONST0:
            return x
        return self._emit(GateKind.OR2, (x, y))[0]

    def xor2(self, x: int, y: int) -> int:
        if x == y:
            return CONST0
        if self._complements(x, y):
            return CONST1
        if x == CONST0:
            return y
        if y == CONST0:
            return x
        if x == CONST1:
            return self.inv(y)
        if y == CONST1:
            return self.inv(x)
        return self._emit(GateKind.XOR2, (x, y))[0]

    def nand2(self, x: int, y: int) -> int:
        if CONST0 in (x, y) or CONST1 in (x, y) or x == y:
            return self.inv(self.and2(x, y))
        return self._emit(GateKind.NAND2, (x, y))[0]

    def nor2(self, x: int, y: int) -> int:
        if CONST0 in (x, y) or CONST1 in (x, y) or x == y:
            return self.inv(self.or2(x, y))
        return self._emit(GateKind.NOR2, (x, y))[0]

    def mux2(self, d0: int, d1: int, s: int) -> int:
        """``s ? d1 : d0``."""
        if s == CONST0 or d0 == d1:
            return d0
        if s == CONST1:
            return d1
        if (d0, d1) == (CONST0, CONST1):
            return s
        if (d0, d1) == (CONST1, CONST0):
            return self.inv(s)
        if d0 == CONST0:
            return self.and2(s, d1)
        if d1 == CONST1:
            return self.or2(s, d0)
        if d1 == CONST0:
            return self.and2(self.inv(s), d0)
        if d0 == CONST1:
            return self.or2(self.inv(s), d1)
        return self._emit(GateKind.MUX2, (d0, d1, s))[0]

    def ha(self, x: int, y: int) -> tuple[int, int]:
        if x == CONST0:
            return y, CONST0
        if y == CONST0:
            return x, CONST0
        if x == y:
            return CONST0, x
        if x == CONST1:
            return self.inv(y), y
        if y == CONST1:
            return self.inv(x), x
        s, c = self._emit(GateKind.HA, (x, y))
        return s, c

    def fa(self, x: int, y: int, z: int) -> tuple[int, int]:
        ins = [x, y, z]
        if CONST0 in ins:
            ins.remove(CONST0)
            return self.ha(*ins)
        if CONST1 in ins:
            ins.remove(CONST1)
            p, q = ins
            return self.inv(self.xor2(p, q)), self.or2(p, q)
        if x == y:
            return z, x
        if x == z or y == z:
            return (y if x == z else x), z
        s, c = self._emit(GateKind.FA, (x, y, z))
        return s, c

    # -- state ---------------------------------------------------------------

    def dff(self, name: str, init: int = 0) -> int:
        """Create a flop now and connect its D input later with :meth:`connect`."""
        q = self.new_net()
        self._open_flops[q] = len(self.netlist.gates)
        self.netlist.gates.append(Gate(GateKind.DFF, (CONST0,), (q,), name, init))
        return q

    def connect(self, q: int, d: int) -> None:
        idx = self._open_flops.pop(q)
        g = self.netlist.gates[idx]
        self.netlist.gates[idx] = Gate(GateKind.DFF, (d,), g.outputs, g.name, g.init)

    # -- words ---------------------------------------------------------------

    def mux_word(self, d0: Sequence[int], d1: Sequence[int], s: int) -> list[int]:
        return [self.mux2(x, y, s) for x, y in zip(d0, d1)]

    def and_word(self, word: Sequence[int], en: int) -> list[int]:
        return [self.and2(x, en) for x in word]

    def onehot_select(self, sel: Sequence[int], words: Sequence[Sequence[int]]) -> list[int]:
        """AND-OR selection of ``words[i]`` where ``sel`` is one-hot."""
        width = len(words[0])
        return [self.or_tree([self.and2(s, w[k]) for s, w in zip(sel, words)]) for k in range(width)]

    def or_tree(self, nets: Sequence[int]) -> int:
        nets = [n for n in nets if n != CONST0]
        if not nets:
            return CONST0
        while len(nets) > 1:
            pairs = [self.or2(nets[i], nets[i + 1]) for i in range(0, len(nets) - 1, 2)]
            nets = pairs + ([nets[-1]] if len(nets) % 2 else [])
        return nets[0]

    def register(self, name: str, d: Sequence[int], en: int = CONST1, init: int = 0) -> list[int]:
        """Word register with synchronous load enable."""
        qs = [self.dff(f"{name}_{k}", (init >> k) & 1) for k in range(len(d))]
        for q, x in zip(qs, d):
            self.connect(q, self.mux2(q, x, en))
        return qs

    def ring(self, name: str, size: int, advance: int = CONST1) -> list[int]:
        """One-hot ring counter, position 0 hot after reset.  A ring of one is constant 1."""
        if size == 1:
            return [CONST1]
        qs = [self.dff(f"{name}_{k}", 1 if k == 0 else 0) for k in range(size)]
        for k, q in enumerate(qs):
            self.connect(q, self.mux2(q, qs[k - 1], advance))
        return qs

    # -- arithmetic ----------------------------------------------------------

    def add_columns(self, columns: Sequence[Sequence[int]], width: int) -> list[int]:
        cols = [[n for n in c if n != CONST0] for c in columns]
        reduced, _ = dadda_reduce(cols, self.fa, self.ha)
        return ripple_columns(reduced, self.fa, self.ha, width, CONST0)

    def add_operands(self, operands: Sequence[tuple[Sequence[int], int]], width: int) -> list[int]:
        """Sum of ``(bits, shift)`` operands truncated to ``width`` bits."""
        cols: list[list[int]] = [[] for _ in range(width)]
        for bits, shift in operands:
            for k, net in enumerate(bits):
                if k + shift < width:
                    cols[k + shift].append(net)
        return self.add_columns(cols, width)
