"""Structural Verilog-2001 emission and a parser for the same subset.

The emitted file inlines a small primitive library (AND2 ... FA) and one top
module.  Flops are ``always`` blocks on ``clk`` with synchronous ``rst``
loading their reset value.  :func:`parse_verilog` reads exactly this subset
back into a :class:`Netlist`.
"""

from __future__ import annotations

import re

from .core import CONST0, CONST1, Gate, GateKind, Netlist, NetlistError

PRIMITIVES = """\
module AND2 (input A, input B, output Y); assign Y = A & B; endmodule
module OR2 (input A, input B, output Y); assign Y = A | B; endmodule
module XOR2 (input A, input B, output Y); assign Y = A ^ B; endmodule
module NAND2 (input A, input B, output Y); assign Y = ~(A & B); endmodule
module NOR2 (input A, input B, output Y); assign Y = ~(A | B); endmodule
module INV (input A, output Y); assign Y = ~A; endmodule
module MUX2 (input D0, input D1, input S, output Y); assign Y = S ? D1 : D0; endmodule
module HA (input A, input B, output S, output CO); assign S = A ^ B; assign CO = A & B; endmodule
module FA (input A, input B, input CI, output S, output CO); assign S = A ^ B ^ CI; assign CO = (A & B) | (CI & (A ^ B)); endmodule
"""

PINS = {
    GateKind.AND2: (("A", "B"), ("Y",)),
    GateKind.OR2: (("A", "B"), ("Y",)),
    GateKind.XOR2: (("A", "B"), ("Y",)),
    GateKind.NAND2: (("A", "B"), ("Y",)),
    GateKind.NOR2: (("A", "B"), ("Y",)),
    GateKind.INV: (("A",), ("Y",)),
    GateKind.MUX2: (("D0", "D1", "S"), ("Y",)),
    GateKind.HA: (("A", "B"), ("S", "CO")),
    GateKind.FA: (("A", "B", "CI"), ("S", "CO")),
}

_KEYWORDS = {
    "always", "assign", "begin", "case", "else", "end", "endcase", "endmodule", "for", "function",
    "if", "initial", "inout", "input", "integer", "module", "negedge", "output", "parameter",
    "posedge", "reg", "wire",
}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_$]*\Z")
_RESERVED_PORTS = {"clk", "rst"}


def check_identifier(name: str) -> str:
    if not _IDENT.match(name) or name in _KEYWORDS or name in {k.name for k in PINS}:
        raise NetlistError(f"invalid Verilog identifier {name!r}")
    return name


def _ref(net: int) -> str:
    if net == CONST0:
        return "1'b0"
    if net == CONST1:
        return "1'b1"
    return f"n{net}"


def emit_verilog(netlist: Netlist, module_name: str | None = None) -> str:
    """Render ``netlist`` as deterministic structural Verilog text (LF line endings)."""
    name = check_identifier(module_name or netlist.name)
    for port in list(netlist.inputs) + list(netlist.outputs):
        check_identifier(port)
        if port in _RESERVED_PORTS:
            raise NetlistError(f"port name {port!r} is reserved for the clock/reset")
    flops = netlist.flops

    ports = []
    if flops:
        ports += ["input clk", "input rst"]
    ports += [f"input [{len(bits) - 1}:0] {p}" for p, bits in netlist.inputs.items()]
    ports += [f"output [{len(bits) - 1}:0] {p}" for p, bits in netlist.outputs.items()]

    lines = ["// structural netlist emitted by nibblemul", PRIMITIVES.rstrip("\n"), ""]
    lines.append(f"module {name} (")
    lines += [f"  {p}{',' if i < len(ports) - 1 else ''}" for i, p in enumerate(ports)]
    lines.append(");")

    pi_nets = [n for bits in netlist.inputs.values() for n in bits]
    gate_nets = [n for g in netlist.gates if g.kind is not GateKind.DFF for n in g.outputs]
    for net in pi_nets + gate_nets:
        lines.append(f"  wire n{net};")
    for g in flops:
        lines.append(f"  reg n{g.outputs[0]};")
    for port, bits in netlist.inputs.items():
        for k, net in enumerate(bits):
            lines.append(f"  assign n{net} = {port}[{k}];")
    for idx, g in enumerate(netlist.gates):
        if g.kind is GateKind.DFF:
            continue
        ins, outs = PINS[g.kind]
        conns = [f".{pin}({_ref(n)})" for pin, n in zip(ins, g.inputs)]
        conns += [f".{pin}({_ref(n)})" for pin, n in zip(outs, g.outputs)]
        lines.append(f"  {g.kind.name} g{idx} ({', '.join(conns)});")
    for g in flops:
        q = g.outputs[0]
        lines.append(
            f"  always @(posedge clk) if (rst) n{q} <= 1'b{g.init}; else n{q} <= {_ref(g.inputs[0])};"
            + (f" // {g.name}" if g.name else "")
        )
    for port, bits in netlist.outputs.items():
        for k, net in enumerate(bits):
            lines.append(f"  assign {port}[{k}] = {_ref(net)};")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


_RE_MODULE = re.compile(r"^module\s+(\w+)\s*\(\s*$")
_RE_PORT = re.compile(r"^(input|output)\s+(?:\[(\d+):0\]\s+)?(\w+),?$")
_RE_DECL = re.compile(r"^(wire|reg)\s+(\w+);$")
_RE_IN_ASSIGN = re.compile(r"^assign\s+(\w+)\s*=\s*(\w+)\[(\d+)\];$")
_RE_OUT_ASSIGN = re.compile(r"^assign\s+(\w+)\[(\d+)\]\s*=\s*(\w+|1'b[01]);$")
_RE_INST = re.compile(r"^(\w+)\s+(\w+)\s*\((.*)\);$")
_RE_CONN = re.compile(r"\.(\w+)\(([^)]*)\)")
_RE_ALWAYS = re.compile(
    r"^always\s+@\(posedge clk\)\s+if\s+\(rst\)\s+(\w+)\s*<=\s*1'b([01]);\s+else\s+(\w+)\s*<=\s*(\w+|1'b[01]);(?:\s*//\s*(\S+))?$"
)


def parse_verilog(text: str) -> Netlist:
    """Parse the top module of text produced by :func:`emit_verilog`."""
    body: list[str] = []
    top = None
    in_top = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("//"):
            continue
        m = _RE_MODULE.match(line)
        if m:
            top, in_top = m.group(1), True
            continue
        if in_top:
            if line == "endmodule":
                in_top = False
                continue
            body.append(line)
    if top is None:
        raise NetlistError("no top module found")

    nl = Netlist(top)
    nets: dict[str, int] = {"1'b0": CONST0, "1'b1": CONST1}
    widths: dict[str, tuple[str, int]] = {}
    in_bits: dict[str, dict[int, int]] = {}
    out_bits: dict[str, dict[int, int]] = {}

    def net(name: str) -> int:
        if name not in nets:
            nets[name] = nl.n_nets
            nl.n_nets += 1
        return nets[name]

    pending_flops = []
    for line in body:
        if line == ");":
            continue
        if m := _RE_PORT.match(line):
            direction, msb, name = m.groups()
            if name in _RESERVED_PORTS and msb is None:
                continue
            widths[name] = (direction, int(msb or 0) + 1)
            (in_bits if direction == "input" else out_bits)[name] = {}
        elif m := _RE_DECL.match(line):
            net(m.group(2))
        elif m := _RE_IN_ASSIGN.match(line):
            lhs, port, k = m.groups()
            if port not in in_bits:
                raise NetlistError(f"assignment from unknown input {port!r}")
            in_bits[port][int(k)] = net(lhs)
        elif m := _RE_OUT_ASSIGN.match(line):
            port, k, rhs = m.groups()
            if port not in out_bits:
                raise NetlistError(f"assignment to unknown output {port!r}")
            out_bits[port][int(k)] = net(rhs)
        elif m := _RE_ALWAYS.match(line):
            q, init, q2, d, label = m.groups()
            if q != q2:
                raise NetlistError(f"flop assigns two different regs: {line}")
            pending_flops.append((net(q), d, int(init), label or ""))
        elif m := _RE_INST.match(line):
            kind_name, inst, conns = m.groups()
            try:
                kind = GateKind[kind_name]
                ins, outs = PINS[kind]
            except KeyError:
                raise NetlistError(f"unknown primitive {kind_name!r}") from None
            pins = dict(_RE_CONN.findall(conns))
            if set(pins) != set(ins) | set(outs):
                raise NetlistError(f"instance {inst} has pins {sorted(pins)}, expected {sorted(ins + outs)}")
            nl.gates.append(Gate(kind, tuple(net(pins[p].strip()) for p in ins), tuple(net(pins[p].strip()) for p in outs), inst))
        else:
            raise NetlistError(f"unsupported Verilog line: {line}")

    for q, d, init, label in pending_flops:
        nl.gates.append(Gate(GateKind.DFF, (net(d),), (q,), label, init))
    for store, target in ((in_bits, nl.inputs), (out_bits, nl.outputs)):
        for port, bits in store.items():
            width = widths[port][1]
            if sorted(bits) != list(range(width)):
                raise NetlistError(f"port {port} is not fully connected")
            target[port] = [bits[k] for k in range(width)]
    nl.validate()
    return nl
