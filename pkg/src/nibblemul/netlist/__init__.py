"""Gate-level netlists: construction, cost proxies, simulation and Verilog."""

from .archs import build_netlist, netlist_cycles
from .core import GE_WEIGHTS, Gate, GateKind, Netlist, NetlistError, area_proxy, critical_depth
from .sim import SimResult, default_kernel, simulate_netlist
from .verilog import emit_verilog, parse_verilog

__all__ = [
    "build_netlist", "netlist_cycles",
    "GE_WEIGHTS", "Gate", "GateKind", "Netlist", "NetlistError", "area_proxy", "critical_depth",
    "SimResult", "default_kernel", "simulate_netlist",
    "emit_verilog", "parse_verilog",
]
