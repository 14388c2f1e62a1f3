import re

import numpy as np
import pytest

from nibblemul.arith import ArchKind
from nibblemul.bench import simulate_jobs
from nibblemul.config import random_jobs
from nibblemul.netlist.archs import build_netlist, netlist_cycles
from nibblemul.netlist.core import Netlist, NetlistError
from nibblemul.netlist.sim import compile_netlist, simulate_netlist
from nibblemul.netlist.verilog import emit_verilog, parse_verilog
from nibblemul.nibble import NibbleMode, NibbleSchedule


def test_empty_netlist_is_a_legal_module():
    text = emit_verilog(Netlist("empty"))
    assert "module empty (\n);\nendmodule\n" in text
    assert parse_verilog(text).gates == []


def test_wallace_has_64_and2():
    text = emit_verilog(build_netlist(ArchKind.WALLACE, 1))
    assert len(re.findall(r"^  AND2 g\d+ ", text, re.M)) == 64


def test_text_is_deterministic_and_lf():
    a = emit_verilog(build_netlist(ArchKind.NIBBLE, 4))
    b = emit_verilog(build_netlist(ArchKind.NIBBLE, 4))
    assert a == b and "\r" not in a
    assert "always @(posedge clk) if (rst)" in a


@pytest.mark.parametrize("arch", list(ArchKind))
def test_round_trip_matches_function(arch):
    nl = build_netlist(arch, 2)
    back = parse_verilog(emit_verilog(nl))
    jobs = random_jobs(11, 2, 300)
    cycles = netlist_cycles(arch, 2)
    p0, t0 = simulate_jobs(compile_netlist(nl), jobs, cycles)
    p1, t1 = simulate_jobs(compile_netlist(back), jobs, cycles)
    assert np.array_equal(p0, p1) and t0 == t1
    assert np.array_equal(p1, np.array([j.expected() for j in jobs]))


def test_round_trip_unrolled_lanes():
    nl = build_netlist(ArchKind.NIBBLE, 5, NibbleMode(NibbleSchedule.UNROLLED, 2))
    back = parse_verilog(emit_verilog(nl))
    stim = [{"a": 0x0102030405, "b": 0x33}, {"a": 0xFFFFFFFFFF, "b": 0xFF}]
    cycles = netlist_cycles(ArchKind.NIBBLE, 5, NibbleMode(NibbleSchedule.UNROLLED, 2))
    assert simulate_netlist(nl, stim, cycles).outputs == simulate_netlist(back, stim, cycles).outputs


def test_invalid_identifiers():
    with pytest.raises(NetlistError):
        emit_verilog(Netlist("empty"), module_name="3bad")
    with pytest.raises(NetlistError):
        emit_verilog(Netlist("empty"), module_name="module")
    with pytest.raises(NetlistError):
        emit_verilog(Netlist("clkport", 3, {"clk": [2]}, {}, []))


def test_parser_rejects_unknown_lines():
    text = emit_verilog(build_netlist(ArchKind.WALLACE, 1)).replace("endmodule\n", "initial begin end\nendmodule\n")
    with pytest.raises(NetlistError):
        parse_verilog(text.rsplit("module FA", 1)[0] + "module top (\n);\nfoo bar baz\nendmodule\n")
    with pytest.raises(NetlistError):
        parse_verilog("// nothing here\n")
