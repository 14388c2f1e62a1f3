import io

import pytest
from vcd.reader import TokenKind, tokenize

from nibblemul.arith import ArchKind, VectorJob
from nibblemul.engines import run_engine
from nibblemul.nibble import NibbleMode, NibbleSchedule
from nibblemul.trace import TraceShapeError, check_trace_shape, trace_to_csv, trace_to_vcd

JOB8 = VectorJob([0x12, 0xFF, 7, 0, 200, 1, 99, 128], 0x34)


def test_nibble_trace_shape():
    run = run_engine(ArchKind.NIBBLE, JOB8)
    check_trace_shape(run.trace, JOB8)
    assert run.trace.cycles == 16
    assert [r.cycle for r in run.trace.writes()] == list(range(2, 17, 2))
    assert {r.b for r in run.trace.records} == {0x34}


def test_lut_trace_shape():
    run = run_engine(ArchKind.LUT_ARRAY, JOB8)
    check_trace_shape(run.trace, JOB8)
    assert {r.cycle for r in run.trace.writes()} == {1} and len(run.trace.writes()) == 8


def test_shift_add_single_element():
    job = VectorJob([9], 9)
    run = run_engine(ArchKind.SHIFT_ADD, job)
    assert [r.cycle for r in run.trace.writes()] == [8]


@pytest.mark.parametrize("arch", list(ArchKind))
def test_products_from_trace(arch):
    run = run_engine(arch, JOB8)
    assert run.trace.products() == JOB8.expected() == run.products


def test_shape_violations_detected():
    run = run_engine(ArchKind.NIBBLE, JOB8)
    with pytest.raises(TraceShapeError):
        check_trace_shape(run.trace, JOB8, write_cycle=lambda i: 1)
    other = VectorJob(JOB8.a_ops, 0x35)
    with pytest.raises(TraceShapeError):
        check_trace_shape(run.trace, other)


def test_lanes_change_write_schedule():
    mode = NibbleMode(NibbleSchedule.SEQUENTIAL, 4)
    run = run_engine(ArchKind.NIBBLE, JOB8, mode)
    check_trace_shape(run.trace, JOB8, mode.write_cycle)
    assert run.cycles == 4


def test_csv_format():
    text = trace_to_csv(run_engine(ArchKind.NIBBLE, VectorJob([0x12], 0x34)).trace)
    assert text.splitlines()[0] == "cycle,element_index,event,value,b"
    assert "2,0,write_output,936,52" in text.splitlines()


def test_vcd_is_parseable_and_deterministic():
    run = run_engine(ArchKind.NIBBLE, JOB8)
    text = trace_to_vcd(run.trace, JOB8)
    assert text == trace_to_vcd(run_engine(ArchKind.NIBBLE, JOB8).trace, JOB8)
    assert "$timescale 1 ns $end" in text
    times = [t.data for t in tokenize(io.BytesIO(text.encode())) if t.kind is TokenKind.CHANGE_TIME]
    assert times[0] == 0 and times[-1] == 17
