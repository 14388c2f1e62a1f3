import re

import pytest

from nibblemul.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from nibblemul.netlist.verilog import parse_verilog


def test_exit_codes_distinct():
    assert len({EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_VERIFY}) == 4


def test_verify_nibble_exhaustive(tmp_path, capsys):
    rc = main(["verify", "--arch", "nibble", "--stimulus", "exhaustive", "--n", "1,4", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "functional nibble: 65536/65536 matches" in out
    report = (tmp_path / "verify_report.txt").read_text()
    assert "overall: PASS" in report


def test_verify_failure_exit(tmp_path, monkeypatch):
    import nibblemul.verify as verify

    monkeypatch.setattr(verify, "lut_suite", lambda: verify.SuiteResult("lut slices", 255, 256))
    assert main(["verify", "--arch", "wallace", "--n", "1", "--stimulus", "random:10", "--out", str(tmp_path)]) == EXIT_VERIFY


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "0"],
    ["emit", "--arch", "bogus", "--n", "1"],
    ["emit", "--arch", "nibble,wallace", "--n", "1"],
    ["trace", "--arch", "nibble", "--n", "2", "--a", "1,2,3"],
    ["bench", "--stimulus", "random"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path)] if argv and argv[0] != "frobnicate" else argv) == EXIT_USAGE


def test_io_errors(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["bench", "--config", str(tmp_path / "missing.cfg")]) == EXIT_IO
    assert main(["emit", "--arch", "wallace", "--n", "1", "--out", str(blocker / "sub")]) == EXIT_IO


def test_bench_writes_identical_csv(tmp_path):
    cfg = tmp_path / "bench.cfg"
    cfg.write_text("n = 4\nstimulus = random:80\nseed = 12345\n")
    for d in ("x", "y"):
        assert main(["bench", "--config", str(cfg), "--out", str(tmp_path / d)]) == EXIT_OK
    assert (tmp_path / "x" / "bench.csv").read_bytes() == (tmp_path / "y" / "bench.csv").read_bytes()
    assert (tmp_path / "x" / "bench.txt").exists()


def test_trace_files(tmp_path, capsys):
    assert main(["trace", "--arch", "nibble", "--n", "8", "--seed", "4", "--out", str(tmp_path)]) == EXIT_OK
    csv_text = (tmp_path / "trace_nibble_n8.csv").read_text()
    writes = [int(line.split(",")[0]) for line in csv_text.splitlines() if ",write_output," in line]
    assert writes == list(range(2, 17, 2))
    vcd = (tmp_path / "trace_nibble_n8.vcd").read_bytes()
    assert main(["trace", "--arch", "nibble", "--n", "8", "--seed", "4", "--out", str(tmp_path)]) == EXIT_OK
    assert (tmp_path / "trace_nibble_n8.vcd").read_bytes() == vcd


def test_trace_explicit_job(tmp_path, capsys):
    assert main(["trace", "--arch", "lutarray", "--a", "1,2,3,4,5,6,7,8", "--b", "0xff", "--out", str(tmp_path)]) == EXIT_OK
    assert "0@1, 1@1" in capsys.readouterr().out
    assert main(["trace", "--arch", "shiftadd", "--a", "3", "--b", "5", "--out", str(tmp_path)]) == EXIT_OK
    assert "8,0,write_output,15,5" in (tmp_path / "trace_shiftadd_n1.csv").read_text()


def test_emit(tmp_path):
    assert main(["emit", "--arch", "wallace", "--n", "1", "--out", str(tmp_path)]) == EXIT_OK
    text = (tmp_path / "wallace_n1.v").read_text()
    assert len(re.findall(r"^  AND2 ", text, re.M)) == 64
    target = tmp_path / "nib.v"
    assert main(["emit", "--arch", "nibble", "--n", "4", "--out", str(target)]) == EXIT_OK
    first = target.read_bytes()
    assert main(["emit", "--arch", "nibble", "--n", "4", "--out", str(target)]) == EXIT_OK
    assert target.read_bytes() == first
    assert parse_verilog(first.decode()).name == "nibble_seq_n4_l1"
