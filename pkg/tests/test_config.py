import pytest
from hypothesis import given
from hypothesis import strategies as st

from nibblemul.arith import ArchKind
from nibblemul.config import (
    ConfigError,
    RunConfig,
    Stimulus,
    exhaustive_jobs,
    format_config,
    load_config,
    parse_config_text,
    random_jobs,
)
from nibblemul.nibble import NibbleSchedule


def test_defaults():
    cfg = RunConfig()
    assert cfg.ns == (4, 8, 16) and cfg.archs == tuple(ArchKind) and cfg.lanes == 1


def test_file_then_overrides(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# comment\narch = nibble, Wallace\nn = 4,8\nseed = 0x10  # trailing\nstimulus = random(50)\n")
    cfg = load_config(path, {"n": "16", "mode": "UnrolledNibbles", "lanes": None})
    assert cfg.archs == (ArchKind.NIBBLE, ArchKind.WALLACE)
    assert cfg.ns == (16,) and cfg.seed == 16 and cfg.stimulus == Stimulus("random", 50)
    assert cfg.mode is NibbleSchedule.UNROLLED


def test_format_round_trip():
    cfg = RunConfig(archs=(ArchKind.BOOTH,), ns=(3, 5), lanes=2, seed=9, stimulus=Stimulus.parse("exhaustive"))
    assert load_config(overrides=parse_config_text(format_config(cfg))) == cfg


@pytest.mark.parametrize("values", [
    {"n": "0"}, {"n": "65"}, {"n": "four"}, {"arch": "dadda"}, {"mode": "fast"}, {"lanes": "0"},
    {"seed": "-1"}, {"seed": str(1 << 64)}, {"stimulus": "random:0"}, {"stimulus": "some"}, {"colour": "red"},
])
def test_bad_values(values):
    with pytest.raises(ConfigError):
        load_config(overrides=values)


def test_bad_lines():
    with pytest.raises(ConfigError):
        parse_config_text("arch nibble\n")
    with pytest.raises(ConfigError):
        parse_config_text("= 3\n")


@given(st.integers(0, 2**64 - 1), st.integers(1, 16))
def test_seed_determines_jobs(seed, n):
    assert random_jobs(seed, n, 5) == random_jobs(seed, n, 5)


def test_exhaustive_jobs_cover_all_pairs():
    for n in (1, 3, 16):
        seen = {(a, j.b) for j in exhaustive_jobs(n) for a in j.a_ops}
        assert len(seen) == 65536
