import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nibblemul.arith import InvalidJobError, VectorJob
from nibblemul.lut_array import (
    DEFAULT_LUT,
    HexLut,
    LmInput,
    LmOutput,
    build_res_string,
    extract_slice,
    lm_multiply,
    lut_array_multiply,
    lut_products,
    run_lut_array,
)


def reference_string(b):
    # independent construction: byte k holds (k + 1) * b
    return int.from_bytes(bytes((k + 1) * b for k in range(15)), "little")


def test_res_string_matches_reference():
    for b in range(16):
        assert build_res_string(b) == reference_string(b)


def test_res_string_examples():
    assert build_res_string(0) == 0
    s1 = build_res_string(1)
    assert [(s1 >> (8 * k)) & 0xFF for k in range(15)] == list(range(1, 16))
    assert extract_slice(build_res_string(13), 11) == 0x8F


@pytest.mark.parametrize("s,a,want", [
    (build_res_string(9), 0, 0),
    (build_res_string(7), 9, 0x3F),
    (build_res_string(15), 15, 0xE1),
])
def test_extract_examples(s, a, want):
    assert extract_slice(s, a) == want


def test_lut_soundness_exhaustive():
    for b in range(16):
        s = build_res_string(b)
        assert s < 1 << 120
        for a in range(16):
            assert extract_slice(s, a) == a * b


def test_hex_lut_shape():
    lut = HexLut()
    assert len(lut) == 16 and lut[0] == 0
    assert lut.storage_bits == 16 * 120 == 240 * 8
    assert np.array_equal(lut.slice_table(), np.outer(np.arange(16), np.arange(16)))


@pytest.mark.parametrize("a16,b,want", [
    (0x0000, 0x00, (0, 0)),
    (0xFFFF, 0xFF, (0xFE01, 0xFE01)),
    (0x1203, 0x25, (0x006F, 0x029A)),
])
def test_lm_examples(a16, b, want):
    assert lm_multiply(LmInput(a16, b)) == LmOutput(*want)


@given(st.integers(0, 0xFFFF), st.integers(0, 255))
def test_lm_matches_oracle(a16, b):
    out = lm_multiply(LmInput(a16, b))
    assert out == ((a16 & 0xFF) * b, (a16 >> 8) * b)


def test_lm_low_byte_sweep_every_b():
    rng = np.random.default_rng(5)
    for b in range(256):
        lo = np.arange(256)
        hi = rng.integers(0, 256, 256)
        got = lut_products(lo, b), lut_products(hi, b)
        assert np.array_equal(got[0], lo * b) and np.array_equal(got[1], hi * b)
    for a16, b in zip(rng.integers(0, 1 << 16, 2000), rng.integers(0, 256, 2000)):
        assert lm_multiply(LmInput(int(a16), int(b))) == ((a16 & 0xFF) * b, (a16 >> 8) * b)


def test_lm_rejects_wide_word():
    with pytest.raises(InvalidJobError):
        lm_multiply(LmInput(1 << 16, 1))


@pytest.mark.parametrize("a,b,want", [
    ([1, 2, 3, 4], 5, [5, 10, 15, 20]),
    ([9, 9, 9], 0, [0, 0, 0]),
    ([0xFF] * 8, 0xFF, [0xFE01] * 8),
])
def test_array_examples(a, b, want):
    assert lut_array_multiply(VectorJob(a, b)) == want


@given(st.lists(st.integers(0, 255), min_size=1, max_size=64), st.integers(0, 255))
def test_array_reuse_and_single_cycle(a, b):
    run = run_lut_array(VectorJob(a, b))
    assert run.products == [x * b for x in a]
    assert run.lookups == 2
    assert run.cycles == 1
    assert run.lm_blocks == (len(a) + 1) // 2


def test_vectorised_model_exhaustive(all_pairs):
    a, b = all_pairs
    assert np.array_equal(lut_products(a, b, DEFAULT_LUT), a * b)
