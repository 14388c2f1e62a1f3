import pytest
from hypothesis import given
from hypothesis import strategies as st

from nibblemul.arith import (
    MAX_VECTOR_LEN,
    PER_OPERAND_CYCLES,
    ArchKind,
    InvalidJobError,
    VectorJob,
    check_nibble,
    oracle_mul,
    split_nibbles,
    vector_latency,
)

operand = st.integers(0, 255)


@pytest.mark.parametrize("a,b,want", [(0, 0, 0), (1, 0xC7, 0xC7), (0xFF, 0xFF, 0xFE01)])
def test_oracle_examples(a, b, want):
    assert oracle_mul(a, b) == want


@given(operand, operand)
def test_oracle_commutes_and_fits(a, b):
    assert oracle_mul(a, b) == oracle_mul(b, a) <= 65025


@pytest.mark.parametrize("a,b", [(-1, 0), (256, 1), (3, 300)])
def test_oracle_rejects_out_of_range(a, b):
    with pytest.raises(InvalidJobError):
        oracle_mul(a, b)


@pytest.mark.parametrize("x,want", [(0x00, (0, 0)), (0x34, (4, 3)), (0xFF, (15, 15))])
def test_split_examples(x, want):
    assert split_nibbles(x) == want


def test_split_round_trip_all():
    for x in range(256):
        lo, hi = split_nibbles(x)
        assert 0 <= lo < 16 and 0 <= hi < 16 and lo + 16 * hi == x


def test_check_nibble():
    assert check_nibble(15) == 15
    with pytest.raises(InvalidJobError):
        check_nibble(16)


@pytest.mark.parametrize("arch,n,want", [
    (ArchKind.SHIFT_ADD, 1, 8),
    (ArchKind.NIBBLE, 16, 32),
    (ArchKind.WALLACE, 8, 1),
])
def test_latency_examples(arch, n, want):
    assert vector_latency(arch, n) == want


def test_latency_table():
    assert PER_OPERAND_CYCLES == {
        ArchKind.SHIFT_ADD: 8, ArchKind.BOOTH: 4, ArchKind.NIBBLE: 2, ArchKind.WALLACE: 1, ArchKind.LUT_ARRAY: 1,
    }


@given(st.sampled_from(list(ArchKind)), st.integers(1, 64))
def test_latency_linear_or_constant(arch, n):
    if arch.is_sequential:
        assert vector_latency(arch, n) == n * vector_latency(arch, 1)
    else:
        assert vector_latency(arch, n) == 1


def test_latency_rejects_zero():
    with pytest.raises(InvalidJobError):
        vector_latency(ArchKind.NIBBLE, 0)


def test_arch_parse_aliases():
    assert ArchKind.parse("LutArray") is ArchKind.LUT_ARRAY
    assert ArchKind.parse("shift-add") is ArchKind.SHIFT_ADD
    assert ArchKind.parse("array") is ArchKind.LUT_ARRAY
    with pytest.raises(InvalidJobError):
        ArchKind.parse("dadda")


def test_vector_job_validation():
    job = VectorJob([1, 2, 3], 5)
    assert job.n == 3 and job.expected() == [5, 10, 15]
    with pytest.raises(InvalidJobError):
        VectorJob([], 1)
    with pytest.raises(InvalidJobError):
        VectorJob([0] * (MAX_VECTOR_LEN + 1), 1)
    with pytest.raises(InvalidJobError):
        VectorJob([256], 1)
    with pytest.raises(InvalidJobError):
        VectorJob([1], -1)
