import pytest

from nibblemul.arith import ArchKind as A
from nibblemul.reference import AREA_UM2, POWER_MW, paper_ratio, paper_reference


@pytest.mark.parametrize("arch,n,area", [
    (A.SHIFT_ADD, 4, 528.57), (A.NIBBLE, 4, 463.55), (A.BOOTH, 4, 465.32), (A.WALLACE, 4, 584.14),
    (A.LUT_ARRAY, 4, 806.78), (A.NIBBLE, 8, 673.60), (A.SHIFT_ADD, 8, 982.42), (A.LUT_ARRAY, 8, 1523.72),
    (A.NIBBLE, 16, 1132.29), (A.WALLACE, 16, 2336.54), (A.LUT_ARRAY, 16, 2954.20),
])
def test_area_values(arch, n, area):
    assert AREA_UM2[(arch, n)] == area


@pytest.mark.parametrize("arch,n,power", [
    (A.SHIFT_ADD, 4, 0.0269), (A.NIBBLE, 4, 0.0325), (A.BOOTH, 4, 0.0257), (A.WALLACE, 4, 0.054),
    (A.LUT_ARRAY, 4, 0.0727), (A.NIBBLE, 8, 0.0442), (A.SHIFT_ADD, 8, 0.051), (A.WALLACE, 8, 0.108),
    (A.LUT_ARRAY, 8, 0.138), (A.NIBBLE, 16, 0.0605), (A.SHIFT_ADD, 16, 0.0988), (A.WALLACE, 16, 0.216),
    (A.LUT_ARRAY, 16, 0.276),
])
def test_power_values(arch, n, power):
    assert POWER_MW[(arch, n)] == power


def test_absent_entries():
    assert len(AREA_UM2) == 11 and len(POWER_MW) == 13
    ref = paper_reference(A.BOOTH, 16)
    assert ref.area_um2 is None and ref.power_mw is None and ref.area_text() == ""
    assert paper_reference(A.SHIFT_ADD, 16).area_um2 is None


def test_quoted_improvement_factors():
    # area 1.14x / 1.46x, power 0.83x / 1.15x / 1.63x for nibble vs shift-add
    assert round(paper_ratio(AREA_UM2, A.NIBBLE, 4), 2) == 1.14
    assert round(paper_ratio(AREA_UM2, A.NIBBLE, 8), 2) == 1.46
    assert [round(paper_ratio(POWER_MW, A.NIBBLE, n), 2) for n in (4, 8, 16)] == [0.83, 1.15, 1.63]
    assert paper_ratio(AREA_UM2, A.NIBBLE, 16) is None
