"""Published synthesis results for the five multipliers (TSMC 28 nm, 1 GHz).

Only the entries stated in the text are recorded; everything else is ``None``.
These are reference columns for reports, never inputs to a computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import ArchKind

REFERENCE_SIZES = (4, 8, 16)

_A = ArchKind

AREA_UM2: dict[tuple[ArchKind, int], float] = {
    (_A.SHIFT_ADD, 4): 528.57,
    (_A.NIBBLE, 4): 463.55,
    (_A.BOOTH, 4): 465.32,
    (_A.WALLACE, 4): 584.14,
    (_A.LUT_ARRAY, 4): 806.78,
    (_A.NIBBLE, 8): 673.60,
    (_A.SHIFT_ADD, 8): 982.42,
    (_A.LUT_ARRAY, 8): 1523.72,
    (_A.NIBBLE, 16): 1132.29,
    (_A.WALLACE, 16): 2336.54,
    (_A.LUT_ARRAY, 16): 2954.20,
}

POWER_MW: dict[tuple[ArchKind, int], float] = {
    (_A.SHIFT_ADD, 4): 0.0269,
    (_A.NIBBLE, 4): 0.0325,
    (_A.BOOTH, 4): 0.0257,
    (_A.WALLACE, 4): 0.054,
    (_A.LUT_ARRAY, 4): 0.0727,
    (_A.NIBBLE, 8): 0.0442,
    (_A.SHIFT_ADD, 8): 0.051,
    (_A.WALLACE, 8): 0.108,
    (_A.LUT_ARRAY, 8): 0.138,
    (_A.NIBBLE, 16): 0.0605,
    (_A.SHIFT_ADD, 16): 0.0988,
    (_A.WALLACE, 16): 0.216,
    (_A.LUT_ARRAY, 16): 0.276,
}

# Printed with the digits the text quotes them with.
_AREA_TEXT = {k: f"{v:.2f}" for k, v in AREA_UM2.items()}
_POWER_TEXT = {k: repr(v) for k, v in POWER_MW.items()}


@dataclass(frozen=True)
class PaperReference:
    arch: ArchKind
    n: int
    area_um2: float | None
    power_mw: float | None

    @property
    def complete(self) -> bool:
        return self.area_um2 is not None and self.power_mw is not None

    def area_text(self) -> str:
        return _AREA_TEXT.get((self.arch, self.n), "")

    def power_text(self) -> str:
        return _POWER_TEXT.get((self.arch, self.n), "")


def paper_reference(arch: ArchKind, n: int) -> PaperReference:
    arch = ArchKind(arch)
    return PaperReference(arch, n, AREA_UM2.get((arch, n)), POWER_MW.get((arch, n)))


def paper_ratio(table: dict, arch: ArchKind, n: int) -> float | None:
    """Shift-add value divided by ``arch``'s value, or None when either is missing."""
    base, val = table.get((ArchKind.SHIFT_ADD, n)), table.get((ArchKind(arch), n))
    if base is None or val is None:
        return None
    return base / val
