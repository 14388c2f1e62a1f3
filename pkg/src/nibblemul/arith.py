"""Operand types, nibble decomposition, the reference multiply and the latency model.

Operands are plain ``int`` values (or numpy integer arrays where a function says
so); the helpers here only enforce ranges.  Everything is unsigned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

NIBBLE_MAX = 0xF
OPERAND_MAX = 0xFF
PRODUCT_MAX = 0xFFFF
MAX_VECTOR_LEN = 64


class InvalidJobError(ValueError):
    """Raised for malformed operands or vector jobs (empty, too long, out of range)."""


class ArchKind(str, enum.Enum):
    SHIFT_ADD = "shiftadd"
    BOOTH = "booth"
    NIBBLE = "nibble"
    WALLACE = "wallace"
    LUT_ARRAY = "lutarray"

    @classmethod
    def parse(cls, text: str) -> "ArchKind":
        key = text.strip().lower().replace("-", "").replace("_", "")
        for kind in cls:
            if kind.value == key or kind.name.replace("_", "").lower() == key:
                return kind
        if key in ("array", "lut"):
            return cls.LUT_ARRAY
        raise InvalidJobError(f"unknown architecture {text!r}")

    @property
    def is_sequential(self) -> bool:
        return self in (ArchKind.SHIFT_ADD, ArchKind.BOOTH, ArchKind.NIBBLE)


# cycles per 8-bit operand
PER_OPERAND_CYCLES: dict[ArchKind, int] = {
    ArchKind.SHIFT_ADD: 8,
    ArchKind.BOOTH: 4,
    ArchKind.NIBBLE: 2,
    ArchKind.WALLACE: 1,
    ArchKind.LUT_ARRAY: 1,
}


def check_nibble(x: int) -> int:
    if not 0 <= x <= NIBBLE_MAX:
        raise InvalidJobError(f"nibble out of range: {x}")
    return x


def check_operand(x: int) -> int:
    if not 0 <= x <= OPERAND_MAX:
        raise InvalidJobError(f"8-bit operand out of range: {x}")
    return x


def oracle_mul(a: int, b: int) -> int:
    """Exact product of two unsigned 8-bit operands; the ground truth for every engine."""
    return check_operand(a) * check_operand(b)


def split_nibbles(x):
    """Return ``(lo, hi)`` nibbles of an 8-bit value.  Works elementwise on arrays."""
    return x & 0xF, (x >> 4) & 0xF


def vector_latency(arch: ArchKind, n: int) -> int:
    """Total cycles for an ``n``-element vector job on a single datapath."""
    if n < 1:
        raise InvalidJobError(f"vector length must be >= 1, got {n}")
    arch = ArchKind(arch)
    if arch.is_sequential:
        return PER_OPERAND_CYCLES[arch] * n
    return 1


@dataclass(frozen=True)
class VectorJob:
    """Vector of 8-bit A operands multiplied by one broadcast 8-bit scalar B."""

    a_ops: tuple[int, ...]
    b: int

    def __init__(self, a_ops: Sequence[int], b: int):
        ops = tuple(int(x) for x in a_ops)
        if not 1 <= len(ops) <= MAX_VECTOR_LEN:
            raise InvalidJobError(f"vector length must be in 1..{MAX_VECTOR_LEN}, got {len(ops)}")
        for x in ops:
            check_operand(x)
        object.__setattr__(self, "a_ops", ops)
        object.__setattr__(self, "b", check_operand(int(b)))

    @property
    def n(self) -> int:
        return len(self.a_ops)

    def expected(self) -> list[int]:
        return [oracle_mul(a, self.b) for a in self.a_ops]
