"""Column compression shared by the functional Wallace model and the netlist builders.

Both callers hand in full/half-adder callbacks, so the same reduction
schedule produces either bit values or gates.
"""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

FullAdd = Callable[[T, T, T], "tuple[T, T]"]
HalfAdd = Callable[[T, T], "tuple[T, T]"]


def dadda_targets(height: int) -> list[int]:
    """Row-count targets for each stage, e.g. ``8 -> [6, 4, 3, 2]``."""
    seq = [2]
    while seq[-1] < height:
        seq.append(seq[-1] * 3 // 2)
    return [d for d in reversed(seq) if d < height]


def dadda_reduce(columns: Sequence[Sequence[T]], fa: FullAdd, ha: HalfAdd) -> tuple[list[list[T]], list[int]]:
    """Reduce bit columns (LSB first) to at most two rows.

    Returns the reduced columns and the maximum column height after each
    stage.  Carries out of the top column extend the column list.
    """
    cols = [list(c) for c in columns]
    heights = [max((len(c) for c in cols), default=0)]
    for d in dadda_targets(heights[0]):
        new: list[list[T]] = [[] for _ in range(len(cols) + 1)]
        for i, bits in enumerate(cols):
            bits = list(bits)
            h = len(bits) + len(new[i])
            while h > d:
                if h - d >= 2 and len(bits) >= 3:
                    s, c = fa(bits.pop(0), bits.pop(0), bits.pop(0))
                    h -= 2
                elif len(bits) >= 2:
                    s, c = ha(bits.pop(0), bits.pop(0))
                    h -= 1
                else:
                    break
                new[i].append(s)
                new[i + 1].append(c)
            new[i].extend(bits)
        while new and not new[-1]:
            new.pop()
        cols = new
        heights.append(max(len(c) for c in cols))
    return cols, heights


def ripple_columns(columns: Sequence[Sequence[T]], fa: FullAdd, ha: HalfAdd, width: int, zero: T) -> list[T]:
    """Carry-propagate add of columns holding at most two bits each."""
    out: list[T] = []
    carry = None
    for i in range(width):
        bits = list(columns[i]) if i < len(columns) else []
        if carry is not None:
            bits.append(carry)
        if len(bits) > 3:
            raise ValueError(f"column {i} has {len(bits)} bits; reduce first")
        if len(bits) == 3:
            s, carry = fa(*bits)
        elif len(bits) == 2:
            s, carry = ha(*bits)
        elif len(bits) == 1:
            s, carry = bits[0], None
        else:
            s, carry = zero, None
        out.append(s)
    return out
