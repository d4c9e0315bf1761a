"""Dense bitmask helpers.

Subsets of a finite abelian group are stored as arbitrary-precision Python
integers: bit ``i`` is set iff the element with index ``i`` belongs to the
set.  All sumset kernels reduce to shifts/AND/OR on these masks, which the
int type performs word-parallel.
"""

from __future__ import annotations

from typing import Iterator


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def repeat_block(block: int, block_bits: int, count: int) -> int:
    """Concatenate ``count`` copies of a ``block_bits``-wide block.

    Uses the geometric-series identity (2^(w*c) - 1) / (2^w - 1) to build the
    repetition pattern with O(log) big-int operations.
    """
    if count == 0 or block == 0:
        return 0
    ones = ((1 << (block_bits * count)) - 1) // ((1 << block_bits) - 1)
    return block * ones
