"""Bitmask helpers for coordinate sets and cube vertices.

Coordinates are numbered 1..n; coordinate i lives in bit i-1. Both vertices
of the n-cube and sets of coordinates are plain Python ints, so union,
intersection and symmetric difference are ``|``, ``&`` and ``^``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def bit(coord: int) -> int:
    """Mask with only coordinate ``coord`` (1-based) set."""
    if coord < 1:
        raise ValueError(f"coordinates are 1-based, got {coord}")
    return 1 << (coord - 1)


def full_mask(n: int) -> int:
    """Mask of all n coordinates, i.e. the vertex antipodal to 0."""
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest_coord(mask: int) -> int:
    """Smallest coordinate in a nonempty mask."""
    if mask == 0:
        raise ValueError("empty coordinate set")
    return (mask & -mask).bit_length()


def coords(mask: int) -> Iterator[int]:
    """Coordinates of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def coord_list(mask: int) -> list[int]:
    return list(coords(mask))


def from_coords(items: Iterable[int]) -> int:
    out = 0
    for c in items:
        out |= bit(c)
    return out


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def mask_extract(value: int, positions: int) -> int:
    """Compress the bits of ``value`` selected by ``positions`` into the low
    bits, preserving order (software PEXT)."""
    out = 0
    shift = 0
    while positions:
        low = positions & -positions
        if value & low:
            out |= 1 << shift
        shift += 1
        positions ^= low
    return out


def mask_deposit(value: int, positions: int) -> int:
    """Scatter the low bits of ``value`` into the bit slots selected by
    ``positions`` (software PDEP); inverse of :func:`mask_extract`."""
    out = 0
    shift = 0
    while positions:
        low = positions & -positions
        if (value >> shift) & 1:
            out |= low
        shift += 1
        positions ^= low
    return out


def format_coord_set(mask: int) -> str:
    """Human-readable coordinate set, e.g. ``{1,3}`` or ``{}``."""
    return "{" + ",".join(str(c) for c in coords(mask)) + "}"
