"""Subsets of ``[m] = {1, ..., m}`` encoded as int bitmasks (vertex i is bit i-1)."""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InputError


def mask_of(vertices: Iterable[int], m: int | None = None) -> int:
    mask = 0
    for v in vertices:
        v = int(v)
        if v < 1 or (m is not None and v > m):
            raise InputError(f"vertex {v} outside [1, {m}]")
        mask |= 1 << (v - 1)
    return mask


def members(mask: int) -> tuple:
    """Sorted 1-based elements of ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def size(mask: int) -> int:
    return mask.bit_count()


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def full(m: int) -> int:
    return (1 << m) - 1


def fmt(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"
