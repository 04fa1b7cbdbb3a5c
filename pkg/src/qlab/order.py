"""Bitmask helpers for finite posets.

A poset on indices 0..n-1 is handled through its up-sets: ``up[i]`` is the
bitmask of all j with i <= j. Down-sets are the transpose.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    acc = 0
    for i in indices:
        acc |= 1 << i
    return acc


def transpose(up: tuple[int, ...]) -> tuple[int, ...]:
    n = len(up)
    down = [0] * n
    for i, row in enumerate(up):
        for j in bits(row):
            down[j] |= 1 << i
    return tuple(down)


def check_partial_order(up: tuple[int, ...]) -> tuple[str, tuple[int, ...]] | None:
    """Return (law, witness) for the first order axiom failure, else None."""
    n = len(up)
    full = (1 << n) - 1
    for i, row in enumerate(up):
        if row & ~full:
            return ("range", (i,))
        if not row >> i & 1:
            return ("reflexive", (i,))
    for i in range(n):
        for j in bits(up[i]):
            if j != i and up[j] >> i & 1:
                return ("antisymmetric", (i, j))
            if up[j] & ~up[i]:
                return ("transitive", (i, j))
    return None


def least_member(subset: int, up: tuple[int, ...]) -> int | None:
    """Least element of ``subset`` (a bitmask), or None if it has no least."""
    for i in bits(subset):
        if not subset & ~up[i]:
            return i
    return None


def lub(members: Iterable[int], up: tuple[int, ...], full: int) -> int | None:
    """Least upper bound of the given indices, or None if absent."""
    common = full
    for i in members:
        common &= up[i]
    if not common:
        return None
    return least_member(common, up)
