"""Bitmask helpers for order relations on small carriers.

A binary relation on n elements is a tuple of n ints; bit j of row i says
i relates to j.  Everything downstream (posets, congruences, the word-problem
engine) shares these conventions.
"""
from __future__ import annotations

from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


def identity_rows(n: int) -> list[int]:
    return [1 << i for i in range(n)]


def transitive_close(rows: list[int], n: int) -> None:
    """In-place Warshall closure over bitmask rows."""
    for k in range(n):
        rk = rows[k]
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk


def is_transitive(rows: tuple[int, ...] | list[int], n: int) -> bool:
    for i in range(n):
        acc = rows[i]
        for j in bits(rows[i]):
            acc |= rows[j]
        if acc != rows[i]:
            return False
    return True


def relation_pairs(rows: tuple[int, ...] | list[int], n: int) -> Iterator[tuple[int, int]]:
    for i in range(n):
        for j in bits(rows[i]):
            yield i, j
