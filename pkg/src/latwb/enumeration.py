"""Exhaustive generation of small posets, meet-semilattices and lattices.

Generation is orderly: structures of size n+1 are built from structures of
size n by attaching one new maximal element, and isomorphs are rejected by a
canonical form of the order matrix.  Lattices of size n+1 are exactly the
meet-semilattices of size n with a fresh top adjoined: removing the top of a
finite lattice can never break a meet, and over a meet-semilattice the upper
bounds of any pair are meet-closed, so adjoining a top restores all joins.

Known counts act as a self-check of the whole pipeline.
"""
from __future__ import annotations

import itertools

from ._bits import bits, full_mask, mask_of
from .errors import BoundExceeded, StructureError
from .order import FiniteLattice, FinitePoset

# lattices with n elements up to isomorphism, n = 1..7
LATTICE_COUNTS = (1, 1, 1, 2, 5, 15, 53)
# posets with n elements up to isomorphism, n = 1..6
POSET_COUNTS = (1, 2, 5, 16, 63, 318)

_PERM_CAP = 45000


def canonical_order_key(rows: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least relabeling of the order matrix.

    Elements are grouped by an iterated neighborhood invariant and only
    permutations mapping groups onto groups are tried; the invariant is
    isomorphism-invariant, so the minimum over that restricted set is still
    canonical.
    """
    n = len(rows)
    down = [mask_of(i for i in range(n) if rows[i] >> j & 1) for j in range(n)]
    inv: list = [(rows[i].bit_count(), down[i].bit_count()) for i in range(n)]
    for _ in range(3):
        sigs = [
            (
                inv[i],
                tuple(sorted(inv[j] for j in bits(rows[i]))),
                tuple(sorted(inv[j] for j in bits(down[i]))),
            )
            for i in range(n)
        ]
        # rank signatures by sorted order so class ids do not depend on labels
        rank = {s: r for r, s in enumerate(sorted(set(sigs)))}
        inv = [rank[s] for s in sigs]
    order = sorted(range(n), key=lambda i: (inv[i], 0))
    groups = [
        list(g)
        for _, g in itertools.groupby(order, key=lambda i: inv[i])
    ]
    total = 1
    for g in groups:
        for k in range(2, len(g) + 1):
            total *= k
    if total > _PERM_CAP:
        groups = [list(range(n))]

    best: tuple[int, ...] | None = None
    for parts in itertools.product(*(itertools.permutations(g) for g in groups)):
        old_of_new = [i for part in parts for i in part]
        pos = [0] * n
        for new, old in enumerate(old_of_new):
            pos[old] = new
        relabeled = tuple(
            mask_of(pos[j] for j in bits(rows[old]))
            for old in old_of_new
        )
        if best is None or relabeled < best:
            best = relabeled
    assert best is not None
    return best


def _downsets(rows: tuple[int, ...]) -> list[int]:
    n = len(rows)
    down = [mask_of(i for i in range(n) if rows[i] >> j & 1) for j in range(n)]
    out = []
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            mask = mask_of(combo)
            if all(down[j] & ~mask == 0 for j in combo):
                out.append(mask)
    return out


def _extend_with_maximal(rows: tuple[int, ...], strict_down: int) -> tuple[int, ...]:
    n = len(rows)
    new_rows = [r for r in rows]
    for i in bits(strict_down):
        new_rows[i] |= 1 << n
    new_rows.append(1 << n)
    return tuple(new_rows)


def all_poset_orders(max_n: int) -> dict[int, list[tuple[int, ...]]]:
    """Order matrices of all posets with up to max_n elements, up to iso."""
    levels: dict[int, list[tuple[int, ...]]] = {1: [(1,)]}
    for n in range(1, max_n):
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for rows in levels[n]:
            for dmask in _downsets(rows):
                ext = _extend_with_maximal(rows, dmask)
                seen.setdefault(canonical_order_key(ext), ext)
        levels[n + 1] = sorted(seen)
    return levels


def _is_meet_extension_valid(rows: tuple[int, ...], dmask: int) -> bool:
    # the strict down-set of the new element must meet every principal
    # down-set in a set with a greatest element, which becomes the new meet
    n = len(rows)
    down = [mask_of(i for i in range(n) if rows[i] >> j & 1) for j in range(n)]
    for u in range(n):
        sect = dmask & down[u]
        if not sect:
            return False
        if not any(down[g] & sect == sect for g in bits(sect)):
            return False
    return True


def all_meet_semilattice_orders(max_n: int) -> dict[int, list[tuple[int, ...]]]:
    levels: dict[int, list[tuple[int, ...]]] = {1: [(1,)]}
    for n in range(1, max_n):
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for rows in levels[n]:
            for dmask in _downsets(rows):
                if dmask and _is_meet_extension_valid(rows, dmask):
                    ext = _extend_with_maximal(rows, dmask)
                    seen.setdefault(canonical_order_key(ext), ext)
        levels[n + 1] = sorted(seen)
    return levels


def all_posets(max_n: int, prefix: str = "e") -> list[FinitePoset]:
    out = []
    for n, level in sorted(all_poset_orders(max_n).items()):
        labels = tuple(prefix + str(i) for i in range(n))
        out.extend(FinitePoset(labels, rows) for rows in level)
    return out


def all_lattices(max_n: int, prefix: str = "e", self_check: bool = True) -> list[FiniteLattice]:
    """All lattices with up to max_n elements, up to isomorphism."""
    if max_n < 1:
        return []
    if max_n > 9:
        raise BoundExceeded("lattice enumeration supports sizes up to 9")
    by_size: dict[int, list[tuple[int, ...]]] = {1: [(1,)]}
    if max_n >= 2:
        for m, level in all_meet_semilattice_orders(max_n - 1).items():
            by_size[m + 1] = [
                _extend_with_maximal(rows, full_mask(m)) for rows in level
            ]
    out = []
    for n in sorted(by_size):
        labels = tuple(prefix + str(i) for i in range(n))
        for rows in by_size[n]:
            try:
                out.append(FiniteLattice.from_poset(FinitePoset(labels, rows)))
            except StructureError as exc:  # pragma: no cover - guards the bijection
                raise AssertionError("generated order is not a lattice") from exc
        if self_check and n <= len(LATTICE_COUNTS):
            expect = LATTICE_COUNTS[n - 1]
            if len(by_size[n]) != expect:
                raise AssertionError(
                    "enumerator self-check failed at size %d: %d lattices, expected %d"
                    % (n, len(by_size[n]), expect)
                )
    return out
