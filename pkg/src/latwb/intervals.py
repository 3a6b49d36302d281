"""Finite unions of half-open intervals of natural numbers.

An :class:`IntervalSet` represents a subset of the natural numbers that
is a finite union of intervals ``[a, b)``, where the last interval may
be unbounded (``[a, inf)``).  These are exactly the subsets needed by
the obstruction spaces in :mod:`latwb.spaces`: they are closed under
union, intersection, complement and difference, and membership,
boundedness and extrema are all decidable by inspecting the segment
list.

The representation is canonical: segments are sorted, pairwise disjoint
and non-adjacent, so two interval sets are equal as sets iff their
segment tuples are equal.  ``==`` and ``hash`` therefore agree with set
equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StructureError

__all__ = ["IntervalSet", "EMPTY_SET", "FULL_SET"]


def _merged(segments):
    """Sort, drop empty segments and merge overlaps and adjacencies."""
    cleaned = []
    for seg in segments:
        a, b = seg
        if a < 0:
            raise StructureError("interval start must be a natural number", witness=seg)
        if b is not None and b <= a:
            continue
        cleaned.append((a, b))
    cleaned.sort(key=lambda s: s[0])
    out = []
    for a, b in cleaned:
        if out:
            pa, pb = out[-1]
            if pb is None:
                break
            if a <= pb:
                if b is None or b > pb:
                    out[-1] = (pa, b)
                continue
        out.append((a, b))
    return tuple(out)


@dataclass(frozen=True)
class IntervalSet:
    """A finite union of half-open intervals ``[a, b)`` of naturals.

    ``segments`` is a tuple of ``(a, b)`` pairs with ``b = None``
    meaning the interval is unbounded above.  Construct through
    :meth:`of` (which normalizes arbitrary input) unless the segments
    are already canonical.
    """

    segments: tuple

    def __post_init__(self):
        if self.segments != _merged(self.segments):
            raise StructureError(
                "segments are not canonical; use IntervalSet.of",
                witness=self.segments,
            )

    @classmethod
    def of(cls, *segments):
        """Build an interval set from ``(a, b)`` pairs, normalizing them."""
        return cls(_merged(segments))

    @classmethod
    def point(cls, n):
        return cls(((n, n + 1),))

    @classmethod
    def initial(cls, n):
        """The set ``{0, ..., n - 1}``, empty when ``n == 0``."""
        return cls(() if n == 0 else ((0, n),))

    @classmethod
    def tail(cls, a):
        """The unbounded set ``{a, a + 1, ...}``."""
        return cls(((a, None),))

    # -- predicates ----------------------------------------------------

    def is_empty(self):
        return not self.segments

    def is_bounded(self):
        return not self.segments or self.segments[-1][1] is not None

    def __contains__(self, n):
        for a, b in self.segments:
            if n < a:
                return False
            if b is None or n < b:
                return True
        return False

    def __bool__(self):
        return bool(self.segments)

    # -- extrema -------------------------------------------------------

    def min_element(self):
        if not self.segments:
            raise StructureError("empty set has no least element")
        return self.segments[0][0]

    def max_element(self):
        if not self.segments:
            raise StructureError("empty set has no greatest element")
        a, b = self.segments[-1]
        if b is None:
            raise StructureError("unbounded set has no greatest element")
        return b - 1

    # -- boolean operations ---------------------------------------------

    def union(self, other):
        return IntervalSet(_merged(self.segments + other.segments))

    def complement(self):
        out = []
        prev = 0
        for a, b in self.segments:
            if a > prev:
                out.append((prev, a))
            if b is None:
                return IntervalSet(tuple(out))
            prev = b
        out.append((prev, None))
        return IntervalSet(tuple(out))

    def intersection(self, other):
        return self.complement().union(other.complement()).complement()

    def difference(self, other):
        return self.intersection(other.complement())

    def leq(self, other):
        """Containment: is ``self`` a subset of ``other``?"""
        return self.difference(other).is_empty()

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = leq

    # -- encoding --------------------------------------------------------

    def to_data(self):
        return [[a, b] for a, b in self.segments]

    @classmethod
    def from_data(cls, data):
        return cls.of(*((a, b) for a, b in data))

    def __str__(self):
        if not self.segments:
            return "{}"
        parts = []
        for a, b in self.segments:
            parts.append(f"[{a},w)" if b is None else f"[{a},{b})")
        return " u ".join(parts)


EMPTY_SET = IntervalSet(())
FULL_SET = IntervalSet(((0, None),))
