"""Finite posets, lattices, semilattices and their complete homomorphisms.

The order of an n-element structure is a tuple of n bitmask rows; bit j of
row i means element i lies below element j.  Structures are frozen and
hashable, operations are pure.  Elements are addressed by index internally
and by label at the interfaces.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._bits import bits, full_mask, mask_of, transitive_close
from .errors import StructureError


@dataclass(frozen=True)
class FinitePoset:
    labels: tuple[str, ...]
    leq: tuple[int, ...]

    @classmethod
    def from_relation(cls, labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "FinitePoset":
        """Build a poset from generating pairs.

        The relation is closed reflexively and transitively; a cycle through
        distinct elements is rejected rather than collapsed.
        """
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise StructureError("duplicate labels: %r" % (labels,))
        index = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        rows = [1 << i for i in range(n)]
        for a, b in pairs:
            if a not in index or b not in index:
                raise StructureError("relation pair (%r, %r) uses unknown labels" % (a, b))
            rows[index[a]] |= 1 << index[b]
        transitive_close(rows, n)
        for i in range(n):
            for j in bits(rows[i]):
                if i != j and rows[j] >> i & 1:
                    raise StructureError(
                        "order cycle through %r and %r" % (labels[i], labels[j]),
                        witness=(labels[i], labels[j]),
                    )
        return cls(labels, tuple(rows))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError("unknown element %r" % (label,)) from None

    def leq_ix(self, i: int, j: int) -> bool:
        return bool(self.leq[i] >> j & 1)

    def up_mask(self, i: int) -> int:
        return self.leq[i]

    def down_mask(self, j: int) -> int:
        m = 0
        for i in range(self.n):
            if self.leq[i] >> j & 1:
                m |= 1 << i
        return m

    def upper_bounds(self, mask: int) -> int:
        ub = full_mask(self.n)
        for i in bits(mask):
            ub &= self.leq[i]
        return ub

    def lower_bounds(self, mask: int) -> int:
        lb = full_mask(self.n)
        for j in bits(mask):
            lb &= self.down_mask(j)
        return lb

    def least_of(self, mask: int) -> int | None:
        for i in bits(mask):
            if self.leq[i] & mask == mask:
                return i
        return None

    def greatest_of(self, mask: int) -> int | None:
        for i in bits(mask):
            if self.down_mask(i) & mask == mask:
                return i
        return None

    def sup_of_mask(self, mask: int) -> int | None:
        """Least upper bound of the set, or None when it does not exist."""
        return self.least_of(self.upper_bounds(mask))

    def inf_of_mask(self, mask: int) -> int | None:
        return self.greatest_of(self.lower_bounds(mask))

    def pairs(self):
        for i in range(self.n):
            for j in bits(self.leq[i]):
                yield i, j

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.n):
            for j in bits(self.leq[i] & ~(1 << i)):
                between = self.leq[i] & self.down_mask(j) & ~(1 << i) & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def restrict(self, indices: Sequence[int], labels: Sequence[str] | None = None) -> "FinitePoset":
        indices = list(indices)
        labels = tuple(labels) if labels is not None else tuple(self.labels[i] for i in indices)
        rows = []
        for i in indices:
            r = 0
            for col, j in enumerate(indices):
                if self.leq[i] >> j & 1:
                    r |= 1 << col
            rows.append(r)
        return FinitePoset(labels, tuple(rows))


@dataclass(frozen=True)
class FiniteLattice(FinitePoset):
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]

    @classmethod
    def from_poset(cls, poset: FinitePoset) -> "FiniteLattice":
        # Renumbered along a linear extension, the least upper bound of a
        # pair is the lowest set bit of the intersected up-sets, which keeps
        # the table fill quadratic instead of cubic.
        n = poset.n
        ups = poset.leq
        order = sorted(range(n), key=lambda i: -ups[i].bit_count())
        rank = [0] * n
        for r, z in enumerate(order):
            rank[z] = r
        pup = [0] * n
        pdn = [0] * n
        for i in range(n):
            ri = rank[i]
            rest = ups[i]
            while rest:
                low = rest & -rest
                rj = rank[low.bit_length() - 1]
                pup[ri] |= 1 << rj
                pdn[rj] |= 1 << ri
                rest &= rest - 1
        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for i in range(n):
            ri = rank[i]
            jrow = join[i]
            mrow = meet[i]
            for j in range(i, n):
                rj = rank[j]
                ub = pup[ri] & pup[rj]
                low = ub & -ub
                s = low.bit_length() - 1
                if not low or pup[s] & ub != ub:
                    raise StructureError(
                        "no join for %r, %r" % (poset.labels[i], poset.labels[j]),
                        witness=(poset.labels[i], poset.labels[j]),
                    )
                lb = pdn[ri] & pdn[rj]
                g = lb.bit_length() - 1
                if not lb or pdn[g] & lb != lb:
                    raise StructureError(
                        "no meet for %r, %r" % (poset.labels[i], poset.labels[j]),
                        witness=(poset.labels[i], poset.labels[j]),
                    )
                jrow[j] = join[j][i] = order[s]
                mrow[j] = meet[j][i] = order[g]
        return cls(
            poset.labels,
            poset.leq,
            tuple(map(tuple, join)),
            tuple(map(tuple, meet)),
        )

    @classmethod
    def from_relation(cls, labels, pairs) -> "FiniteLattice":
        return cls.from_poset(FinitePoset.from_relation(labels, pairs))

    def join_ix(self, i: int, j: int) -> int:
        return self.join[i][j]

    def meet_ix(self, i: int, j: int) -> int:
        return self.meet[i][j]

    def join_mask(self, mask: int) -> int:
        """Join of a set of elements; the empty join is the bottom."""
        acc = self.bottom
        for i in bits(mask):
            acc = self.join[acc][i]
        return acc

    def meet_mask(self, mask: int) -> int:
        acc = self.top
        for i in bits(mask):
            acc = self.meet[acc][i]
        return acc

    @property
    def bottom(self) -> int:
        for i in range(self.n):
            if self.leq[i] == full_mask(self.n):
                return i
        raise StructureError("lattice has no bottom")

    @property
    def top(self) -> int:
        for i in range(self.n):
            if self.down_mask(i) == full_mask(self.n):
                return i
        raise StructureError("lattice has no top")


def distributivity_witness(lat: FiniteLattice) -> tuple[str, str, str] | None:
    """A triple with x ^ (y v z) != (x ^ y) v (x ^ z), or None."""
    for x in range(lat.n):
        for y in range(lat.n):
            for z in range(y, lat.n):
                lhs = lat.meet[x][lat.join[y][z]]
                rhs = lat.join[lat.meet[x][y]][lat.meet[x][z]]
                if lhs != rhs:
                    return (lat.labels[x], lat.labels[y], lat.labels[z])
    return None


def is_distributive(lat: FiniteLattice) -> bool:
    return distributivity_witness(lat) is None


def relative_complement_witness(lat: FiniteLattice) -> tuple[str, str, str] | None:
    """An interval element [o, a, i] with no complement of a in [o, i], or None.

    x with a ^ x = o and a v x = i automatically lies in [o, i].
    """
    for o in range(lat.n):
        for i in bits(lat.leq[o]):
            for a in bits(lat.leq[o] & lat.down_mask(i)):
                if not any(
                    lat.meet[a][x] == o and lat.join[a][x] == i
                    for x in range(lat.n)
                ):
                    return (lat.labels[o], lat.labels[a], lat.labels[i])
    return None


def is_relatively_complemented(lat: FiniteLattice) -> bool:
    return relative_complement_witness(lat) is None


def mid_witness(lat: FiniteLattice) -> tuple[str, str, str] | None:
    """A triple violating a v (x ^ y) = (a v x) ^ (a v y), or None.

    The binary law settles the finite case: the identity for meets of larger
    finite families follows by induction, splitting off one argument at a
    time, so checking pairs of meetands is enough.  That reduction is also
    unit-tested against a direct check of three-element families.
    """
    for a in range(lat.n):
        for x in range(lat.n):
            for y in range(x, lat.n):
                lhs = lat.join[a][lat.meet[x][y]]
                rhs = lat.meet[lat.join[a][x]][lat.join[a][y]]
                if lhs != rhs:
                    return (lat.labels[a], lat.labels[x], lat.labels[y])
    return None


def is_cobrouwerian_finite(lat: FiniteLattice) -> bool:
    """Meet-infinite-distributivity at finite scale; every finite lattice is complete."""
    return mid_witness(lat) is None


@dataclass(frozen=True)
class FiniteMeetSemilattice:
    """A poset with all binary meets (a top is not required)."""

    labels: tuple[str, ...]
    leq: tuple[int, ...]
    meet: tuple[tuple[int, ...], ...]

    @classmethod
    def from_poset(cls, poset: FinitePoset) -> "FiniteMeetSemilattice":
        meet = []
        for i in range(poset.n):
            row = []
            for j in range(poset.n):
                m = poset.inf_of_mask(1 << i | 1 << j)
                if m is None:
                    raise StructureError(
                        "no meet for %r, %r" % (poset.labels[i], poset.labels[j]),
                        witness=(poset.labels[i], poset.labels[j]),
                    )
                row.append(m)
            meet.append(tuple(row))
        return cls(poset.labels, poset.leq, tuple(meet))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def leq_ix(self, i: int, j: int) -> bool:
        return bool(self.leq[i] >> j & 1)

    def meet_ix(self, i: int, j: int) -> int:
        return self.meet[i][j]


@dataclass(frozen=True)
class FiniteSemilattice:
    """A join-semilattice with zero, the shape of compact-congruence reducts."""

    labels: tuple[str, ...]
    join: tuple[tuple[int, ...], ...]
    zero: int

    @classmethod
    def from_lattice(cls, lat: FiniteLattice) -> "FiniteSemilattice":
        return cls(lat.labels, lat.join, lat.bottom)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError("unknown element %r" % (label,)) from None

    def join_ix(self, i: int, j: int) -> int:
        return self.join[i][j]

    def join_all(self, indices: Iterable[int]) -> int:
        acc = self.zero
        for i in indices:
            acc = self.join[acc][i]
        return acc

    def leq_ix(self, i: int, j: int) -> bool:
        return self.join[i][j] == j

    @property
    def top(self) -> int:
        return self.join_all(range(self.n))

    def as_poset(self) -> FinitePoset:
        rows = []
        for i in range(self.n):
            r = 0
            for j in range(self.n):
                if self.join[i][j] == j:
                    r |= 1 << j
            rows.append(r)
        return FinitePoset(self.labels, tuple(rows))

    def as_lattice(self) -> FiniteLattice:
        # a finite join-semilattice with zero has all meets: the lower bounds
        # of a pair are nonempty and join-closed, so their join is the meet
        return FiniteLattice.from_poset(self.as_poset())

    def meet_ix(self, i: int, j: int) -> int:
        common = 0
        for z in range(self.n):
            if self.leq_ix(z, i) and self.leq_ix(z, j):
                common |= 1 << z
        return self.join_all(bits(common))

    def is_distributive(self) -> bool:
        return is_distributive(self.as_lattice())

    def join_irreducibles(self) -> list[int]:
        out = []
        for i in range(self.n):
            if i == self.zero:
                continue
            below = [j for j in range(self.n) if j != i and self.leq_ix(j, i)]
            if self.join_all(below) != i:
                out.append(i)
        return out

    def join_closure(self, mask: int) -> int:
        """Smallest subset containing the zero and closed under joins."""
        mask |= 1 << self.zero
        changed = True
        while changed:
            changed = False
            for i in bits(mask):
                for j in bits(mask):
                    k = self.join[i][j]
                    if not mask >> k & 1:
                        mask |= 1 << k
                        changed = True
        return mask

    def is_subsemilattice(self, mask: int) -> bool:
        return mask >> self.zero & 1 == 1 and self.join_closure(mask) == mask

    def cofinality_witness(self, mask: int) -> int | None:
        """An element with no majorant inside the subset, or None."""
        for b in range(self.n):
            if not any(self.leq_ix(b, a) for a in bits(mask)):
                return b
        return None


def join_subsemilattices(sl: FiniteSemilattice) -> list[int]:
    """All subsets containing zero and closed under join, as masks."""
    out = []
    rest = [i for i in range(sl.n) if i != sl.zero]
    for size in range(len(rest) + 1):
        for combo in itertools.combinations(rest, size):
            mask = mask_of(combo) | 1 << sl.zero
            if sl.is_subsemilattice(mask):
                out.append(mask)
    return out


@dataclass(frozen=True)
class CompleteJoinHom:
    """A map between finite lattices preserving all joins, the empty one included."""

    source: FiniteLattice
    target: FiniteLattice
    mapping: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def validate(self) -> None:
        # Preserving the empty and the binary joins already forces all finite
        # joins (peel one argument off a finite family and induct), but the
        # validator also sweeps families of size three and the full carrier
        # as belt and braces.
        A, B, f = self.source, self.target, self.mapping
        if len(f) != A.n or any(not 0 <= v < B.n for v in f):
            raise StructureError("mapping is not a function into the target")
        if f[A.bottom] != B.bottom:
            raise StructureError("empty join not preserved", witness=())
        for i in range(A.n):
            for j in range(i, A.n):
                if f[A.join[i][j]] != B.join[f[i]][f[j]]:
                    raise StructureError(
                        "binary join not preserved",
                        witness=(A.labels[i], A.labels[j]),
                    )
        for combo in itertools.combinations(range(A.n), 3):
            lhs = f[A.join_mask(mask_of(combo))]
            rhs = B.join_mask(mask_of(f[i] for i in combo))
            if lhs != rhs:
                raise StructureError(
                    "triple join not preserved",
                    witness=tuple(A.labels[i] for i in combo),
                )
        if f[A.join_mask(full_mask(A.n))] != B.join_mask(mask_of(f)):
            raise StructureError("full-carrier join not preserved")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except StructureError:
            return False
        return True

    def adjoint(self) -> "CompleteMeetHom":
        """The upper adjoint: b maps to the greatest a with f(a) <= b."""
        A, B, f = self.source, self.target, self.mapping
        out = []
        for b in range(B.n):
            below = mask_of(a for a in range(A.n) if B.leq_ix(f[a], b))
            g = A.greatest_of(below)
            if g is None:
                raise StructureError("no greatest preimage; map is not a complete join hom")
            out.append(g)
        return CompleteMeetHom(B, A, tuple(out))


@dataclass(frozen=True)
class CompleteMeetHom:
    source: FiniteLattice
    target: FiniteLattice
    mapping: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def validate(self) -> None:
        A, B, g = self.source, self.target, self.mapping
        if len(g) != A.n or any(not 0 <= v < B.n for v in g):
            raise StructureError("mapping is not a function into the target")
        if g[A.top] != B.top:
            raise StructureError("empty meet not preserved", witness=())
        for i in range(A.n):
            for j in range(i, A.n):
                if g[A.meet[i][j]] != B.meet[g[i]][g[j]]:
                    raise StructureError(
                        "binary meet not preserved",
                        witness=(A.labels[i], A.labels[j]),
                    )
        for combo in itertools.combinations(range(A.n), 3):
            lhs = g[A.meet_mask(mask_of(combo))]
            rhs = B.meet_mask(mask_of(g[i] for i in combo))
            if lhs != rhs:
                raise StructureError(
                    "triple meet not preserved",
                    witness=tuple(A.labels[i] for i in combo),
                )
        if g[A.meet_mask(full_mask(A.n))] != B.meet_mask(mask_of(g)):
            raise StructureError("full-carrier meet not preserved")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except StructureError:
            return False
        return True

    def adjoint(self) -> CompleteJoinHom:
        """The lower adjoint: b maps to the least a with b <= g(a)."""
        A, B, g = self.source, self.target, self.mapping
        out = []
        for b in range(B.n):
            above = mask_of(a for a in range(A.n) if B.leq_ix(b, g[a]))
            l = A.least_of(above)
            if l is None:
                raise StructureError("no least cover; map is not a complete meet hom")
            out.append(l)
        return CompleteJoinHom(B, A, tuple(out))


def adjoint_of_join_hom(f: CompleteJoinHom) -> CompleteMeetHom:
    f.validate()
    return f.adjoint()


def adjoint_of_meet_hom(g: CompleteMeetHom) -> CompleteJoinHom:
    g.validate()
    return g.adjoint()


def interpolation_check(poset: FinitePoset, lower: Sequence[int], upper: Sequence[int]) -> int | None:
    """First z (in element input order) with lower <= z <= upper.

    Rejects the call when some pair fails lower <= upper; returns None when
    both families are ordered but no interpolant exists.
    """
    for x in lower:
        for y in upper:
            if not poset.leq_ix(x, y):
                raise StructureError(
                    "not an ordered pair of families: %r </= %r"
                    % (poset.labels[x], poset.labels[y]),
                    witness=(poset.labels[x], poset.labels[y]),
                )
    for z in range(poset.n):
        if all(poset.leq_ix(x, z) for x in lower) and all(poset.leq_ix(z, y) for y in upper):
            return z
    return None


def interval_axiom_check(sl: FiniteSemilattice, a: int, b: int, xs: Sequence[int]) -> int | None:
    """Search c with a <= b v c and c below every member of xs.

    Requires a <= b v x for each x.  When a <= b the zero works and is
    returned at once; otherwise candidates are scanned in element input
    order.  Returns None when no c exists (possible once joins fail to
    distribute over meets).
    """
    for x in xs:
        if not sl.leq_ix(a, sl.join[b][x]):
            raise StructureError(
                "hypothesis a <= b v x fails at x = %r" % (sl.labels[x],),
                witness=(sl.labels[a], sl.labels[b], sl.labels[x]),
            )
    if sl.leq_ix(a, b):
        return sl.zero
    for c in range(sl.n):
        if sl.leq_ix(a, sl.join[b][c]) and all(sl.leq_ix(c, x) for x in xs):
            return c
    return None


def ideals_of(sl: FiniteSemilattice) -> list[int]:
    """All ideals as masks: nonempty down-sets closed under join.

    Every nonempty down-set contains the zero, so the empty set is the only
    excluded down-set and the map x -> principal ideal embeds the carrier.
    """
    poset = sl.as_poset()
    out = []
    for size in range(1, sl.n + 1):
        for combo in itertools.combinations(range(sl.n), size):
            mask = mask_of(combo)
            down = all(poset.down_mask(i) & ~mask == 0 for i in combo)
            if not down:
                continue
            if all(mask >> sl.join[i][j] & 1 for i in combo for j in combo):
                out.append(mask)
    return out


def ideal_lattice(sl: FiniteSemilattice) -> FiniteLattice:
    """The lattice of ideals ordered by inclusion."""
    ideals = sorted(ideals_of(sl), key=lambda m: (m.bit_count(), m))
    labels = tuple(
        "{" + ",".join(sl.labels[i] for i in bits(m)) + "}" for m in ideals
    )
    rows = []
    for m in ideals:
        r = 0
        for col, m2 in enumerate(ideals):
            if m & ~m2 == 0:
                r |= 1 << col
        rows.append(r)
    return FiniteLattice.from_poset(FinitePoset(labels, tuple(rows)))


def compact_elements(lat: FiniteLattice) -> FiniteSemilattice:
    """The join-reduct with zero; in a finite lattice every element is compact."""
    return FiniteSemilattice.from_lattice(lat)


def find_order_isomorphism(a: FinitePoset, b: FinitePoset) -> tuple[int, ...] | None:
    """An order isomorphism a -> b as an index mapping, or None.

    Backtracking over invariant-compatible images; lattice and semilattice
    isomorphisms coincide with order isomorphisms, so this one helper serves
    them all.
    """
    if a.n != b.n:
        return None

    def invariants(p: FinitePoset) -> list[tuple]:
        inv = [(p.leq[i].bit_count(), p.down_mask(i).bit_count()) for i in range(p.n)]
        for _ in range(2):
            sigs = [
                (
                    inv[i],
                    tuple(sorted(inv[j] for j in bits(p.leq[i]))),
                    tuple(sorted(inv[j] for j in bits(p.down_mask(i)))),
                )
                for i in range(p.n)
            ]
            # rank by sorted signature so the ids do not depend on element order
            rank = {s: r for r, s in enumerate(sorted(set(sigs)))}
            inv = [(rank[s],) for s in sigs]
        return inv

    ia, ib = invariants(a), invariants(b)
    if sorted(ia) != sorted(ib):
        return None
    candidates = [mask_of(j for j in range(b.n) if ib[j] == ia[i]) for i in range(a.n)]
    assigned: list[int] = []
    used = 0

    def fits(i: int, j: int) -> bool:
        for k, jk in enumerate(assigned):
            if a.leq_ix(i, k) != b.leq_ix(j, jk) or a.leq_ix(k, i) != b.leq_ix(jk, j):
                return False
        return True

    def backtrack() -> bool:
        nonlocal used
        i = len(assigned)
        if i == a.n:
            return True
        for j in bits(candidates[i] & ~used):
            if fits(i, j):
                assigned.append(j)
                used |= 1 << j
                if backtrack():
                    return True
                assigned.pop()
                used &= ~(1 << j)
        return False

    return tuple(assigned) if backtrack() else None


# --- stock structures -----------------------------------------------------

def chain(n: int, prefix: str = "") -> FiniteLattice:
    labels = [prefix + str(i) for i in range(n)]
    return FiniteLattice.from_relation(labels, [(labels[i], labels[i + 1]) for i in range(n - 1)])


def antichain_poset(n: int, prefix: str = "x") -> FinitePoset:
    return FinitePoset.from_relation([prefix + str(i) for i in range(n)], [])


def m3() -> FiniteLattice:
    return FiniteLattice.from_relation(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )


def n5() -> FiniteLattice:
    return FiniteLattice.from_relation(
        ["0", "a", "c", "b", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )


def product_lattice(a: FiniteLattice, b: FiniteLattice, sep: str = ".") -> FiniteLattice:
    labels = []
    rows = []
    for i in range(a.n):
        for j in range(b.n):
            labels.append(a.labels[i] + sep + b.labels[j])
            r = 0
            for i2 in range(a.n):
                for j2 in range(b.n):
                    if a.leq_ix(i, i2) and b.leq_ix(j, j2):
                        r |= 1 << (i2 * b.n + j2)
            rows.append(r)
    return FiniteLattice.from_poset(FinitePoset(tuple(labels), tuple(rows)))


def boolean_cube(k: int) -> FiniteLattice:
    """The powerset of k atoms; labels are bitstrings."""
    n = 1 << k
    labels = tuple(format(m, "0%db" % k) if k else "e" for m in range(n))
    rows = tuple(
        mask_of(m2 for m2 in range(n) if m & ~m2 == 0) for m in range(n)
    )
    return FiniteLattice.from_poset(FinitePoset(labels, rows))
