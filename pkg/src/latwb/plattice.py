"""Partial lattices, their congruences, homomorphisms and measures.

A partial lattice is a finite poset with partial join and meet maps whose
registered values are genuine sups and infs.  Joins and meets are keyed by
argument sets of size at least two (bitmasks); the join or meet of a
singleton is implicitly the element itself, which keeps quotient projections
composable when a registered argument set collapses to one class.

A congruence is kept as the quasi-order it induces: a reflexive transitive
relation containing the order and closed under the two rules

    a = join(X)  and  x rel y for all x in X   =>   a rel y
    b = meet(Y)  and  x rel y for all y in Y   =>   x rel b

which say exactly that a stays the sup of X (and dually) modulo the
relation.  The symmetric kernel of the quasi-order gives the classes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from ._bits import bits, full_mask, mask_of, transitive_close
from .errors import BoundExceeded, StructureError
from .order import FiniteLattice, FinitePoset, FiniteSemilattice

JoinEntry = tuple[int, int]  # (argument mask, value index)


@dataclass(frozen=True)
class FinitePartialLattice(FinitePoset):
    joins: tuple[JoinEntry, ...]
    meets: tuple[JoinEntry, ...]

    @classmethod
    def from_data(
        cls,
        labels: Sequence[str],
        order_pairs: Iterable[tuple[str, str]],
        joins: Iterable[tuple[Iterable[str], str]] = (),
        meets: Iterable[tuple[Iterable[str], str]] = (),
    ) -> "FinitePartialLattice":
        poset = FinitePoset.from_relation(labels, order_pairs)

        def pack(entries, kind):
            table: dict[int, int] = {}
            for args, value in entries:
                arg_ix = [poset.index(a) for a in args]
                v = poset.index(value)
                mask = mask_of(arg_ix)
                if mask.bit_count() == 0:
                    raise StructureError("empty %s argument set" % kind)
                if mask.bit_count() == 1:
                    if mask != 1 << v:
                        raise StructureError(
                            "singleton %s of %r declared as %r" % (kind, args, value)
                        )
                    continue  # singletons are implicit
                if table.get(mask, v) != v:
                    raise StructureError(
                        "conflicting %s entries for %r" % (kind, sorted(args))
                    )
                table[mask] = v
            return tuple(sorted(table.items()))

        return cls(poset.labels, poset.leq, pack(joins, "join"), pack(meets, "meet"))

    @classmethod
    def from_poset(cls, poset: FinitePoset) -> "FinitePartialLattice":
        return cls(poset.labels, poset.leq, (), ())

    @classmethod
    def from_lattice(cls, lat: FiniteLattice, pairs_only: bool = False) -> "FinitePartialLattice":
        """View a lattice as a partial lattice.

        By default every argument set of size >= 2 is registered, which is
        the everywhere-defined reading of a lattice.  pairs_only keeps just
        the binary entries; the two give the same congruences (see
        _closure_rules) but different homomorphism constraints.
        """
        if lat.n > 14 and not pairs_only:
            raise BoundExceeded("lattice too large to register all argument sets")
        joins = []
        meets = []
        sizes = range(2, 3 if pairs_only else lat.n + 1)
        for size in sizes:
            for combo in itertools.combinations(range(lat.n), size):
                mask = mask_of(combo)
                joins.append((mask, lat.join_mask(mask)))
                meets.append((mask, lat.meet_mask(mask)))
        return cls(lat.labels, lat.leq, tuple(sorted(joins)), tuple(sorted(meets)))

    def join_value(self, mask: int) -> int | None:
        """Registered join of the argument set, with implicit singletons."""
        if mask.bit_count() == 1:
            return mask.bit_length() - 1
        for m, v in self.joins:
            if m == mask:
                return v
        return None

    def meet_value(self, mask: int) -> int | None:
        if mask.bit_count() == 1:
            return mask.bit_length() - 1
        for m, v in self.meets:
            if m == mask:
                return v
        return None

    def totally_registered(self) -> bool:
        want = (1 << self.n) - self.n - 1
        return len(self.joins) == want and len(self.meets) == want


def validate(P: FinitePartialLattice) -> list[tuple[str, tuple[str, ...], str]]:
    """Violations of the sup/inf conditions; empty means valid."""
    out = []
    for mask, a in P.joins:
        if P.sup_of_mask(mask) != a:
            out.append(("join", tuple(P.labels[i] for i in bits(mask)), P.labels[a]))
    for mask, b in P.meets:
        if P.inf_of_mask(mask) != b:
            out.append(("meet", tuple(P.labels[i] for i in bits(mask)), P.labels[b]))
    return out


def validate_or_raise(P: FinitePartialLattice) -> None:
    bad = validate(P)
    if bad:
        kind, args, value = bad[0]
        raise StructureError(
            "%s(%s) = %s is not the genuine %s" % (kind, ",".join(args), value, kind),
            witness=bad,
        )


def underlying_lattice(P: FinitePartialLattice) -> FiniteLattice:
    """The total lattice on the same order; fails when sups or infs are missing."""
    return FiniteLattice.from_poset(FinitePoset(P.labels, P.leq))


# --- congruences ------------------------------------------------------------


@dataclass(frozen=True)
class Congruence:
    carrier: FinitePartialLattice
    rel: tuple[int, ...]

    def contains(self, i: int, j: int) -> bool:
        return bool(self.rel[i] >> j & 1)

    def pairs(self):
        for i in range(len(self.rel)):
            for j in bits(self.rel[i]):
                yield i, j

    def le(self, other: "Congruence") -> bool:
        return all(r & ~s == 0 for r, s in zip(self.rel, other.rel))

    def classes(self) -> list[tuple[int, ...]]:
        """Blocks of the symmetric kernel, ordered by least member."""
        n = len(self.rel)
        seen = 0
        out = []
        for i in range(n):
            if seen >> i & 1:
                continue
            block = mask_of(
                j for j in bits(self.rel[i]) if self.rel[j] >> i & 1
            )
            seen |= block
            out.append(tuple(bits(block)))
        return out

    def pair_labels(self) -> list[tuple[str, str]]:
        lab = self.carrier.labels
        return [(lab[i], lab[j]) for i, j in self.pairs()]


@lru_cache(maxsize=None)
def _closure_rules(P: FinitePartialLattice) -> tuple[tuple[JoinEntry, ...], tuple[JoinEntry, ...]]:
    # On a totally registered lattice the binary entries already generate the
    # closure: if the rule holds for pairs then, peeling one element off a
    # bigger argument set, x1 v ... v xk rel y follows by induction from
    # (x1 v ... v x{k-1}) rel y and xk rel y.  Restricting to pairs keeps the
    # engine linear in the carrier instead of exponential.
    if P.totally_registered():
        joins = tuple(e for e in P.joins if e[0].bit_count() == 2)
        meets = tuple(e for e in P.meets if e[0].bit_count() == 2)
        return joins, meets
    return P.joins, P.meets


_DEFAULT_ORDER = ("trans", "join", "meet")


def _close(P: FinitePartialLattice, rows: list[int], rule_order: tuple[str, ...]) -> tuple[int, ...]:
    n = P.n
    join_rules, meet_rules = _closure_rules(P)
    while True:
        before = tuple(rows)
        for phase in rule_order:
            if phase == "trans":
                transitive_close(rows, n)
            elif phase == "join":
                for mask, a in join_rules:
                    acc = full_mask(n)
                    for x in bits(mask):
                        acc &= rows[x]
                    rows[a] |= acc
            elif phase == "meet":
                for mask, b in meet_rules:
                    bbit = 1 << b
                    for z in range(n):
                        if rows[z] & mask == mask:
                            rows[z] |= bbit
            else:
                raise StructureError("unknown closure phase %r" % (phase,))
        if tuple(rows) == before:
            return before


def congruence_closure(
    P: FinitePartialLattice,
    seed: Iterable[tuple[int, int]],
    rule_order: tuple[str, ...] = _DEFAULT_ORDER,
) -> Congruence:
    """Least congruence whose quasi-order contains the seed pairs."""
    rows = list(P.leq)
    for a, b in seed:
        rows[a] |= 1 << b
    return Congruence(P, _close(P, rows, rule_order))


def is_congruence(P: FinitePartialLattice, rows: tuple[int, ...]) -> bool:
    if any(rows[i] & P.leq[i] != P.leq[i] for i in range(P.n)):
        return False
    return _close(P, list(rows), _DEFAULT_ORDER) == rows


def zero_congruence(P: FinitePartialLattice) -> Congruence:
    return Congruence(P, P.leq)


def one_congruence(P: FinitePartialLattice) -> Congruence:
    return Congruence(P, tuple(full_mask(P.n) for _ in range(P.n)))


def theta_plus(P: FinitePartialLattice, a: int, b: int) -> Congruence:
    """Least congruence placing a below b."""
    return congruence_closure(P, [(a, b)])


def theta(P: FinitePartialLattice, a: int, b: int) -> Congruence:
    """Least congruence identifying a and b."""
    return congruence_closure(P, [(a, b), (b, a)])


def join_congruences(c: Congruence, d: Congruence) -> Congruence:
    rows = [r | s for r, s in zip(c.rel, d.rel)]
    return Congruence(c.carrier, _close(c.carrier, rows, _DEFAULT_ORDER))


def meet_congruences(c: Congruence, d: Congruence) -> Congruence:
    # an intersection of congruences is a congruence
    return Congruence(c.carrier, tuple(r & s for r, s in zip(c.rel, d.rel)))


def all_congruences(
    P: FinitePartialLattice,
    max_count: int = 20000,
    max_carrier: int = 8,
) -> list[Congruence]:
    """Every congruence, by closing the principal ones under joins."""
    if P.n > max_carrier:
        raise BoundExceeded("carrier larger than %d elements" % max_carrier)
    principal = {}
    for a in range(P.n):
        for b in range(P.n):
            if not P.leq_ix(a, b):
                c = theta_plus(P, a, b)
                principal[c.rel] = c
    known: dict[tuple[int, ...], Congruence] = {P.leq: zero_congruence(P)}
    frontier = list(principal.values())
    for c in frontier:
        known.setdefault(c.rel, c)
    while frontier:
        c = frontier.pop()
        for p in principal.values():
            if all(pr & ~cr == 0 for pr, cr in zip(p.rel, c.rel)):
                continue
            j = join_congruences(c, p)
            if j.rel not in known:
                known[j.rel] = j
                frontier.append(j)
                if len(known) > max_count:
                    raise BoundExceeded("more than %d congruences" % max_count)
    return sorted(known.values(), key=lambda c: (sum(r.bit_count() for r in c.rel), c.rel))


@dataclass(frozen=True)
class ConLattice:
    lattice: FiniteLattice
    congruences: tuple[Congruence, ...]

    def index_of(self, c: Congruence) -> int:
        for i, d in enumerate(self.congruences):
            if d.rel == c.rel:
                return i
        raise StructureError("not a congruence of this carrier")

    def join_ix(self, i: int, j: int) -> int:
        return self.lattice.join[i][j]

    def semilattice(self) -> FiniteSemilattice:
        return FiniteSemilattice.from_lattice(self.lattice)


def con_lattice(P: FinitePartialLattice, max_count: int = 20000, max_carrier: int = 8) -> ConLattice:
    """The congruence lattice, ordered by inclusion of quasi-orders."""
    congs = all_congruences(P, max_count=max_count, max_carrier=max_carrier)
    labels = tuple("c%d" % i for i in range(len(congs)))
    rows = []
    for c in congs:
        r = 0
        for k, d in enumerate(congs):
            if c.le(d):
                r |= 1 << k
        rows.append(r)
    lat = FiniteLattice.from_poset(FinitePoset(labels, tuple(rows)))
    return ConLattice(lat, tuple(congs))


# --- quotients and homomorphisms -------------------------------------------


@dataclass(frozen=True)
class PartialLatticeHom:
    source: FinitePartialLattice
    target: FinitePartialLattice
    mapping: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def image_mask(self, mask: int) -> int:
        return mask_of(self.mapping[i] for i in bits(mask))

    def validate(self) -> None:
        P, Q, f = self.source, self.target, self.mapping
        if len(f) != P.n or any(not 0 <= v < Q.n for v in f):
            raise StructureError("mapping is not a function into the target")
        for i in range(P.n):
            for j in bits(P.leq[i]):
                if not Q.leq_ix(f[i], f[j]):
                    raise StructureError(
                        "order not preserved at (%r, %r)" % (P.labels[i], P.labels[j]),
                        witness=(P.labels[i], P.labels[j]),
                    )
        for mask, a in P.joins:
            if Q.join_value(self.image_mask(mask)) != f[a]:
                raise StructureError(
                    "join of %r not carried to a registered join"
                    % ([P.labels[i] for i in bits(mask)],),
                    witness=("join", tuple(P.labels[i] for i in bits(mask))),
                )
        for mask, b in P.meets:
            if Q.meet_value(self.image_mask(mask)) != f[b]:
                raise StructureError(
                    "meet of %r not carried to a registered meet"
                    % ([P.labels[i] for i in bits(mask)],),
                    witness=("meet", tuple(P.labels[i] for i in bits(mask))),
                )

    def is_valid(self) -> bool:
        try:
            self.validate()
        except StructureError:
            return False
        return True

    def is_embedding(self) -> bool:
        P, Q, f = self.source, self.target, self.mapping
        return all(
            P.leq_ix(i, j) == Q.leq_ix(f[i], f[j])
            for i in range(P.n)
            for j in range(P.n)
        )

    def compose(self, then: "PartialLatticeHom") -> "PartialLatticeHom":
        if then.source is not self.target and then.source != self.target:
            raise StructureError("homs do not compose")
        return PartialLatticeHom(
            self.source, then.target, tuple(then.mapping[v] for v in self.mapping)
        )

    def kernel(self) -> Congruence:
        """The quasi-order pulled back from the target's order."""
        P, Q, f = self.source, self.target, self.mapping
        rows = tuple(
            mask_of(j for j in range(P.n) if Q.leq_ix(f[i], f[j]))
            for i in range(P.n)
        )
        return Congruence(P, rows)


def identity_hom(P: FinitePartialLattice) -> PartialLatticeHom:
    return PartialLatticeHom(P, P, tuple(range(P.n)))


def quotient(P: FinitePartialLattice, c: Congruence) -> tuple[FinitePartialLattice, PartialLatticeHom]:
    """The quotient partial lattice and its projection.

    Classes are the blocks of the symmetric kernel of c; the order is the
    one c induces on blocks, and a join is registered for a block set
    exactly when some registered join of P lands on it (dually for meets).
    """
    blocks = c.classes()
    class_of = [0] * P.n
    for k, block in enumerate(blocks):
        for i in block:
            class_of[i] = k
    m = len(blocks)
    labels = tuple(
        P.labels[block[0]]
        if len(block) == 1
        else "[" + "|".join(P.labels[i] for i in block) + "]"
        for block in blocks
    )
    rows = tuple(
        mask_of(l for l in range(m) if c.contains(blocks[k][0], blocks[l][0]))
        for k in range(m)
    )

    def project_entries(entries):
        table: dict[int, int] = {}
        for mask, v in entries:
            pmask = mask_of(class_of[i] for i in bits(mask))
            pv = class_of[v]
            if pmask.bit_count() == 1:
                # the sup of a collapsed argument set collapses with it
                assert pmask == 1 << pv
                continue
            prev = table.setdefault(pmask, pv)
            assert prev == pv, "quotient order is antisymmetric, values cannot differ"
        return tuple(sorted(table.items()))

    Q = FinitePartialLattice(labels, rows, project_entries(P.joins), project_entries(P.meets))
    return Q, PartialLatticeHom(P, Q, tuple(class_of))


def con_f(f: PartialLatticeHom, a: Congruence) -> Congruence:
    """Push a congruence forward: close the image pairs in the target."""
    return congruence_closure(
        f.target, ((f.mapping[i], f.mapping[j]) for i, j in a.pairs())
    )


def res_f(f: PartialLatticeHom, b: Congruence) -> Congruence:
    """Pull a congruence back along f; always a congruence of the source."""
    P, fm = f.source, f.mapping
    rows = tuple(
        mask_of(j for j in range(P.n) if b.contains(fm[i], fm[j]))
        for i in range(P.n)
    )
    return Congruence(P, rows)


def cep_check(
    f: PartialLatticeHom, max_count: int = 20000, max_carrier: int = 8
) -> tuple[bool, Congruence | None]:
    """Does every congruence of the source extend along f?

    a extends exactly when res_f(con_f(a)) = a; the first failing a is the
    witness.
    """
    for a in all_congruences(f.source, max_count=max_count, max_carrier=max_carrier):
        if res_f(f, con_f(f, a)).rel != a.rel:
            return False, a
    return True, None


def ideal_generated(P: FinitePartialLattice, elements: Iterable[int]) -> int:
    """Least down-set closed under registered joins containing the elements.

    The empty set generates the empty ideal.
    """
    mask = mask_of(elements)
    while True:
        before = mask
        for i in bits(mask):
            mask |= P.down_mask(i)
        for amask, a in P.joins:
            if amask & ~mask == 0:
                mask |= 1 << a
        if mask == before:
            return mask


def filter_generated(P: FinitePartialLattice, elements: Iterable[int]) -> int:
    mask = mask_of(elements)
    while True:
        before = mask
        for i in bits(mask):
            mask |= P.up_mask(i)
        for bmask, b in P.meets:
            if bmask & ~mask == 0:
                mask |= 1 << b
        if mask == before:
            return mask


def cofinality_surjection_check(f: PartialLatticeHom) -> bool:
    """With the image generating all of the target both ways, pushing the
    full congruence forward must give the full congruence."""
    image = mask_of(f.mapping)
    Q = f.target
    ideal = ideal_generated(Q, bits(image))
    filt = filter_generated(Q, bits(image))
    if ideal != full_mask(Q.n) or filt != full_mask(Q.n):
        raise StructureError(
            "image does not generate the target as both ideal and filter",
            witness=(
                tuple(Q.labels[i] for i in bits(ideal)),
                tuple(Q.labels[i] for i in bits(filt)),
            ),
        )
    return con_f(f, one_congruence(f.source)).rel == one_congruence(Q).rel


# --- measures ---------------------------------------------------------------


@dataclass(frozen=True)
class SemilatticeAlgebra:
    """Value algebra backed by a finite join-semilattice; values are indices."""

    semilattice: FiniteSemilattice

    @property
    def zero(self):
        return self.semilattice.zero

    def join(self, u, v):
        return self.semilattice.join[u][v]

    def leq(self, u, v) -> bool:
        return self.semilattice.join[u][v] == v

    def format(self, u) -> str:
        return self.semilattice.labels[u]


@dataclass(frozen=True)
class Measure:
    """A distance-like map P x P -> S compatible with the partial operations.

    The axioms: zero on comparable pairs, the triangle inequality, and the
    two splitting laws driven by registered joins and meets.  The integral
    of a congruence is the join of the pair values it contains; on principal
    congruences it returns the table entry back.
    """

    domain: FinitePartialLattice
    algebra: object
    table: tuple[tuple[object, ...], ...]

    def at(self, x: int, y: int):
        return self.table[x][y]

    def at_labels(self, x: str, y: str):
        return self.table[self.domain.index(x)][self.domain.index(y)]

    def integral(self, c: Congruence):
        acc = self.algebra.zero
        for i, j in c.pairs():
            acc = self.algebra.join(acc, self.table[i][j])
        return acc

    def symmetric(self, x: int, y: int):
        return self.algebra.join(self.table[x][y], self.table[y][x])

    def isolates_zero(self) -> bool:
        z = self.algebra.zero
        return all(
            self.domain.leq_ix(x, y)
            for x in range(self.domain.n)
            for y in range(self.domain.n)
            if self.table[x][y] == z
        )


def measure_axiom_violations(mu: Measure) -> list[tuple[str, tuple]]:
    P, S, t = mu.domain, mu.algebra, mu.table
    out = []
    lab = P.labels
    for x in range(P.n):
        for y in bits(P.leq[x]):
            if t[x][y] != S.zero:
                out.append(("zero-on-comparable", (lab[x], lab[y])))
    for x in range(P.n):
        for y in range(P.n):
            for z in range(P.n):
                if not S.leq(t[x][z], S.join(t[x][y], t[y][z])):
                    out.append(("triangle", (lab[x], lab[y], lab[z])))
    for mask, a in P.joins:
        for b in range(P.n):
            acc = S.zero
            for x in bits(mask):
                acc = S.join(acc, t[x][b])
            if t[a][b] != acc:
                out.append(
                    ("join-splitting", (tuple(lab[i] for i in bits(mask)), lab[b]))
                )
    for mask, b in P.meets:
        for a in range(P.n):
            acc = S.zero
            for y in bits(mask):
                acc = S.join(acc, t[a][y])
            if t[a][b] != acc:
                out.append(
                    ("meet-splitting", (lab[a], tuple(lab[i] for i in bits(mask))))
                )
    return out


def validate_measure(mu: Measure) -> None:
    bad = measure_axiom_violations(mu)
    if bad:
        axiom, witness = bad[0]
        raise StructureError("measure axiom %s fails at %r" % (axiom, witness), witness=bad)


def measure_from_conc_hom(
    P: FinitePartialLattice, algebra, phi: Callable[[Congruence], object]
) -> Measure:
    """Tabulate a join-zero map on compact congruences at the principal ones."""
    table = tuple(
        tuple(phi(theta_plus(P, x, y)) for y in range(P.n)) for x in range(P.n)
    )
    return Measure(P, algebra, table)


@dataclass(frozen=True)
class ConcHom:
    """The join-zero map on compact congruences induced by a measure."""

    measure: Measure

    def at(self, c: Congruence):
        return self.measure.integral(c)


def _minimal_decompositions(mu: Measure, c: Congruence, cap: int = 512) -> list[list[tuple[int, int]]]:
    P = mu.domain
    gens: dict[tuple[int, ...], tuple[int, int]] = {}
    for i, j in c.pairs():
        if not P.leq_ix(i, j):
            th = theta_plus(P, i, j)
            gens.setdefault(th.rel, (i, j))
    items = sorted(gens.items(), key=lambda kv: kv[1])
    found: list[list[tuple[int, int]]] = []
    budget = [cap * 64]

    def search(chosen_rel: tuple[int, ...] | None, chosen: list, rest: list) -> None:
        budget[0] -= 1
        if len(found) >= cap or budget[0] < 0:
            return
        if chosen_rel is not None and chosen_rel == c.rel:
            # minimal: no chosen generator is redundant
            for k in range(len(chosen)):
                rows = list(P.leq)
                for rel, _ in chosen[:k] + chosen[k + 1 :]:
                    rows = [r | s for r, s in zip(rows, rel)]
                if _close(P, rows, _DEFAULT_ORDER) == c.rel:
                    return
            found.append([pair for _, pair in chosen])
            return
        if not rest:
            return
        head, *tail = rest
        search(chosen_rel, chosen, tail)
        rel, pair = head
        if chosen_rel is None:
            new_rel = rel
        else:
            rows = [r | s for r, s in zip(chosen_rel, rel)]
            new_rel = _close(P, rows, _DEFAULT_ORDER)
        if all(r & ~cr == 0 for r, cr in zip(new_rel, c.rel)):
            search(new_rel, chosen + [head], tail)

    search(None, [], items)
    return found


def conc_hom_from_measure(mu: Measure, audit: bool = True, max_count: int = 20000) -> ConcHom:
    """Check the measure axioms and (optionally) audit the integral.

    The audit recomputes the integral of every congruence over every minimal
    principal-generator decomposition; a disagreement means the table was
    not a measure and is reported as an inconsistent integral.
    """
    validate_measure(mu)
    if audit:
        S = mu.algebra
        for c in all_congruences(mu.domain, max_count=max_count):
            value = mu.integral(c)
            for decomp in _minimal_decompositions(mu, c):
                acc = S.zero
                for i, j in decomp:
                    acc = S.join(acc, mu.table[i][j])
                if acc != value:
                    raise StructureError(
                        "inconsistent integral: decompositions disagree on a congruence",
                        witness=(c.pair_labels(), decomp),
                    )
    return ConcHom(mu)


def all_conc_homs(P: FinitePartialLattice, S: FiniteSemilattice, max_con: int = 64) -> list[tuple[int, ...]]:
    """All join-zero maps Con P -> S, as value tuples over con_lattice order.

    Values are forced at join-reducible congruences and chosen monotonically
    at join-irreducible ones; every candidate is then checked against the
    full join table.
    """
    CL = con_lattice(P)
    lat = CL.lattice
    if lat.n > max_con:
        raise BoundExceeded("congruence lattice larger than %d" % max_con)
    order = sorted(range(lat.n), key=lambda i: lat.down_mask(i).bit_count())
    covers = {j: [i for i, k in lat.covers() if k == j] for j in range(lat.n)}
    results: list[tuple[int, ...]] = []
    values: dict[int, int] = {}

    def assign(pos: int) -> None:
        if pos == lat.n:
            cand = tuple(values[i] for i in range(lat.n))
            ok = all(
                cand[lat.join[i][j]] == S.join[cand[i]][cand[j]]
                for i in range(lat.n)
                for j in range(i, lat.n)
            )
            if ok:
                results.append(cand)
            return
        c = order[pos]
        lower = covers[c]
        floor = S.zero
        for d in lower:
            floor = S.join[floor][values[d]]
        reducible = bool(lower) and lat.join_mask(mask_of(lower)) == c
        if reducible or lat.down_mask(c) == 1 << c:
            # reducible elements are forced; the bottom is the zero congruence
            values[c] = floor if reducible else S.zero
            assign(pos + 1)
            del values[c]
            return
        for v in range(S.n):
            if S.join[floor][v] == v:
                values[c] = v
                assign(pos + 1)
                del values[c]

    assign(0)
    return results
