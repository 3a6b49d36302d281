"""Terms over a partial lattice and the word problem for the free lattice.

Terms are kept in an AC-normal form: nested joins are flattened into one
argument tuple, duplicates dropped, arguments sorted, and one-argument
operations collapsed, so syntactic equality already quotients by
associativity, commutativity and idempotence.  Everything semantic is left
to the solver.

The order between terms is the least relation closed under the usual
clauses for joins and meets on either side, the registered joins and meets
of the generators, and transitivity through a generator.  The solver
saturates these rules to a fixed point over a finite universe (the subterms
of the queried terms plus every generator); each rule only mentions
subterms or generators, so the universe is closed under everything the
rules can ask for.  Saturation is monotone and bounded by the universe
squared, hence terminates; the recursive formulation would either loop on
generator interpolation or re-derive the same subgoals exponentially often.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._bits import bits, mask_of
from .errors import BoundExceeded, StructureError
from .order import FiniteLattice
from .plattice import Congruence, FinitePartialLattice, quotient

GEN, JOIN, MEET = "gen", "join", "meet"


@dataclass(frozen=True)
class Term:
    kind: str
    name: str | None = None
    args: tuple["Term", ...] = ()

    def __post_init__(self):
        if self.kind == GEN:
            assert self.name is not None and not self.args
        else:
            assert self.kind in (JOIN, MEET) and len(self.args) >= 2

    def subterms(self) -> Iterable["Term"]:
        yield self
        for a in self.args:
            yield from a.subterms()

    def __str__(self) -> str:
        if self.kind == GEN:
            return self.name
        return "(%s %s)" % (self.kind, " ".join(str(a) for a in self.args))


def _key(t: Term):
    if t.kind == GEN:
        return (0, t.name)
    return (1 if t.kind == JOIN else 2, tuple(_key(a) for a in t.args))


def gen(name: str) -> Term:
    return Term(GEN, name)


def _build(kind: str, parts: Iterable[Term]) -> Term:
    flat: list[Term] = []
    for p in parts:
        if p.kind == kind:
            flat.extend(p.args)
        else:
            flat.append(p)
    uniq = sorted(set(flat), key=_key)
    if not uniq:
        raise StructureError("empty %s term" % kind)
    if len(uniq) == 1:
        return uniq[0]
    return Term(kind, args=tuple(uniq))


def join(*parts: Term) -> Term:
    return _build(JOIN, parts)


def meet(*parts: Term) -> Term:
    return _build(MEET, parts)


def parse_term(text: str) -> Term:
    """Parse "(join x (meet y z))"; bare names are generators."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def read() -> Term:
        nonlocal pos
        if pos >= len(tokens):
            raise StructureError("unexpected end of term")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise StructureError("unexpected ')'")
        if tok != "(":
            return gen(tok)
        if pos >= len(tokens) or tokens[pos] not in (JOIN, MEET):
            raise StructureError("expected 'join' or 'meet' after '('")
        kind = tokens[pos]
        pos += 1
        parts = []
        while pos < len(tokens) and tokens[pos] != ")":
            parts.append(read())
        if pos >= len(tokens):
            raise StructureError("missing ')'")
        pos += 1
        return _build(kind, parts)

    out = read()
    if pos != len(tokens):
        raise StructureError("trailing input after term")
    return out


class TermOrderSolver:
    """Saturated term order over a fixed universe of terms.

    One instance answers every comparison among the terms it was built
    with, so batch queries (enumeration levels) pay for a single
    saturation.
    """

    def __init__(self, P: FinitePartialLattice, terms: Sequence[Term] = (), max_universe: int = 4096):
        self.P = P
        universe: dict[Term, int] = {}
        for i in range(P.n):
            universe[gen(P.labels[i])] = len(universe)
        for t in terms:
            for s in t.subterms():
                if s.kind == GEN and s.name not in P.labels:
                    raise StructureError("unknown generator %r" % s.name)
                if s not in universe:
                    universe[s] = len(universe)
        if len(universe) > max_universe:
            raise BoundExceeded("term universe larger than %d" % max_universe)
        self.universe = universe
        self._saturate()

    def _saturate(self) -> None:
        P = self.P
        ix = self.universe
        n = len(ix)
        gen_ix = [ix[gen(lb)] for lb in P.labels]
        # reflexivity is derivable from the rules; seeding it shortens saturation
        rows = [1 << i for i in range(n)]
        for a in range(P.n):
            for b in bits(P.leq[a]):
                rows[gen_ix[a]] |= 1 << gen_ix[b]

        # per-term data for the composite rules
        comp = []
        for t, i in ix.items():
            if t.kind != GEN:
                child_ix = [ix[a] for a in t.args]
                comp.append((t.kind, i, child_ix, mask_of(child_ix)))
        jrules = [(gen_ix[a], [gen_ix[x] for x in bits(m)]) for m, a in P.joins]
        mrules = [(gen_ix[b], mask_of(gen_ix[y] for y in bits(m))) for m, b in P.meets]

        while True:
            before = tuple(rows)
            for kind, i, child_ix, child_mask in comp:
                if kind == JOIN:
                    acc = -1
                    for c in child_ix:
                        acc &= rows[c]
                    rows[i] |= acc  # everything above all joinands is above the join
                    for u in range(n):
                        if rows[u] & child_mask:
                            rows[u] |= 1 << i  # below some joinand
                else:
                    acc = 0
                    for c in child_ix:
                        acc |= rows[c]
                    rows[i] |= acc  # above some meetand
                    for u in range(n):
                        if rows[u] & child_mask == child_mask:
                            rows[u] |= 1 << i  # below all meetands
            for a, xs in jrules:
                acc = -1
                for x in xs:
                    acc &= rows[x]
                rows[a] |= acc
            for b, ymask in mrules:
                bbit = 1 << b
                for u in range(n):
                    if rows[u] & ymask == ymask:
                        rows[u] |= bbit
            for p in gen_ix:
                pbit = 1 << p
                rp = rows[p]
                for u in range(n):
                    if rows[u] & pbit:
                        rows[u] |= rp  # interpolation through a generator
            if tuple(rows) == before:
                break
        self.rows = rows

    def leq(self, s: Term, t: Term) -> bool:
        return bool(self.rows[self.universe[s]] >> self.universe[t] & 1)

    def eq(self, s: Term, t: Term) -> bool:
        return self.leq(s, t) and self.leq(t, s)


def fl_leq(P: FinitePartialLattice, s: Term, t: Term) -> bool:
    return TermOrderSolver(P, [s, t]).leq(s, t)


def fl_eq(P: FinitePartialLattice, s: Term, t: Term) -> bool:
    solver = TermOrderSolver(P, [s, t])
    return solver.leq(s, t) and solver.leq(t, s)


def eval_term(L: FiniteLattice, t: Term, env: dict[str, int]) -> int:
    if t.kind == GEN:
        if t.name not in env:
            raise StructureError("unassigned generator %r" % t.name)
        return env[t.name]
    vals = [eval_term(L, a, env) for a in t.args]
    acc = vals[0]
    for v in vals[1:]:
        acc = L.join[acc][v] if t.kind == JOIN else L.meet[acc][v]
    return acc


def fl_enumerate(
    P: FinitePartialLattice, levels: int, max_terms: int = 400
) -> tuple[list[Term], bool]:
    """Representatives of term classes built from at most `levels` rounds of
    binary joins and meets of earlier representatives.

    Returns the representatives and whether they are already closed under
    both operations (the free lattice is finite and fully listed).
    """
    reps: list[Term] = [gen(lb) for lb in P.labels]
    solver = TermOrderSolver(P, reps)
    kept: list[Term] = []
    for t in reps:
        if not any(solver.eq(t, r) for r in kept):
            kept.append(t)
    reps = kept

    def round_once(current: list[Term]) -> list[Term]:
        cands = []
        for s, t in itertools.combinations(current, 2):
            cands.append(join(s, t))
            cands.append(meet(s, t))
        solver = TermOrderSolver(P, current + cands)
        fresh = []
        for c in cands:
            if not any(solver.eq(c, r) for r in current + fresh):
                fresh.append(c)
        return fresh

    complete = False
    for _ in range(levels):
        fresh = round_once(reps)
        if not fresh:
            complete = True
            break
        reps.extend(fresh)
        if len(reps) > max_terms:
            raise BoundExceeded("more than %d term classes" % max_terms)
    if not complete:
        complete = not round_once(reps)
    return reps, complete


def cep_via_quotient(P: FinitePartialLattice, a: Congruence) -> tuple[bool, tuple[str, str] | None]:
    """Compare the generator order of the free lattice over P/a with the
    quotient order itself.

    The two agree exactly when the quotient's registered operations do not
    force any order collapse beyond the congruence, which is the engine's
    soundness and the quotient construction checked against each other.
    """
    Q, _ = quotient(P, a)
    solver = TermOrderSolver(Q)
    for x in range(Q.n):
        for y in range(Q.n):
            got = solver.leq(gen(Q.labels[x]), gen(Q.labels[y]))
            if got != Q.leq_ix(x, y):
                return False, (Q.labels[x], Q.labels[y])
    return True, None
