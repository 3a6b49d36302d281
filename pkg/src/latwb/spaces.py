"""Obstruction spaces built from triples of interval sets.

The refutation machinery for one- and two-dimensional interpolation
lives here.  The ambient objects are triples ``<x0, x1, x2>`` of
interval sets over the naturals; boundedness of each component is
recorded by :func:`chi`, and the nested subspaces carve out the triples
on which the two partial semilattice structures below are defined:

* ``A``      all triples,
* ``U``      all three components have the same boundedness,
* ``V``      the first two components have the same boundedness,
* ``P*``     the first component is bounded, or one of the other two
             is nonempty,
* ``P``      the first component is unbounded exactly when one of the
             other two is.

Join and meet on ``P`` are componentwise union and intersection,
defined only when the result lands back in ``P``.  A pair of chains
``a_0 <= a_1 <= ...`` and ``b_0 >= b_1 >= ...`` in a join-semilattice
with zero induces a value ``sigma(t)`` for every ``t`` in ``P*`` and a
distance ``mu(x, y) = sigma(x - y)`` on ``P``; any interpolant of the
two chains is pinned between ``mu``-values of designated probe triples.
The extractors at the bottom of the module exploit this: given a finite
fragment of a would-be factorization they recompute the pinned value
and scan the chains for the first index that contradicts it.

All arithmetic is exact; chain values are either finite semilattice
elements or :class:`fractions.Fraction` under max.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import StructureError
from .intervals import EMPTY_SET, FULL_SET, IntervalSet
from .plattice import Measure, measure_axiom_violations

__all__ = [
    "chi",
    "Triple",
    "MembershipFlags",
    "membership",
    "partial_join",
    "partial_meet",
    "base_triple",
    "left_corner",
    "right_corner",
    "lower_probe",
    "mid_probe",
    "top_probe",
    "MaxAlgebra",
    "OmegaChainPair",
    "sigma",
    "mu",
    "dyadic_witness",
    "WitnessScan",
    "witness_scan",
    "ObstructionReport",
    "obstruction_extract_1d",
    "obstruction_extract_2d",
]


def chi(x: IntervalSet) -> int:
    """1 if ``x`` is unbounded (cofinal in the naturals), else 0."""
    return 0 if x.is_bounded() else 1


@dataclass(frozen=True)
class Triple:
    x0: IntervalSet
    x1: IntervalSet
    x2: IntervalSet

    def components(self):
        return (self.x0, self.x1, self.x2)

    def union(self, other: "Triple") -> "Triple":
        return Triple(self.x0 | other.x0, self.x1 | other.x1, self.x2 | other.x2)

    def intersection(self, other: "Triple") -> "Triple":
        return Triple(self.x0 & other.x0, self.x1 & other.x1, self.x2 & other.x2)

    def difference(self, other: "Triple") -> "Triple":
        return Triple(self.x0 - other.x0, self.x1 - other.x1, self.x2 - other.x2)

    def leq(self, other: "Triple") -> bool:
        return self.x0 <= other.x0 and self.x1 <= other.x1 and self.x2 <= other.x2

    def swap(self) -> "Triple":
        """Exchange the last two components; fixes the first."""
        return Triple(self.x0, self.x2, self.x1)

    def to_data(self):
        return [c.to_data() for c in self.components()]

    @classmethod
    def from_data(cls, data):
        if len(data) != 3:
            raise StructureError("a triple needs exactly three components", witness=data)
        return cls(*(IntervalSet.from_data(c) for c in data))

    def __str__(self):
        return "<%s, %s, %s>" % self.components()


@dataclass(frozen=True)
class MembershipFlags:
    in_A: bool
    in_U: bool
    in_V: bool
    in_P: bool
    in_Pstar: bool


def membership(t: Triple) -> MembershipFlags:
    c0, c1, c2 = (chi(c) for c in t.components())
    in_U = c0 == c1 == c2
    in_V = c0 == c1
    in_P = c0 == (c1 | c2)
    in_Pstar = c0 == 0 or not (t.x1 | t.x2).is_empty()
    return MembershipFlags(True, in_U, in_V, in_P, in_Pstar)


def _require(t: Triple, space: str) -> None:
    flags = membership(t)
    ok = {"A": flags.in_A, "U": flags.in_U, "V": flags.in_V,
          "P": flags.in_P, "P*": flags.in_Pstar}[space]
    if not ok:
        raise StructureError("triple lies outside %s" % space, witness=str(t))


def partial_join(x: Triple, y: Triple) -> Triple | None:
    """Componentwise union, if it stays inside ``P``; else ``None``."""
    _require(x, "P")
    _require(y, "P")
    z = x.union(y)
    return z if membership(z).in_P else None


def partial_meet(x: Triple, y: Triple) -> Triple | None:
    """Componentwise intersection, if it stays inside ``P``; else ``None``."""
    _require(x, "P")
    _require(y, "P")
    z = x.intersection(y)
    return z if membership(z).in_P else None


# -- designated probe triples ------------------------------------------
#
# The corners are the two incomparable triples whose meet every lifting
# must explain; the probes thread between them and the bottom.

def base_triple() -> Triple:
    return Triple(EMPTY_SET, EMPTY_SET, EMPTY_SET)


def left_corner() -> Triple:
    return Triple(FULL_SET, FULL_SET, EMPTY_SET)


def right_corner() -> Triple:
    return Triple(FULL_SET, EMPTY_SET, FULL_SET)


def lower_probe(xi: int) -> Triple:
    """Bounded probe; sigma of it is the lower chain value at ``xi``."""
    return Triple(IntervalSet.initial(xi + 1), EMPTY_SET, EMPTY_SET)


def mid_probe(eta: int) -> Triple:
    """Meet of the left corner with the matching top probe."""
    return Triple(FULL_SET, IntervalSet.tail(eta), EMPTY_SET)


def top_probe(eta: int) -> Triple:
    return Triple(FULL_SET, IntervalSet.tail(eta), FULL_SET)


# -- value chains -------------------------------------------------------


class MaxAlgebra:
    """Nonnegative rationals under max, with zero 0.

    Duck-compatible with :class:`latwb.plattice.SemilatticeAlgebra`;
    used for chain pairs whose values are exact rationals.
    """

    @property
    def zero(self):
        return Fraction(0)

    def join(self, u, v):
        return max(u, v)

    def leq(self, u, v) -> bool:
        return u <= v

    def format(self, u) -> str:
        return str(u)

    def __eq__(self, other):
        return isinstance(other, MaxAlgebra)

    def __hash__(self):
        return hash(MaxAlgebra)


@dataclass(frozen=True)
class OmegaChainPair:
    """An increasing and a decreasing chain of semilattice values.

    Values beyond the stored tables come from the formula when one is
    given, and otherwise repeat the last table entry.  ``algebra``
    supplies ``zero``, ``join`` and ``leq`` for the value type.
    """

    algebra: object
    a_table: tuple
    b_table: tuple
    a_formula: object = None
    b_formula: object = None

    def a(self, k: int):
        if k < len(self.a_table):
            return self.a_table[k]
        if self.a_formula is not None:
            return self.a_formula(k)
        return self.a_table[-1]

    def b(self, k: int):
        if k < len(self.b_table):
            return self.b_table[k]
        if self.b_formula is not None:
            return self.b_formula(k)
        return self.b_table[-1]

    def violations(self, depth: int) -> list[tuple[str, tuple]]:
        """Chain-shape defects visible up to index ``depth``.

        The lower chain must start at zero and increase, the upper
        chain must decrease, and every lower value must sit below
        every upper value; otherwise no interpolant can exist for
        trivial reasons and the extractors refuse to run.
        """
        alg = self.algebra
        out = []
        if self.a(0) != alg.zero:
            out.append(("lower-chain-starts-at-zero", (self.a(0),)))
        for k in range(depth):
            if not alg.leq(self.a(k), self.a(k + 1)):
                out.append(("lower-chain-increasing", (k, self.a(k), self.a(k + 1))))
            if not alg.leq(self.b(k + 1), self.b(k)):
                out.append(("upper-chain-decreasing", (k, self.b(k), self.b(k + 1))))
        for j in range(depth + 1):
            for k in range(depth + 1):
                if not alg.leq(self.a(j), self.b(k)):
                    out.append(("chains-cross", (j, k, self.a(j), self.b(k))))
                    return out
        return out


def sigma(cp: OmegaChainPair, t: Triple):
    """The chain value attached to a triple of ``P*``.

    When the last two components are empty the first is bounded and the
    value climbs the lower chain with its greatest element (zero for the
    empty set); otherwise the value descends the upper chain with the
    least element of the union of the last two components.
    """
    _require(t, "P*")
    rest = t.x1 | t.x2
    if rest.is_empty():
        k = 0 if t.x0.is_empty() else t.x0.max_element()
        return cp.a(k)
    return cp.b(rest.min_element())


def mu(cp: OmegaChainPair, x: Triple, y: Triple):
    """Distance on ``P``: sigma of the componentwise difference."""
    _require(x, "P")
    _require(y, "P")
    d = x.difference(y)
    # differences of members of P always land in P*
    assert membership(d).in_Pstar
    return sigma(cp, d)


def dyadic_witness(depth: int) -> OmegaChainPair:
    """Chain pair of dyadic rationals squeezing on an irrational.

    ``a_k`` and ``b_k`` are the best lower and upper approximations of
    sqrt(2) with denominator ``2**k``, so the chains have no common
    interpolant among dyadics even though every finite stage is
    consistent.  Exact fractions throughout.
    """

    def lo(k: int) -> Fraction:
        # index 0 must carry the zero of the algebra, not isqrt(2) = 1
        return Fraction(0) if k == 0 else Fraction(isqrt(2 * 4 ** k), 2 ** k)

    def hi(k: int) -> Fraction:
        return Fraction(isqrt(2 * 4 ** k) + 1, 2 ** k)

    return OmegaChainPair(
        MaxAlgebra(),
        tuple(lo(k) for k in range(depth + 1)),
        tuple(hi(k) for k in range(depth + 1)),
        a_formula=lo,
        b_formula=hi,
    )


@dataclass(frozen=True)
class WitnessScan:
    """Outcome of sweeping candidate interpolants against a chain pair."""

    entries: tuple  # (candidate, first index refusing it, or None)
    max_k: int

    def all_refused(self) -> bool:
        return all(k is not None for _, k in self.entries)

    def survivors(self) -> list:
        return [q for q, k in self.entries if k is None]


def witness_scan(cp: OmegaChainPair, max_power: int = 8, bound: int = 2,
                 max_k: int = 64) -> WitnessScan:
    """Try every dyadic of denominator ``2**max_power`` in ``[0, bound]``.

    For each candidate ``q`` the scan records the first ``k <= max_k``
    with ``q`` outside ``[a_k, b_k]``, or ``None`` if ``q`` survives.
    """
    alg = cp.algebra
    step = Fraction(1, 2 ** max_power)
    entries = []
    q = Fraction(0)
    while q <= bound:
        found = None
        for k in range(max_k + 1):
            if not (alg.leq(cp.a(k), q) and alg.leq(q, cp.b(k))):
                found = k
                break
        entries.append((q, found))
        q += step
    return WitnessScan(tuple(entries), max_k)


# -- obstruction extractors ---------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    """What a finite fragment of a claimed factorization forces.

    ``preconditions`` records each structural check with a witness for
    the first failure.  When they all hold, ``value`` is the element the
    fragment pins down, ``sampled`` lists the requested chain
    comparisons, and ``first_failure`` is the least chain index
    (with the side, ``"lower"`` or ``"upper"``) contradicting the
    pinned value, if any.
    """

    dimension: int
    preconditions: tuple
    value: object = None
    sampled: tuple = ()
    first_failure: tuple | None = None
    verdict: str = "invalid"

    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.preconditions)

    def failures(self) -> list:
        return [(name, witness) for name, passed, witness in self.preconditions if not passed]


def _check(records: list, name: str, passed: bool, witness=None) -> bool:
    records.append((name, bool(passed), None if passed else witness))
    return bool(passed)


def _comparable_pairs(fragment: dict):
    keys = list(fragment)
    for s in keys:
        for t in keys:
            if s is not t and s.leq(t):
                yield s, t


def _psi_sym(psi: Measure, u: str, v: str):
    return psi.algebra.join(psi.at_labels(u, v), psi.at_labels(v, u))


def obstruction_extract_1d(cp: OmegaChainPair, L, f: dict, psi: Measure,
                           lower_indices=(0,), upper_indices=(0,),
                           max_k: int = 64) -> ObstructionReport:
    """Refutation scan for a one-dimensional factorization fragment.

    ``f`` maps probe triples to labels of the lattice ``L`` and ``psi``
    is a measure on ``L`` taking values in ``cp.algebra``; the
    composite of ``psi`` with ``f`` must reproduce the canonical chain
    values at the probe instances.  The fragment then pins the value

        ``c = psi(f(base), f(left) meet f(right))``

    above every lower chain value and below every upper chain value,
    and the scan reports the first index where that fails.  Verdicts:
    ``invalid`` when a structural precondition fails, ``refuted`` when
    some chain index contradicts ``c``, else ``consistent``.
    """
    alg = cp.algebra
    pre: list = []
    depth = max([*lower_indices, *upper_indices, 0])

    shape = cp.violations(max(depth, 1))
    _check(pre, "chain-pair-shape", not shape, shape[:1])

    required = [base_triple(), left_corner(), right_corner()]
    required += [lower_probe(xi) for xi in lower_indices]
    required += [mid_probe(eta) for eta in upper_indices]
    required += [top_probe(eta) for eta in upper_indices]
    missing = [str(t) for t in required if t not in f]
    if not _check(pre, "fragment-complete", not missing, missing):
        return ObstructionReport(1, tuple(pre))

    outside = [str(t) for t in f if not membership(t).in_P]
    _check(pre, "domain-inside-space", not outside, outside)

    bad_values = [v for v in f.values() if v not in L.labels]
    if not _check(pre, "values-in-lattice", not bad_values, bad_values):
        return ObstructionReport(1, tuple(pre))

    broken = [(str(s), str(t)) for s, t in _comparable_pairs(f)
              if not L.leq_ix(L.index(f[s]), L.index(f[t]))]
    _check(pre, "order-preserved", not broken, broken[:3])

    bad_meets = []
    kA = left_corner()
    for eta in upper_indices:
        got = L.meet_ix(L.index(f[kA]), L.index(f[top_probe(eta)]))
        want = L.index(f[mid_probe(eta)])
        if got != want:
            bad_meets.append((eta, L.labels[got], L.labels[want]))
    _check(pre, "meet-instances", not bad_meets, bad_meets)

    same_labels = tuple(psi.domain.labels) == tuple(L.labels)
    if not _check(pre, "measure-domain-matches", same_labels,
                  (psi.domain.labels, L.labels)):
        return ObstructionReport(1, tuple(pre))
    axioms = measure_axiom_violations(psi)
    _check(pre, "measure-axioms", not axioms, axioms[:1])

    # The composite is checked only at the instances the chain argument
    # consumes.  Valid inputs may well measure other probe pairs higher
    # than the canonical value, so a blanket identity would reject them.
    k0 = f[base_triple()]
    off = []
    for xi in lower_indices:
        got = _psi_sym(psi, f[lower_probe(xi)], k0)
        if got != cp.a(xi):
            off.append(("lower", xi, got, cp.a(xi)))
    for eta in upper_indices:
        got = _psi_sym(psi, f[mid_probe(eta)], k0)
        if got != cp.b(eta):
            off.append(("upper", eta, got, cp.b(eta)))
    _check(pre, "composite-matches-chains", not off, off)

    if any(not passed for _, passed, _ in pre):
        return ObstructionReport(1, tuple(pre))

    m = L.meet_ix(L.index(f[left_corner()]), L.index(f[right_corner()]))
    c = _psi_sym(psi, k0, L.labels[m])

    sampled = []
    for xi in lower_indices:
        sampled.append(("lower", xi, cp.a(xi), alg.leq(cp.a(xi), c)))
    for eta in upper_indices:
        sampled.append(("upper", eta, cp.b(eta), alg.leq(c, cp.b(eta))))

    first = None
    for k in range(max_k + 1):
        if not alg.leq(cp.a(k), c):
            first = (k, "lower")
            break
        if not alg.leq(c, cp.b(k)):
            first = (k, "upper")
            break

    verdict = "refuted" if (first or not all(s[3] for s in sampled)) else "consistent"
    return ObstructionReport(1, tuple(pre), c, tuple(sampled), first, verdict)


def obstruction_extract_2d(cp: OmegaChainPair, L, f: dict, fprime: dict,
                           rho: dict, lower_indices=(0,), upper_indices=(0,),
                           max_k: int = 64) -> ObstructionReport:
    """Refutation scan for a two-dimensional factorization fragment.

    ``f`` and ``fprime`` are fragments of two maps into the meet
    semilattice ``L`` that agree on swap-symmetric triples, and ``rho``
    maps labels of ``L`` into ``cp.algebra`` monotonically with
    ``rho(f(t)) = sigma(t)`` on the fragment.  The pinned value is

        ``c = rho(f(left) meet fprime(left))``

    and the verdict logic matches the one-dimensional extractor.
    """
    alg = cp.algebra
    pre: list = []
    depth = max([*lower_indices, *upper_indices, 0])

    shape = cp.violations(max(depth, 1))
    _check(pre, "chain-pair-shape", not shape, shape[:1])

    kA = left_corner()
    need_f = [kA] + [lower_probe(xi) for xi in lower_indices]
    need_f += [mid_probe(eta) for eta in upper_indices]
    need_f += [top_probe(eta) for eta in upper_indices]
    need_fp = [kA] + [lower_probe(xi) for xi in lower_indices]
    need_fp += [top_probe(eta).swap() for eta in upper_indices]
    missing = [str(t) for t in need_f if t not in f]
    missing += [str(t) + "'" for t in need_fp if t not in fprime]
    if not _check(pre, "fragment-complete", not missing, missing):
        return ObstructionReport(2, tuple(pre))

    outside = [str(t) for t in f if not membership(t).in_V]
    outside += [str(t) + "'" for t in fprime if not membership(t).in_V]
    _check(pre, "domain-inside-space", not outside, outside)

    bad_values = [v for g in (f, fprime) for v in g.values() if v not in L.labels]
    if not _check(pre, "values-in-lattice", not bad_values, bad_values):
        return ObstructionReport(2, tuple(pre))

    bad_rho = [v for v in L.labels if v not in rho]
    if not _check(pre, "assignment-total", not bad_rho, bad_rho):
        return ObstructionReport(2, tuple(pre))

    broken = []
    for name, g in (("f", f), ("f'", fprime)):
        broken += [(name, str(s), str(t)) for s, t in _comparable_pairs(g)
                   if not L.leq_ix(L.index(g[s]), L.index(g[t]))]
    _check(pre, "order-preserved", not broken, broken[:3])

    not_monotone = [(L.labels[i], L.labels[j])
                    for i in range(len(L.labels)) for j in range(len(L.labels))
                    if L.leq_ix(i, j)
                    and not alg.leq(rho[L.labels[i]], rho[L.labels[j]])]
    _check(pre, "assignment-monotone", not not_monotone, not_monotone[:3])

    # the two maps must agree across the swap wherever both are given
    clash = [str(t) for t in f
             if membership(t).in_U and t.swap() in fprime
             and f[t] != fprime[t.swap()]]
    _check(pre, "swap-agreement", not clash, clash)

    bad_meets = []
    for eta in upper_indices:
        got = L.meet_ix(L.index(f[kA]), L.index(f[top_probe(eta)]))
        want = L.index(f[mid_probe(eta)])
        if got != want:
            bad_meets.append((eta, L.labels[got], L.labels[want]))
    _check(pre, "meet-instances", not bad_meets, bad_meets)

    off = []
    for name, g in (("f", f), ("f'", fprime)):
        for t, v in g.items():
            if not membership(t).in_Pstar:
                continue
            got = rho[v]
            want = sigma(cp, t)
            if got != want:
                off.append((name, str(t), got, want))
    _check(pre, "composite-matches-chains", not off, off[:3])

    if any(not passed for _, passed, _ in pre):
        return ObstructionReport(2, tuple(pre))

    m = L.meet_ix(L.index(f[kA]), L.index(fprime[kA]))
    c = rho[L.labels[m]]

    sampled = []
    for xi in lower_indices:
        sampled.append(("lower", xi, cp.a(xi), alg.leq(cp.a(xi), c)))
    for eta in upper_indices:
        sampled.append(("upper", eta, cp.b(eta), alg.leq(c, cp.b(eta))))

    first = None
    for k in range(max_k + 1):
        if not alg.leq(cp.a(k), c):
            first = (k, "lower")
            break
        if not alg.leq(c, cp.b(k)):
            first = (k, "upper")
            break

    verdict = "refuted" if (first or not all(s[3] for s in sampled)) else "consistent"
    return ObstructionReport(2, tuple(pre), c, tuple(sampled), first, verdict)
