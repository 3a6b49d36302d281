"""Pushouts of partial lattices over a shared lattice, and the congruence
transfer machinery that rides on them.

The pushout of two embeddings f : K -> P and g : K -> Q glues P and Q along
K.  Cross-side order goes through the shared part: an element of P sits
below an element of Q exactly when some shared element separates them.
Registered joins and meets are inherited from both sides; on shared
argument sets the two inherited entries agree because K carries all of its
own joins and meets and the embeddings preserve them, which is also what
makes every inherited entry a genuine sup or inf in the glued order.

On congruences the square induces two canonical maps between Con R and the
lattice C of compatible congruence pairs (a, b) with a and b agreeing on K:
restriction phi and generation psi.  Both are computed directly and all of
their expected properties are separate checks with witnesses, so a failure
localizes instead of surfacing as a wrong final answer.
"""
from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from typing import Sequence

from ._bits import bits, full_mask, mask_of
from .errors import BoundExceeded, StructureError
from .order import FiniteLattice, FinitePoset, FiniteSemilattice
from .plattice import (
    ConLattice,
    Congruence,
    FinitePartialLattice,
    Measure,
    PartialLatticeHom,
    SemilatticeAlgebra,
    all_congruences,
    con_lattice,
    congruence_closure,
    is_congruence,
    measure_from_conc_hom,
    one_congruence,
    quotient,
    res_f,
    theta,
    theta_plus,
    validate_measure,
    zero_congruence,
)


@dataclass(frozen=True)
class TruncatedSquare:
    """Two partial lattices with homomorphisms from a shared partial lattice."""

    K: FinitePartialLattice
    P: FinitePartialLattice
    Q: FinitePartialLattice
    f: PartialLatticeHom
    g: PartialLatticeHom

    def validate(self, require_embeddings: bool = True) -> None:
        if self.f.source != self.K or self.g.source != self.K:
            raise StructureError("legs do not start at the shared part")
        if self.f.target != self.P or self.g.target != self.Q:
            raise StructureError("legs do not end at the sides")
        self.f.validate()
        self.g.validate()
        if require_embeddings:
            if not self.f.is_embedding() or not self.g.is_embedding():
                raise StructureError("legs must be order embeddings")


def normalize_shared(sq: TruncatedSquare) -> TruncatedSquare:
    """Relabel so shared elements carry identical k:-prefixed names."""
    knames = tuple("k:" + lb for lb in sq.K.labels)
    pnames = list(sq.P.labels)
    for z in range(sq.K.n):
        pnames[sq.f.mapping[z]] = knames[z]
    qnames = list(sq.Q.labels)
    for z in range(sq.K.n):
        qnames[sq.g.mapping[z]] = knames[z]
    for names, side in ((pnames, "p:"), (qnames, "q:")):
        for i, name in enumerate(names):
            if not name.startswith("k:"):
                names[i] = side + name
    K = dataclasses.replace(sq.K, labels=knames)
    P = dataclasses.replace(sq.P, labels=tuple(pnames))
    Q = dataclasses.replace(sq.Q, labels=tuple(qnames))
    return TruncatedSquare(
        K, P, Q,
        PartialLatticeHom(K, P, sq.f.mapping),
        PartialLatticeHom(K, Q, sq.g.mapping),
    )


@dataclass(frozen=True)
class Pushout:
    R: FinitePartialLattice
    u: PartialLatticeHom  # P -> R
    v: PartialLatticeHom  # Q -> R


def pushout(sq: TruncatedSquare) -> Pushout:
    sq.validate()
    K, P, Q, f, g = sq.K, sq.P, sq.Q, sq.f.mapping, sq.g.mapping
    if not K.totally_registered():
        # agreement of inherited entries on shared argument sets, and the
        # genuineness of inherited sups across sides, both lean on K having
        # all of its own joins and meets
        raise StructureError("shared part must carry all of its joins and meets")
    fimg = mask_of(f)
    gimg = mask_of(g)
    p_rest = [i for i in range(P.n) if not fimg >> i & 1]
    q_rest = [i for i in range(Q.n) if not gimg >> i & 1]
    n = K.n + len(p_rest) + len(q_rest)

    u = [0] * P.n
    for z in range(K.n):
        u[f[z]] = z
    for r, i in enumerate(p_rest):
        u[i] = K.n + r
    v = [0] * Q.n
    for z in range(K.n):
        v[g[z]] = z
    for r, i in enumerate(q_rest):
        v[i] = K.n + len(p_rest) + r

    # each R-element as (index in P or None, index in Q or None)
    in_p: list[int | None] = [None] * n
    in_q: list[int | None] = [None] * n
    for z in range(K.n):
        in_p[z], in_q[z] = f[z], g[z]
    for r, i in enumerate(p_rest):
        in_p[K.n + r] = i
    for r, i in enumerate(q_rest):
        in_q[K.n + len(p_rest) + r] = i

    labels = tuple(
        ["k:" + lb for lb in K.labels]
        + ["p:" + P.labels[i] for i in p_rest]
        + ["q:" + Q.labels[i] for i in q_rest]
    )

    def below(i: int, j: int) -> bool:
        pi, pj, qi, qj = in_p[i], in_p[j], in_q[i], in_q[j]
        if pi is not None and pj is not None:
            return P.leq_ix(pi, pj)
        if qi is not None and qj is not None:
            return Q.leq_ix(qi, qj)
        if pi is not None:  # P side below Q side, through the shared part
            return any(P.leq_ix(pi, f[z]) and Q.leq_ix(g[z], qj) for z in range(K.n))
        return any(Q.leq_ix(qi, g[z]) and P.leq_ix(f[z], pj) for z in range(K.n))

    rows = tuple(mask_of(j for j in range(n) if below(i, j)) for i in range(n))

    def inherit(entriesP, entriesQ):
        table: dict[int, int] = {}
        for entries, side in ((entriesP, u), (entriesQ, v)):
            for mask, a in entries:
                rmask = mask_of(side[x] for x in bits(mask))
                val = side[a]
                prev = table.setdefault(rmask, val)
                if prev != val:
                    raise StructureError(
                        "sides disagree on a shared operation",
                        witness=tuple(labels[x] for x in bits(rmask)),
                    )
        return tuple(sorted(table.items()))

    R = FinitePartialLattice(
        labels, rows, inherit(P.joins, Q.joins), inherit(P.meets, Q.meets)
    )
    return Pushout(R, PartialLatticeHom(P, R, tuple(u)), PartialLatticeHom(Q, R, tuple(v)))


def pushout_mediator(
    po: Pushout, hP: PartialLatticeHom, hQ: PartialLatticeHom
) -> PartialLatticeHom:
    """The unique hom out of the glued structure agreeing with both sides.

    Gluing is the only candidate since the sides jointly cover the carrier;
    validity needs the two given homs to agree on the shared part.
    """
    if hP.target != hQ.target:
        raise StructureError("sides must map into one target")
    mapping = [0] * po.R.n
    for i in range(po.u.source.n):
        mapping[po.u.mapping[i]] = hP.mapping[i]
    for j in range(po.v.source.n):
        r = po.v.mapping[j]
        if po.R.labels[r].startswith("k:"):
            if mapping[r] != hQ.mapping[j]:
                raise StructureError(
                    "sides disagree on the shared part", witness=po.R.labels[r]
                )
        else:
            mapping[r] = hQ.mapping[j]
    h = PartialLatticeHom(po.R, hP.target, tuple(mapping))
    h.validate()
    return h


# --- the lattice of compatible congruence pairs -----------------------------


@dataclass(frozen=True)
class PairLattice:
    """Pairs of side congruences that agree on the shared part.

    The family is closed under componentwise meets and contains the top
    pair, so it is a lattice; its joins are computed inside the family and
    are generally larger than componentwise unions.
    """

    lattice: FiniteLattice
    pairs: tuple[tuple[int, int], ...]  # indices into conP/conQ
    conP: ConLattice
    conQ: ConLattice

    def index_of(self, a: Congruence, b: Congruence) -> int:
        ia = self.conP.index_of(a)
        ib = self.conQ.index_of(b)
        return self.pairs.index((ia, ib))

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def bottom(self) -> int:
        return self.lattice.bottom


def congruence_pair_lattice(
    sq: TruncatedSquare, max_count: int = 20000, max_carrier: int = 8
) -> PairLattice:
    conP = con_lattice(sq.P, max_count=max_count, max_carrier=max_carrier)
    conQ = con_lattice(sq.Q, max_count=max_count, max_carrier=max_carrier)
    restP = [res_f(sq.f, a).rel for a in conP.congruences]
    restQ = [res_f(sq.g, b).rel for b in conQ.congruences]
    pairs = [
        (ia, ib)
        for ia in range(len(restP))
        for ib in range(len(restQ))
        if restP[ia] == restQ[ib]
    ]
    if len(pairs) > max_count:
        raise BoundExceeded("more than %d compatible pairs" % max_count)
    labels = tuple("e%d" % i for i in range(len(pairs)))
    rows = []
    for ia, ib in pairs:
        r = 0
        for k, (ja, jb) in enumerate(pairs):
            if conP.lattice.leq_ix(ia, ja) and conQ.lattice.leq_ix(ib, jb):
                r |= 1 << k
        rows.append(r)
    lat = FiniteLattice.from_poset(FinitePoset(labels, tuple(rows)))
    return PairLattice(lat, tuple(pairs), conP, conQ)


def phi_values(C: PairLattice, po: Pushout, conR: ConLattice) -> list[int]:
    """Restriction of each congruence of the glued structure to both sides."""
    lookup = {pair: i for i, pair in enumerate(C.pairs)}
    out = []
    for c in conR.congruences:
        ia = C.conP.index_of(res_f(po.u, c))
        ib = C.conQ.index_of(res_f(po.v, c))
        out.append(lookup[(ia, ib)])
    return out


def psi_congruence(C: PairLattice, po: Pushout, e: int) -> Congruence:
    """Least congruence of the glued structure restricting above the pair."""
    ia, ib = C.pairs[e]
    a = C.conP.congruences[ia]
    b = C.conQ.congruences[ib]
    seed = [(po.u.mapping[i], po.u.mapping[j]) for i, j in a.pairs()]
    seed += [(po.v.mapping[i], po.v.mapping[j]) for i, j in b.pairs()]
    return congruence_closure(po.R, seed)


def pair_map_checks(
    C: PairLattice, po: Pushout, conR: ConLattice
) -> list[tuple[str, bool, object]]:
    """Every structural property of phi and psi, individually witnessed."""
    checks: list[tuple[str, bool, object]] = []
    phi = phi_values(C, po, conR)
    psi = [conR.index_of(psi_congruence(C, po, e)) for e in range(C.lattice.n)]
    latR, latC = conR.lattice, C.lattice

    bad = next(
        (
            (i, j)
            for i in range(latR.n)
            for j in range(latR.n)
            if phi[latR.meet[i][j]] != latC.meet[phi[i]][phi[j]]
        ),
        None,
    )
    checks.append(("phi-meet-hom", bad is None, bad))
    checks.append(("phi-top", phi[latR.top] == latC.top, None))

    bad = next(
        (
            (e, d)
            for e in range(latC.n)
            for d in range(latC.n)
            if psi[latC.join[e][d]] != latR.join[psi[e]][psi[d]]
        ),
        None,
    )
    checks.append(("psi-join-hom", bad is None, bad))
    checks.append(("psi-bottom", psi[latC.bottom] == latR.bottom, None))
    checks.append(("psi-top", psi[latC.top] == latR.top, None))

    bad = next((e for e in range(latC.n) if phi[psi[e]] != e), None)
    checks.append(("phi-after-psi-is-identity", bad is None, bad))
    checks.append(("phi-surjective", sorted(set(phi)) == list(range(latC.n)), None))
    checks.append(("psi-injective", len(set(psi)) == latC.n, None))

    bad = next(
        (c for c in range(latR.n) if not latR.leq_ix(psi[phi[c]], c)), None
    )
    checks.append(("psi-phi-below-identity", bad is None, bad))
    return checks


# --- mediating maps on congruence pairs -------------------------------------


def conc_values(mu: Measure, con: ConLattice) -> list:
    return [mu.integral(c) for c in con.congruences]


def alpha_indices(C: PairLattice) -> list[int]:
    """For each side congruence the least compatible pair dominating it."""
    out = []
    for ia in range(len(C.conP.congruences)):
        cand = [
            k
            for k, (ja, jb) in enumerate(C.pairs)
            if C.conP.lattice.leq_ix(ia, ja)
        ]
        least = cand[0]
        for k in cand[1:]:
            least = C.lattice.meet[least][k]
        out.append(least)
    return out


def beta_indices(C: PairLattice) -> list[int]:
    out = []
    for ib in range(len(C.conQ.congruences)):
        cand = [
            k
            for k, (ja, jb) in enumerate(C.pairs)
            if C.conQ.lattice.leq_ix(ib, jb)
        ]
        least = cand[0]
        for k in cand[1:]:
            least = C.lattice.meet[least][k]
        out.append(least)
    return out


@dataclass(frozen=True)
class Mediation:
    ok: bool
    values: tuple[int, ...] | None
    issues: tuple[tuple[str, object], ...]


def mediating_hom(
    C: PairLattice, muhat: Sequence[int], nuhat: Sequence[int], S: FiniteSemilattice
) -> Mediation:
    """Try to fill the pair lattice with values forced by the two sides.

    Every pair must be a join of one lifted side value from each side, and
    all such representations must force the same value; any gap or clash is
    an issue, and the filled map must itself preserve joins and zero.
    """
    alpha = alpha_indices(C)
    beta = beta_indices(C)
    nC = C.lattice.n
    candidates: list[set[int]] = [set() for _ in range(nC)]
    for ia, av in enumerate(alpha):
        for ib, bv in enumerate(beta):
            e = C.lattice.join[av][bv]
            candidates[e].add(S.join[muhat[ia]][nuhat[ib]])
    issues = []
    for e in range(nC):
        if not candidates[e]:
            issues.append(("no-representation", C.lattice.labels[e]))
        elif len(candidates[e]) > 1:
            issues.append(
                (
                    "value-disagreement",
                    (C.lattice.labels[e], tuple(sorted(S.labels[x] for x in candidates[e]))),
                )
            )
    if issues:
        return Mediation(False, None, tuple(issues))
    gamma = tuple(candidates[e].pop() for e in range(nC))
    for i in range(nC):
        for j in range(nC):
            if gamma[C.lattice.join[i][j]] != S.join[gamma[i]][gamma[j]]:
                issues.append(("join-not-preserved", (C.lattice.labels[i], C.lattice.labels[j])))
    if gamma[C.lattice.bottom] != S.zero:
        issues.append(("zero-not-preserved", None))
    for ia, av in enumerate(alpha):
        if gamma[av] != muhat[ia]:
            issues.append(("left-restriction", ia))
    for ib, bv in enumerate(beta):
        if gamma[bv] != nuhat[ib]:
            issues.append(("right-restriction", ib))
    if issues:
        return Mediation(False, tuple(gamma), tuple(issues))
    return Mediation(True, tuple(gamma), ())


# --- extension along a cofinal subsemilattice -------------------------------


def meet_formula_extension(
    B: FiniteSemilattice, a_mask: int, f: dict[int, int], S: FiniteSemilattice
) -> list[int]:
    """g(b) = meet of f over the members of A above b; no soundness checks."""
    out = []
    for b in range(B.n):
        vals = [f[x] for x in bits(a_mask) if B.leq_ix(b, x)]
        if not vals:
            raise StructureError(
                "no member of the subsemilattice above %r" % B.labels[b],
                witness=B.labels[b],
            )
        acc = vals[0]
        for v in vals[1:]:
            acc = S.meet_ix(acc, v)
        out.append(acc)
    return out


def extend_hom_cofinal(
    B: FiniteSemilattice, a_mask: int, f: dict[int, int], S: FiniteSemilattice
) -> list[int]:
    """Extend a join-zero map from a cofinal subsemilattice to all of B.

    Distributivity of the codomain is what makes the meet formula a
    join-homomorphism, so a nondistributive codomain is refused up front.
    """
    if not S.is_distributive():
        raise StructureError("codomain must be distributive")
    if not B.is_subsemilattice(a_mask):
        raise StructureError("domain subset is not a subsemilattice with zero")
    if B.cofinality_witness(a_mask) is not None:
        raise StructureError(
            "domain subset is not cofinal",
            witness=B.labels[B.cofinality_witness(a_mask)],
        )
    members = list(bits(a_mask))
    if f[B.zero] != S.zero:
        raise StructureError("zero not preserved")
    for x in members:
        for y in members:
            j = B.join[x][y]
            if f[j] != S.join[f[x]][f[y]]:
                raise StructureError(
                    "not a join-homomorphism on the subsemilattice",
                    witness=(B.labels[x], B.labels[y]),
                )
    g = meet_formula_extension(B, a_mask, f, S)
    for x in members:
        assert g[x] == f[x], "the formula fixes the subsemilattice pointwise"
    for x in range(B.n):
        for y in range(B.n):
            assert g[B.join[x][y]] == S.join[g[x]][g[y]], (
                "meet formula into a distributive codomain preserves joins"
            )
    return g


# --- measured structures and the saturation pipeline ------------------------


@dataclass(frozen=True)
class MeasuredPartialLattice:
    measure: Measure

    @property
    def carrier(self) -> FinitePartialLattice:
        return self.measure.domain

    def is_proper(self) -> bool:
        return self.measure.isolates_zero()

    def validate(self) -> None:
        validate_measure(self.measure)


def zero_set_congruence(mu: Measure) -> Congruence:
    """Pairs at measure zero; the axioms make this a congruence."""
    P = mu.domain
    rows = tuple(
        mask_of(j for j in range(P.n) if mu.at(i, j) == mu.algebra.zero)
        for i in range(P.n)
    )
    if not is_congruence(P, rows):
        raise StructureError("zero set is not a congruence; not a measure")
    return Congruence(P, rows)


def kernel_projection(mp: MeasuredPartialLattice) -> tuple[MeasuredPartialLattice, PartialLatticeHom]:
    """Collapse the zero set; the induced measure is proper.

    Values pass to class representatives unchanged: within a class all
    cross distances are zero, so the triangle axiom pins every distance
    between classes to the distance between any representatives.
    """
    mu = mp.measure
    d = zero_set_congruence(mu)
    Qp, pi = quotient(mu.domain, d)
    reps = [blk[0] for blk in d.classes()]
    table = tuple(
        tuple(mu.at(reps[i], reps[j]) for j in range(Qp.n)) for i in range(Qp.n)
    )
    out = MeasuredPartialLattice(Measure(Qp, mu.algebra, table))
    return out, pi


@dataclass(frozen=True)
class ReducedSquare:
    square: TruncatedSquare
    mu: Measure
    nu: Measure
    projK: PartialLatticeHom
    projP: PartialLatticeHom
    projQ: PartialLatticeHom


def reduce_to_embeddings(sq: TruncatedSquare, mu: Measure, nu: Measure) -> ReducedSquare:
    """Collapse both zero sets so the legs become embeddings of proper parts.

    Requires the two measures to agree across the shared part; the value of
    a principal congruence's integral is the table entry, so agreement is a
    pointwise check over shared pairs.
    """
    sq.validate(require_embeddings=False)
    if mu.algebra != nu.algebra:
        raise StructureError("measures take values in different algebras")
    K, f, g = sq.K, sq.f.mapping, sq.g.mapping
    for x in range(K.n):
        for y in range(K.n):
            if mu.at(f[x], f[y]) != nu.at(g[x], g[y]):
                raise StructureError(
                    "measures disagree on the shared part",
                    witness=(K.labels[x], K.labels[y]),
                )
    mpP, piP = kernel_projection(MeasuredPartialLattice(mu))
    mpQ, piQ = kernel_projection(MeasuredPartialLattice(nu))
    dK = res_f(sq.f, zero_set_congruence(mu))
    assert dK.rel == res_f(sq.g, zero_set_congruence(nu)).rel
    Kp, piK = quotient(K, dK)
    fp = PartialLatticeHom(
        Kp, mpP.carrier,
        tuple(piP.mapping[f[blk[0]]] for blk in dK.classes()),
    )
    gp = PartialLatticeHom(
        Kp, mpQ.carrier,
        tuple(piQ.mapping[g[blk[0]]] for blk in dK.classes()),
    )
    fp.validate()
    gp.validate()
    sq2 = TruncatedSquare(Kp, mpP.carrier, mpQ.carrier, fp, gp)
    sq2.validate(require_embeddings=True)
    return ReducedSquare(sq2, mpP.measure, mpQ.measure, piK, piP, piQ)


@dataclass(frozen=True)
class SaturationResult:
    ok: bool
    checks: tuple[tuple[str, bool, object], ...]
    reduced: ReducedSquare
    po: Pushout
    C: PairLattice
    mediation: Mediation
    result: MeasuredPartialLattice | None
    proj: PartialLatticeHom | None  # glued structure onto the proper result
    intermediate: MeasuredPartialLattice | None


def saturation_step(
    sq: TruncatedSquare,
    mu: Measure,
    nu: Measure,
    max_count: int = 20000,
    max_carrier: int = 8,
) -> SaturationResult:
    """One round of gluing two measured partial lattices over a shared part.

    Reduce to embeddings, glue, mediate the side values over the compatible
    pair lattice, extend along the generated congruences to all of Con of
    the glued structure, and project out the zero set.  Every step that the
    theory predicts is recorded as a named check with a witness on failure.
    """
    if not isinstance(mu.algebra, SemilatticeAlgebra):
        raise StructureError("saturation needs values in a finite semilattice")
    red = reduce_to_embeddings(sq, mu, nu)
    po = pushout(red.square)
    conR = con_lattice(po.R, max_count=max_count, max_carrier=max_carrier)
    C = congruence_pair_lattice(red.square, max_count=max_count, max_carrier=max_carrier)
    checks = list(pair_map_checks(C, po, conR))

    S = red.mu.algebra.semilattice
    med = mediating_hom(C, conc_values(red.mu, C.conP), conc_values(red.nu, C.conQ), S)
    checks.append(("mediation", med.ok, med.issues or None))
    if not med.ok or not all(passed for _, passed, _ in checks):
        # the extension step leans on psi being a join-embedding hitting the
        # top, so a failed structural check stops the pipeline here
        return SaturationResult(False, tuple(checks), red, po, C, med, None, None, None)

    psi = [conR.index_of(psi_congruence(C, po, e)) for e in range(C.lattice.n)]
    image = mask_of(psi)
    conRsl = conR.semilattice()
    h = {psi[e]: med.values[e] for e in range(C.lattice.n)}
    lam_values = extend_hom_cofinal(conRsl, image, h, S)

    lam = measure_from_conc_hom(
        po.R,
        SemilatticeAlgebra(S),
        lambda c: lam_values[conR.index_of(c)],
    )
    bad = None
    try:
        validate_measure(lam)
    except StructureError as err:
        bad = err.witness
    checks.append(("glued-table-is-measure", bad is None, bad))

    fin, proj = kernel_projection(MeasuredPartialLattice(lam))
    checks.append(("result-proper", fin.is_proper(), None))

    up, vq = po.u, po.v
    bad = next(
        (
            (red.square.P.labels[x], red.square.P.labels[y])
            for x in range(red.square.P.n)
            for y in range(red.square.P.n)
            if lam.at(up.mapping[x], up.mapping[y]) != red.mu.at(x, y)
        ),
        None,
    )
    checks.append(("restriction-to-left", bad is None, bad))
    bad = next(
        (
            (red.square.Q.labels[x], red.square.Q.labels[y])
            for x in range(red.square.Q.n)
            for y in range(red.square.Q.n)
            if lam.at(vq.mapping[x], vq.mapping[y]) != red.nu.at(x, y)
        ),
        None,
    )
    checks.append(("restriction-to-right", bad is None, bad))

    fz, gz = red.square.f.mapping, red.square.g.mapping
    assert all(
        proj.mapping[up.mapping[fz[z]]] == proj.mapping[vq.mapping[gz[z]]]
        for z in range(red.square.K.n)
    ), "the glued square commutes by construction"

    ok = all(passed for _, passed, _ in checks)
    return SaturationResult(
        ok, tuple(checks), red, po, C, med,
        fin if ok else None, proj if ok else None,
        MeasuredPartialLattice(lam),
    )


# --- stock measured structures ----------------------------------------------


def rc_gadget(S: FiniteSemilattice, v1: int, v2: int) -> MeasuredPartialLattice:
    """The measured square: two incomparable midpoints with axis values.

    Proper exactly when both axis values are nonzero.
    """
    from .order import boolean_cube

    P = FinitePartialLattice.from_lattice(boolean_cube(2))
    t1 = theta(P, P.index("00"), P.index("10"))
    t2 = theta(P, P.index("00"), P.index("01"))
    con = con_lattice(P)

    def phi(c: Congruence) -> int:
        val = S.zero
        if t1.le(c):
            val = S.join[val][v1]
        if t2.le(c):
            val = S.join[val][v2]
        return val

    mp = MeasuredPartialLattice(measure_from_conc_hom(P, SemilatticeAlgebra(S), phi))
    assert len(con.congruences) == 4, "the square has exactly four congruences"
    return mp


def transpose_check(
    P: FinitePartialLattice, lo1: int, hi1: int, lo2: int, hi2: int
) -> tuple[str | None, bool]:
    """Transposition relation between two intervals and whether the
    congruences collapsing them coincide."""
    if not (P.leq_ix(lo1, hi1) and P.leq_ix(lo2, hi2)):
        raise StructureError("arguments are not intervals")
    pair = mask_of((hi1, lo2))
    up = P.join_value(pair) == hi2 and P.meet_value(pair) == lo1
    pair = mask_of((lo1, hi2))
    down = P.join_value(pair) == hi1 and P.meet_value(pair) == lo2
    relation = "up" if up else "down" if down else None
    same = theta(P, lo1, hi1).rel == theta(P, lo2, hi2).rel
    return relation, same


def perspectivity_witness(lat: FiniteLattice, o: int, i: int, a: int, b: int) -> int | None:
    """An element of [o, i] complementing both a and b there, if any."""
    for x in (o, i, a, b):
        if not 0 <= x < lat.n:
            raise StructureError("element index out of range", witness=x)
    if not all(lat.leq_ix(o, y) and lat.leq_ix(y, i) for y in (a, b)):
        raise StructureError("elements do not lie in the interval")
    for x in range(lat.n):
        if not (lat.leq_ix(o, x) and lat.leq_ix(x, i)):
            continue
        if (lat.meet_ix(a, x) == o and lat.join_ix(a, x) == i
                and lat.meet_ix(b, x) == o and lat.join_ix(b, x) == i):
            return x
    return None


def perspectivity_check(lat: FiniteLattice, o: int, i: int, a: int, b: int) -> bool:
    """Do a and b share a complement in the interval [o, i]?"""
    return perspectivity_witness(lat, o, i, a, b) is not None
