"""Command line front end.

Every command loads a JSON structure document (where it takes one), runs
a single operation, and emits a report.  Exit codes: 0 the command
verified its claim or computed its object, 1 it refuted the claim and
the report carries witnesses, 2 the input was invalid, 3 a resource
bound was exceeded.  Identical command, input and seed give
byte-identical JSON reports apart from the timing field.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from fractions import Fraction

from ._bits import bits, mask_of
from .errors import BoundExceeded, StructureError
from .order import (
    CompleteJoinHom,
    CompleteMeetHom,
    FiniteLattice,
    FinitePoset,
    FiniteSemilattice,
    distributivity_witness,
    interpolation_check,
    is_cobrouwerian_finite,
    mid_witness,
    relative_complement_witness,
)
from .plattice import (
    FinitePartialLattice,
    Measure,
    PartialLatticeHom,
    cep_check,
    con_f,
    con_lattice,
    congruence_closure,
    measure_axiom_violations,
    quotient,
    res_f,
    theta,
    theta_plus,
    underlying_lattice,
    validate as validate_plattice,
)
from .freelattice import fl_enumerate, fl_eq, fl_leq, parse_term
from .amalgam import (
    TruncatedSquare,
    congruence_pair_lattice,
    mediating_hom,
    meet_formula_extension,
    pushout,
)
from .spaces import (
    MaxAlgebra,
    OmegaChainPair,
    base_triple,
    left_corner,
    lower_probe,
    mid_probe,
    obstruction_extract_1d,
    obstruction_extract_2d,
    right_corner,
    top_probe,
    witness_scan,
)
from .cube import cube_verify
from .report import Report, start_report
from .structio import document_digest, load_document, structure_to_data
from .suites import run_suite, suite_names

__all__ = ["main", "cli_dispatch"]


# -- document access -----------------------------------------------------


def _load(args, *extra):
    """Load the document and digest it together with the extra arguments
    that distinguish invocations of the same command on the same file."""
    env, raw = load_document(args.doc)
    data = {"document": raw}
    if extra:
        data["arguments"] = list(extra)
    return env, raw, document_digest(data)


def _structure(env, name):
    if name not in env:
        raise StructureError("document lacks a %r structure" % name, witness=sorted(env))
    return env[name]


def _as_partial(obj) -> FinitePartialLattice:
    if isinstance(obj, FinitePartialLattice):
        return obj
    if isinstance(obj, FiniteLattice):
        return FinitePartialLattice.from_lattice(obj, pairs_only=True)
    if isinstance(obj, FiniteSemilattice):
        return FinitePartialLattice.from_lattice(obj.as_lattice(), pairs_only=True)
    if isinstance(obj, FinitePoset):
        return FinitePartialLattice.from_poset(obj)
    raise StructureError("expected an order structure", witness=type(obj).__name__)


def _as_lattice(obj) -> FiniteLattice:
    if isinstance(obj, FinitePartialLattice):
        return underlying_lattice(obj)
    if isinstance(obj, FiniteLattice):
        return obj
    if isinstance(obj, FiniteSemilattice):
        return obj.as_lattice()
    if isinstance(obj, FinitePoset):
        return FiniteLattice.from_poset(obj)
    raise StructureError("expected a lattice", witness=type(obj).__name__)


def _as_semilattice(obj) -> FiniteSemilattice:
    if isinstance(obj, FiniteSemilattice):
        return obj
    return FiniteSemilattice.from_lattice(_as_lattice(obj))


def _encode_value(v, algebra):
    return str(v) if isinstance(algebra, MaxAlgebra) else algebra.semilattice.labels[v]


def _decode_value(raw, algebra):
    return Fraction(raw) if isinstance(algebra, MaxAlgebra) else algebra.semilattice.index(raw)


_PROBES = {"base": base_triple, "left": left_corner, "right": right_corner}


def _probe(name: str):
    """Parse "base", "left", "right", "lower:k", "mid:k", "top:k",
    "top-swap:k" into the corresponding canonical triple."""
    if name in _PROBES:
        return _PROBES[name]()
    kind, _, ix = name.partition(":")
    try:
        k = int(ix)
    except ValueError:
        raise StructureError("unknown probe name", witness=name)
    if kind == "lower":
        return lower_probe(k)
    if kind == "mid":
        return mid_probe(k)
    if kind == "top":
        return top_probe(k)
    if kind == "top-swap":
        return top_probe(k).swap()
    raise StructureError("unknown probe name", witness=name)


def _fragment(raw, key, L):
    frag = raw.get(key)
    if not isinstance(frag, dict):
        raise StructureError("document lacks a %r table" % key, witness=key)
    L.index(next(iter(frag.values())))  # fail early on foreign labels
    return {_probe(name): lbl for name, lbl in frag.items()}


def _chain_pair(env) -> OmegaChainPair:
    for name in ("chain_pair", "main"):
        obj = env.get(name)
        if isinstance(obj, OmegaChainPair):
            return obj
    raise StructureError("document lacks a chain_pair structure", witness=sorted(env))


# -- commands ------------------------------------------------------------


def _cmd_validate(args) -> Report:
    env, _, digest = _load(args)
    P = _as_partial(_structure(env, "main"))
    with start_report("validate", digest, args.seed) as report:
        bad = validate_plattice(P)
        if bad:
            return report.finish(
                "refuted",
                [[kind, list(members), value] for kind, members, value in bad],
                size=P.n,
            )
        return report.finish("verified", size=P.n, joins=len(P.joins), meets=len(P.meets))


def _conc_listing(P, args):
    con = con_lattice(
        P, max_count=args.bound or 20000, max_carrier=args.max_size or 8
    )
    listing = [c.pair_labels() for c in con.congruences]
    return con, [[list(p) for p in pairs] for pairs in listing]


def _cmd_con(args) -> Report:
    env, _, digest = _load(args)
    P = _as_partial(_structure(env, "main"))
    with start_report("con", digest, args.seed) as report:
        con, listing = _conc_listing(P, args)
        return report.finish(
            "verified",
            count=len(con.congruences),
            congruences=listing,
            distributive=con.lattice.n < 2 or distributivity_witness(con.lattice) is None,
        )


def _cmd_conc(args) -> Report:
    env, _, digest = _load(args)
    P = _as_partial(_structure(env, "main"))
    with start_report("conc", digest, args.seed) as report:
        con, listing = _conc_listing(P, args)
        return report.finish(
            "verified",
            count=len(con.congruences),
            congruences=listing,
            semilattice=structure_to_data(con.semilattice()),
        )


def _seed_pairs(raw, P, key="congruence"):
    pairs = raw.get(key)
    if not isinstance(pairs, list):
        raise StructureError("document lacks a %r pair list" % key, witness=key)
    return [(P.index(a), P.index(b)) for a, b in pairs]


def _cmd_quotient(args) -> Report:
    env, raw, digest = _load(args)
    P = _as_partial(_structure(env, "main"))
    with start_report("quotient", digest, args.seed) as report:
        c = congruence_closure(P, _seed_pairs(raw, P))
        Q, proj = quotient(P, c)
        return report.finish(
            "verified",
            quotient=structure_to_data(Q),
            projection={P.labels[i]: Q.labels[proj(i)] for i in range(P.n)},
            classes=[[P.labels[i] for i in block] for block in c.classes()],
        )


def _cmd_theta(args) -> Report:
    env, _, digest = _load(args, args.a, args.b)
    P = _as_partial(_structure(env, "main"))
    with start_report("theta", digest, args.seed) as report:
        a, b = P.index(args.a), P.index(args.b)
        up = theta_plus(P, a, b)
        sym = theta(P, a, b)
        return report.finish(
            "verified",
            pair=[args.a, args.b],
            pairs=[list(p) for p in up.pair_labels()],
            classes=[[P.labels[i] for i in block] for block in sym.classes()],
        )


def _square_of(env) -> TruncatedSquare:
    main = env.get("main")
    if isinstance(main, TruncatedSquare):
        return main
    f, g = env.get("f"), env.get("g")
    if isinstance(f, PartialLatticeHom) and isinstance(g, PartialLatticeHom):
        return TruncatedSquare(f.source, f.target, g.target, f, g)
    raise StructureError("document lacks a square (or f and g homs)", witness=sorted(env))


def _cmd_pushout(args) -> Report:
    env, _, digest = _load(args)
    sq = _square_of(env)
    with start_report("pushout", digest, args.seed) as report:
        po = pushout(sq)
        return report.finish(
            "verified",
            amalgam=structure_to_data(po.R),
            left={sq.P.labels[i]: po.R.labels[po.u(i)] for i in range(sq.P.n)},
            right={sq.Q.labels[i]: po.R.labels[po.v(i)] for i in range(sq.Q.n)},
        )


def _cmd_gamma(args) -> Report:
    env, raw, digest = _load(args)
    sq = _square_of(env)
    S = _as_semilattice(_structure(env, "values"))
    with start_report("gamma", digest, args.seed) as report:
        C = congruence_pair_lattice(
            sq,
            max_count=args.bound or 20000,
            max_carrier=args.max_size or 8,
        )
        mu, nu = raw.get("mu"), raw.get("nu")
        if not isinstance(mu, list) or len(mu) != len(C.conP.congruences):
            raise StructureError(
                "mu must list one value per left congruence",
                witness=len(C.conP.congruences),
            )
        if not isinstance(nu, list) or len(nu) != len(C.conQ.congruences):
            raise StructureError(
                "nu must list one value per right congruence",
                witness=len(C.conQ.congruences),
            )
        muhat = [S.index(lb) for lb in mu]
        nuhat = [S.index(lb) for lb in nu]
        med = mediating_hom(C, muhat, nuhat, S)
        if med.ok:
            return report.finish(
                "verified",
                gamma={
                    C.lattice.labels[e]: S.labels[med.values[e]]
                    for e in range(C.lattice.n)
                },
                pairs=len(C.pairs),
            )
        return report.finish(
            "refuted",
            [{"mu": mu, "nu": nu, "issue": [med.issues[0][0], str(med.issues[0][1])]}],
            issues=[[name, str(w)] for name, w in med.issues],
        )


def _cmd_dual(args) -> Report:
    env, _, digest = _load(args)
    f = _structure(env, "main")
    if not isinstance(f, PartialLatticeHom):
        raise StructureError("dual expects a hom document", witness=type(f).__name__)
    A, B = underlying_lattice(f.source), underlying_lattice(f.target)
    with start_report("dual", digest, args.seed) as report:
        jh = CompleteJoinHom(A, B, f.mapping)
        mh = CompleteMeetHom(A, B, f.mapping)
        if jh.is_valid():
            hom, kind = jh, "join"
        elif mh.is_valid():
            hom, kind = mh, "meet"
        else:
            raise StructureError("not a complete join or meet homomorphism")
        adj = hom.adjoint()
        return report.finish(
            "verified",
            kind=kind,
            adjoint={B.labels[b]: A.labels[adj.mapping[b]] for b in range(B.n)},
            double_dual=tuple(adj.adjoint().mapping) == tuple(hom.mapping),
        )


def _cmd_check(args) -> Report:
    env, _, digest = _load(args)
    command = "check %s" % args.property
    main = _structure(env, "main")

    with start_report(command, digest, args.seed) as report:
        if args.property in ("distributive", "cobrouwerian"):
            lat = _as_lattice(main)
            w = distributivity_witness(lat)
            details = {"size": lat.n}
            if args.property == "cobrouwerian":
                # finite case: equivalent to distributivity, cross-checked
                # against the meet-over-join witness search
                agree = is_cobrouwerian_finite(lat) == (w is None)
                if not agree:
                    raise StructureError("distributivity and MID disagree", witness=mid_witness(lat))
                details["mid_witness"] = mid_witness(lat)
            if w is None:
                return report.finish("verified", **details)
            return report.finish("refuted", [list(w)], **details)

        if args.property == "relcomp":
            lat = _as_lattice(main)
            w = relative_complement_witness(lat)
            if w is None:
                return report.finish("verified", size=lat.n)
            o, a, i = w  # witnesses list the element first, then the interval
            return report.finish("refuted", [[a, o, i]], size=lat.n)

        if args.property == "cep":
            if not isinstance(main, PartialLatticeHom):
                raise StructureError("cep expects a hom document", witness=type(main).__name__)
            ok, a = cep_check(main, max_count=args.bound or 20000)
            if ok:
                return report.finish("verified", source=main.source.n, target=main.target.n)
            back = res_f(main, con_f(main, a))
            P = main.source
            differs = next(
                (P.labels[x], P.labels[y])
                for x in range(P.n)
                for y in range(P.n)
                if a.contains(x, y) != back.contains(x, y)
            )
            return report.finish(
                "refuted",
                [{"congruence": [list(p) for p in a.pair_labels()],
                  "differs_at": list(differs)}],
            )

        if args.property == "interpolation":
            poset = main.as_poset() if isinstance(main, FiniteSemilattice) else main
            if not isinstance(poset, FinitePoset):
                raise StructureError("expected an order structure", witness=type(main).__name__)
            size = args.bound or 2
            subsets = [
                list(c)
                for k in range(1, size + 1)
                for c in itertools.combinations(range(poset.n), k)
            ]
            checked = 0
            for lower in subsets:
                above = [
                    u for u in range(poset.n)
                    if all(poset.leq_ix(x, u) for x in lower)
                ]
                for upper in subsets:
                    if not set(upper) <= set(above):
                        continue
                    checked += 1
                    if interpolation_check(poset, lower, upper) is None:
                        return report.finish(
                            "refuted",
                            [{"lower": [poset.labels[x] for x in lower],
                              "upper": [poset.labels[y] for y in upper]}],
                            checked=checked,
                        )
            return report.finish("verified", checked=checked, max_side=size)

    raise StructureError("unknown property", witness=args.property)


def _cmd_extend_hom(args) -> Report:
    env, raw, digest = _load(args)
    B = _as_semilattice(_structure(env, "main"))
    S = _as_semilattice(_structure(env, "values"))
    with start_report("extend-hom", digest, args.seed) as report:
        subset = raw.get("subset")
        table = raw.get("map")
        if not isinstance(subset, list) or not isinstance(table, dict):
            raise StructureError("document needs 'subset' and 'map' entries")
        a_mask = mask_of(B.index(lb) for lb in subset)
        if not B.is_subsemilattice(a_mask):
            raise StructureError("subset is not a subsemilattice with zero", witness=subset)
        missing = B.cofinality_witness(a_mask)
        if missing is not None:
            raise StructureError("subset is not cofinal", witness=B.labels[missing])
        f = {B.index(lb): S.index(v) for lb, v in table.items()}
        if sorted(f) != sorted(bits(a_mask)):
            raise StructureError("map must cover the subset exactly", witness=sorted(table))
        for x in bits(a_mask):
            for y in bits(a_mask):
                if f[B.join[x][y]] != S.join[f[x]][f[y]]:
                    raise StructureError(
                        "map is not a join homomorphism on the subset",
                        witness=(B.labels[x], B.labels[y]),
                    )
        g = meet_formula_extension(B, a_mask, f, S)
        for x in bits(a_mask):
            if g[x] != f[x]:
                raise StructureError("formula does not extend the map", witness=B.labels[x])
        for x in range(B.n):
            for y in range(B.n):
                if g[B.join[x][y]] != S.join[g[x]][g[y]]:
                    return report.finish(
                        "refuted",
                        [{"x": B.labels[x], "y": B.labels[y],
                          "subset": list(subset), "map": dict(table)}],
                        distributive=S.is_distributive(),
                    )
        return report.finish(
            "verified",
            extension={B.labels[x]: S.labels[g[x]] for x in range(B.n)},
            distributive=S.is_distributive(),
        )


def _cmd_free(args) -> Report:
    if args.relation == "enum":
        env, _, digest = _load(args)
        P = _as_partial(_structure(env, "main"))
        with start_report("free enum", digest, args.seed) as report:
            reps, complete = fl_enumerate(
                P, levels=args.bound or 4, max_terms=args.max_size or 400
            )
            return report.finish(
                "verified",
                count=len(reps),
                complete=complete,
                classes=[str(t) for t in reps],
            )

    if args.left is None or args.right is None:
        raise StructureError("free %s needs two terms" % args.relation)
    env, _, digest = _load(args, args.left, args.right)
    P = _as_partial(_structure(env, "main"))
    command = "free %s" % args.relation
    with start_report(command, digest, args.seed) as report:
        s, t = parse_term(args.left), parse_term(args.right)
        for term in (s, t):
            for sub in term.subterms():
                if sub.kind == "gen" and sub.name not in P.labels:
                    raise StructureError("unknown generator", witness=sub.name)
        holds = fl_eq(P, s, t) if args.relation == "eq" else fl_leq(P, s, t)
        if holds:
            return report.finish("verified", left=str(s), right=str(t))
        return report.finish("refuted", [{"left": str(s), "right": str(t)}])


def _cmd_verify_cube(args) -> Report:
    n = args.max_size or 7
    digest = document_digest({"max_size": n})
    with start_report("verify cube", digest, args.seed) as report:
        rep = cube_verify(n)
        details = {
            "max_size": rep.max_size,
            "lattices": rep.lattices_scanned,
            "simple": rep.simple_count,
            "cocones": rep.cocones,
        }
        if rep.ok():
            return report.finish("verified", **details)
        witnesses = [["image", list(w)] for w in rep.image_defects]
        witnesses += [["separating-cocones", rep.separating_cocones]]
        witnesses += [["forced-equal", list(w)] for w in rep.forced_equal_failures]
        return report.finish("refuted", witnesses, **details)


def _cmd_verify_measure(args) -> Report:
    env, _, digest = _load(args)
    mu = _structure(env, "main")
    if not isinstance(mu, Measure):
        raise StructureError("verify measure expects a measured document",
                             witness=type(mu).__name__)
    with start_report("verify measure", digest, args.seed) as report:
        bad = measure_axiom_violations(mu)
        if not bad:
            return report.finish("verified", size=mu.domain.n)
        return report.finish(
            "refuted", [[name, [str(x) for x in w]] for name, w in bad], size=mu.domain.n
        )


def _obstruction_report(report, rep, algebra) -> Report:
    if not rep.ok():
        raise StructureError("fragment preconditions failed", witness=rep.failures())
    details = {
        "value": _encode_value(rep.value, algebra),
        "sampled": len(rep.sampled),
        "dimension": rep.dimension,
    }
    if rep.verdict == "consistent":
        return report.finish("verified", **details)
    k, side = rep.first_failure
    return report.finish(
        "refuted",
        [{"index": k, "side": side, "value": _encode_value(rep.value, algebra)}],
        **details,
    )


def _indices(raw, key):
    val = raw.get(key, [0])
    if not isinstance(val, list) or not all(isinstance(k, int) for k in val):
        raise StructureError("%s must be a list of chain indices" % key, witness=val)
    return tuple(val)


def _cmd_verify_obstruction_1d(args) -> Report:
    env, raw, digest = _load(args)
    cp = _chain_pair(env)
    psi = _structure(env, "psi")
    L = _as_lattice(_structure(env, "main"))
    with start_report("verify obstruction-1d", digest, args.seed) as report:
        rep = obstruction_extract_1d(
            cp, L, _fragment(raw, "fragment", L), psi,
            lower_indices=_indices(raw, "lower_indices"),
            upper_indices=_indices(raw, "upper_indices"),
            max_k=args.max_size or 64,
        )
        return _obstruction_report(report, rep, cp.algebra)


def _cmd_verify_obstruction_2d(args) -> Report:
    env, raw, digest = _load(args)
    cp = _chain_pair(env)
    L = _as_lattice(_structure(env, "main"))
    rho_raw = raw.get("rho")
    if not isinstance(rho_raw, dict):
        raise StructureError("document lacks a 'rho' table")
    rho = {lb: _decode_value(v, cp.algebra) for lb, v in rho_raw.items()}
    with start_report("verify obstruction-2d", digest, args.seed) as report:
        rep = obstruction_extract_2d(
            cp, L, _fragment(raw, "fragment", L), _fragment(raw, "fragment2", L), rho,
            lower_indices=_indices(raw, "lower_indices"),
            upper_indices=_indices(raw, "upper_indices"),
            max_k=args.max_size or 64,
        )
        return _obstruction_report(report, rep, cp.algebra)


def _cmd_verify_witness(args) -> Report:
    env, _, digest = _load(args)
    cp = _chain_pair(env)
    max_k = args.max_size or 64
    with start_report("verify witness", digest, args.seed) as report:
        scan = witness_scan(
            cp, max_power=args.bound or 8, bound=2, max_k=max_k
        )
        refusals = [k for _, k in scan.entries if k is not None]
        if scan.all_refused():
            return report.finish(
                "verified",
                candidates=len(scan.entries),
                worst_index=max(refusals, default=0),
            )
        return report.finish(
            "refuted",
            [{"survivor": str(q), "max_k": max_k} for q in scan.survivors()],
            candidates=len(scan.entries),
        )


def _cmd_suite(args) -> Report:
    digest = document_digest({"suite": args.name, "scale": args.scale})
    seed = 0 if args.seed is None else args.seed
    command = "suite %s" % args.name
    with start_report(command, digest, seed) as report:
        result = run_suite(args.name, seed=seed, scale=args.scale)
        data = result.to_data()
        # elapsed would be a second timing field; the report already has one
        details = {k: v for k, v in data.items()
                   if k not in ("failures", "name", "seed", "elapsed")}
        if result.passed:
            return report.finish("verified", **details)
        return report.finish("refuted", data["failures"], **details)


# -- dispatch ------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--max-size", type=int, default=None)
    common.add_argument("--bound", type=int, default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("json", "text"), default="text")

    parser = argparse.ArgumentParser(prog="latwb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def doc_command(name, handler, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.add_argument("doc")
        p.set_defaults(handler=handler)
        return p

    doc_command("validate", _cmd_validate)
    doc_command("con", _cmd_con)
    doc_command("conc", _cmd_conc)
    doc_command("quotient", _cmd_quotient)
    p = doc_command("theta", _cmd_theta)
    p.add_argument("a")
    p.add_argument("b")
    doc_command("pushout", _cmd_pushout)
    doc_command("gamma", _cmd_gamma)
    doc_command("dual", _cmd_dual)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("property", choices=(
        "distributive", "relcomp", "cobrouwerian", "cep", "interpolation"))
    p.add_argument("doc")
    p.set_defaults(handler=_cmd_check)

    doc_command("extend-hom", _cmd_extend_hom)

    p = sub.add_parser("free", parents=[common])
    p.add_argument("relation", choices=("leq", "eq", "enum"))
    p.add_argument("doc")
    p.add_argument("left", nargs="?")
    p.add_argument("right", nargs="?")
    p.set_defaults(handler=_cmd_free)

    verify = sub.add_parser("verify").add_subparsers(dest="target", required=True)
    p = verify.add_parser("cube", parents=[common])
    p.set_defaults(handler=_cmd_verify_cube)
    for name, handler in (
        ("measure", _cmd_verify_measure),
        ("obstruction-1d", _cmd_verify_obstruction_1d),
        ("obstruction-2d", _cmd_verify_obstruction_2d),
        ("witness", _cmd_verify_witness),
    ):
        p = verify.add_parser(name, parents=[common])
        p.add_argument("doc")
        p.set_defaults(handler=handler)

    p = sub.add_parser("suite", parents=[common])
    p.add_argument("name", choices=suite_names())
    p.add_argument("--scale", type=float, default=None)
    p.set_defaults(handler=_cmd_suite)
    return parser


def _run(args) -> tuple[int, Report]:
    command = args.command if args.command != "verify" else "verify %s" % args.target
    try:
        report = args.handler(args)
    except StructureError as exc:
        report = Report(command, "-", verdict="error", seed=args.seed)
        report.details = {"error": str(exc)}
        if exc.witness is not None:
            report.details["witness"] = str(exc.witness)
        return 2, report
    except BoundExceeded as exc:
        report = Report(command, "-", verdict="error", seed=args.seed)
        report.details = {"error": str(exc), "bound": True}
        return 3, report
    return {"verified": 0, "refuted": 1}.get(report.verdict, 2), report


def cli_dispatch(argv) -> tuple[int, Report]:
    return _run(_build_parser().parse_args(argv))


def main(argv=None) -> int:
    args = _build_parser().parse_args(sys.argv[1:] if argv is None else argv)
    code, report = _run(args)
    text = report.to_json() if args.format == "json" else report.render_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
