"""The workbench JSON document format.

A document is either a single structure object or a mapping of names to
structures under a ``structures`` key; structures reference each other
by name (homs name their source and target).  Elements are strings,
relations are arrays of label pairs, and registered joins and meets are
``{"args": [...], "value": ...}`` records.  Order relations are closed
reflexively and transitively on load, so a file may list only covers.

Kinds: ``poset``, ``lattice``, ``semilattice``, ``partial_lattice``,
``hom``, ``square``, ``measured``, ``chain_pair``, ``triple``.
Measured structures and chain pairs carry their values either as labels
of a named semilattice or, under the ``max`` algebra, as exact rational
strings.  Any other top-level keys of a document are left alone; the
commands that need auxiliary payloads (probe fragments, index lists)
read them from there.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .amalgam import TruncatedSquare
from .errors import StructureError
from .order import (
    FiniteLattice,
    FinitePoset,
    FiniteSemilattice,
)
from .plattice import (
    FinitePartialLattice,
    Measure,
    PartialLatticeHom,
    SemilatticeAlgebra,
)
from .spaces import MaxAlgebra, OmegaChainPair, Triple

__all__ = [
    "load_document",
    "loads_document",
    "dump_structures",
    "structure_to_data",
    "canonical_json",
    "document_digest",
]

KINDS = ("poset", "lattice", "semilattice", "partial_lattice", "hom",
         "square", "measured", "chain_pair", "triple")


def _relation_pairs(data) -> list[tuple[str, str]]:
    rel = data.get("leq", [])
    out = []
    for pair in rel:
        if len(pair) != 2:
            raise StructureError("relation entries must be pairs", witness=pair)
        out.append((pair[0], pair[1]))
    return out


def _entries(data, key):
    out = []
    for rec in data.get(key, []):
        if "args" not in rec or "value" not in rec:
            raise StructureError("join/meet records need args and value", witness=rec)
        out.append((tuple(rec["args"]), rec["value"]))
    return out


def _value_codec(algebra_name, env):
    """Encode/decode table values for the named algebra."""
    if algebra_name == "max":
        alg = MaxAlgebra()
        return alg, lambda v: Fraction(v), lambda v: str(v)
    base = env.get(algebra_name)
    if not isinstance(base, FiniteSemilattice):
        raise StructureError("algebra must name a semilattice or be 'max'",
                             witness=algebra_name)
    alg = SemilatticeAlgebra(base)
    return alg, lambda v: base.index(v), lambda v: base.labels[v]


def _build(kind, data, env):
    if kind == "poset":
        return FinitePoset.from_relation(tuple(data["labels"]), _relation_pairs(data))
    if kind == "lattice":
        return FiniteLattice.from_relation(tuple(data["labels"]), _relation_pairs(data))
    if kind == "semilattice":
        lat = FiniteLattice.from_relation(tuple(data["labels"]), _relation_pairs(data))
        return FiniteSemilattice.from_lattice(lat)
    if kind == "partial_lattice":
        return FinitePartialLattice.from_data(
            tuple(data["labels"]), _relation_pairs(data),
            _entries(data, "joins"), _entries(data, "meets"))
    if kind == "hom":
        src = _as_partial(_resolve(data["source"], env))
        dst = _as_partial(_resolve(data["target"], env))
        mapping = dict(data["map"]) if isinstance(data["map"], dict) else dict(
            (a, b) for a, b in data["map"])
        table = tuple(dst.index(mapping[lbl]) for lbl in src.labels)
        return PartialLatticeHom(src, dst, table)
    if kind == "square":
        f = _resolve(data["f"], env)
        g = _resolve(data["g"], env)
        return TruncatedSquare(f.source, f.target, g.target, f, g)
    if kind == "measured":
        dom = _as_partial(_resolve(data["domain"], env))
        alg, dec, _ = _value_codec(data.get("algebra", "max"), env)
        cells = {}
        for x, y, v in data["table"]:
            cells[dom.index(x), dom.index(y)] = dec(v)
        table = []
        for i in range(dom.n):
            row = []
            for j in range(dom.n):
                if (i, j) not in cells:
                    raise StructureError(
                        "measure table must cover every ordered pair",
                        witness=(dom.labels[i], dom.labels[j]))
                row.append(cells[i, j])
            table.append(tuple(row))
        return Measure(dom, alg, tuple(table))
    if kind == "chain_pair":
        if "dyadic_depth" in data:
            from .spaces import dyadic_witness

            return dyadic_witness(int(data["dyadic_depth"]))
        alg, dec, _ = _value_codec(data.get("algebra", "max"), env)
        return OmegaChainPair(alg,
                              tuple(dec(v) for v in data["a"]),
                              tuple(dec(v) for v in data["b"]))
    if kind == "triple":
        return Triple.from_data(data["components"])
    raise StructureError("unknown structure kind", witness=kind)


def _resolve(ref, env):
    """A reference is a structure name or an inline structure object."""
    if isinstance(ref, str):
        if ref not in env:
            raise StructureError("unresolved structure reference", witness=ref)
        return env[ref]
    return _build(ref.get("kind"), ref, env)


def _as_partial(obj) -> FinitePartialLattice:
    """Homs run between partial lattices; total structures are viewed as
    their binary-entry partial form, bare posets as entry-free ones."""
    if isinstance(obj, FinitePartialLattice):
        return obj
    if isinstance(obj, FiniteLattice):
        return FinitePartialLattice.from_lattice(obj, pairs_only=True)
    if isinstance(obj, FiniteSemilattice):
        return FinitePartialLattice.from_lattice(obj.as_lattice(), pairs_only=True)
    if isinstance(obj, FinitePoset):
        return FinitePartialLattice.from_poset(obj)
    raise StructureError("expected an order structure", witness=type(obj).__name__)


def loads_document(text: str) -> tuple[dict, dict]:
    """Parse a document; returns (structures by name, raw json).

    A bare structure object is wrapped under the name ``main``.
    Structures may reference earlier names; two passes resolve forward
    references among non-homs first.
    """
    raw = json.loads(text)
    if "structures" not in raw:
        if "kind" not in raw:
            raise StructureError("document has neither kind nor structures")
        return {"main": _build(raw["kind"], raw, {})}, raw
    env: dict = {}
    pending = dict(raw["structures"])
    # simple dependency resolution: keep building whatever resolves
    progress = True
    while pending and progress:
        progress = False
        for name in list(pending):
            data = pending[name]
            try:
                env[name] = _build(data.get("kind"), data, env)
            except StructureError as exc:
                if "unresolved" in str(exc) or "algebra must name" in str(exc):
                    continue
                raise
            del pending[name]
            progress = True
    if pending:
        raise StructureError("unresolvable references", witness=sorted(pending))
    return env, raw


def load_document(path: str) -> tuple[dict, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_document(fh.read())


def structure_to_data(obj, env_names=None) -> dict:
    """Serialize one structure; inverse of _build up to order closure."""
    env_names = env_names or {}

    def name_of(sub):
        for k, v in env_names.items():
            if v is sub:
                return k
        return None

    if isinstance(obj, FinitePartialLattice):
        return {
            "kind": "partial_lattice",
            "labels": list(obj.labels),
            "leq": sorted([obj.labels[a], obj.labels[b]]
                          for a, b in obj.pairs() if a != b),
            "joins": [{"args": [obj.labels[i] for i in _bits(mask)],
                       "value": obj.labels[v]} for mask, v in obj.joins],
            "meets": [{"args": [obj.labels[i] for i in _bits(mask)],
                       "value": obj.labels[v]} for mask, v in obj.meets],
        }
    if isinstance(obj, FiniteLattice):
        return {"kind": "lattice", "labels": list(obj.labels),
                "leq": sorted([obj.labels[a], obj.labels[b]]
                        for a, b in obj.pairs() if a != b)}
    if isinstance(obj, FiniteSemilattice):
        return {"kind": "semilattice", "labels": list(obj.labels),
                "leq": sorted([obj.labels[a], obj.labels[b]]
                        for a, b in obj.as_poset().pairs() if a != b)}
    if isinstance(obj, FinitePoset):
        return {"kind": "poset", "labels": list(obj.labels),
                "leq": sorted([obj.labels[a], obj.labels[b]]
                        for a, b in obj.pairs() if a != b)}
    if isinstance(obj, PartialLatticeHom):
        return {
            "kind": "hom",
            "source": name_of(obj.source) or structure_to_data(obj.source),
            "target": name_of(obj.target) or structure_to_data(obj.target),
            "map": sorted([obj.source.labels[i], obj.target.labels[obj.mapping[i]]]
                          for i in range(obj.source.n)),
        }
    if isinstance(obj, TruncatedSquare):
        return {
            "kind": "square",
            "f": structure_to_data(obj.f, env_names),
            "g": structure_to_data(obj.g, env_names),
        }
    if isinstance(obj, Measure):
        if isinstance(obj.algebra, MaxAlgebra):
            alg_name, enc = "max", str
        else:
            alg_name = name_of(obj.algebra.semilattice) or "algebra"
            enc = lambda v: obj.algebra.semilattice.labels[v]
        lab = obj.domain.labels
        return {
            "kind": "measured",
            "domain": name_of(obj.domain) or structure_to_data(obj.domain),
            "algebra": alg_name,
            "table": sorted([lab[i], lab[j], enc(obj.table[i][j])]
                            for i in range(len(lab)) for j in range(len(lab))),
        }
    if isinstance(obj, OmegaChainPair):
        if isinstance(obj.algebra, MaxAlgebra):
            alg_name, enc = "max", str
        else:
            alg_name = name_of(obj.algebra.semilattice) or "algebra"
            enc = lambda v: obj.algebra.semilattice.labels[v]
        return {"kind": "chain_pair", "algebra": alg_name,
                "a": [enc(v) for v in obj.a_table],
                "b": [enc(v) for v in obj.b_table]}
    if isinstance(obj, Triple):
        return {"kind": "triple", "components": obj.to_data()}
    raise StructureError("cannot serialize %r" % type(obj).__name__)


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def dump_structures(named: dict, extra: dict | None = None) -> str:
    doc = {"structures": {name: structure_to_data(obj, named)
                          for name, obj in named.items()}}
    if extra:
        doc.update(extra)
    return canonical_json(doc)


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def document_digest(raw) -> str:
    import hashlib

    return hashlib.sha256(canonical_json(raw).encode("utf-8")).hexdigest()
