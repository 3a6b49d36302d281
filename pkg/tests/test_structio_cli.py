"""Document IO, the command line, and report recheckability.

Each refuted verdict must carry witnesses that recheck against the
original document, and a tampered witness must stop rechecking.
"""

import json
from fractions import Fraction

import pytest

from latwb.cli import cli_dispatch, main
from latwb.errors import StructureError
from latwb.order import FiniteSemilattice
from latwb.plattice import FinitePartialLattice, Measure, SemilatticeAlgebra
from latwb.report import recheck
from latwb.spaces import OmegaChainPair, Triple
from latwb.structio import (
    canonical_json,
    document_digest,
    dump_structures,
    loads_document,
    structure_to_data,
)

CHAIN3 = {"kind": "lattice", "labels": ["0", "m", "1"], "leq": [["0", "m"], ["m", "1"]]}

M3 = {
    "kind": "lattice",
    "labels": ["0", "p", "q", "r", "1"],
    "leq": [["0", "p"], ["0", "q"], ["0", "r"], ["p", "1"], ["q", "1"], ["r", "1"]],
}

REGISTERED_SQUARE = {
    "kind": "partial_lattice",
    "labels": ["0", "x", "y", "t"],
    "leq": [["0", "x"], ["0", "y"], ["x", "t"], ["y", "t"]],
    "joins": [{"args": ["x", "y"], "value": "t"}],
    "meets": [],
}

BAD_SQUARE = dict(REGISTERED_SQUARE, meets=[{"args": ["x", "t"], "value": "0"}])

ANTICHAIN2 = {
    "kind": "partial_lattice",
    "labels": ["p", "q"],
    "leq": [],
    "joins": [],
    "meets": [],
}

TWO_CHAINS_GLUED = {
    "structures": {
        "K": {"kind": "lattice", "labels": ["z"], "leq": []},
        "P": {"kind": "lattice", "labels": ["z", "a"], "leq": [["z", "a"]]},
        "Q": {"kind": "lattice", "labels": ["z", "c"], "leq": [["z", "c"]]},
        "f": {"kind": "hom", "source": "K", "target": "P", "map": {"z": "z"}},
        "g": {"kind": "hom", "source": "K", "target": "Q", "map": {"z": "z"}},
        "main": {"kind": "square", "f": "f", "g": "g"},
        "values": {"kind": "semilattice", "labels": ["0", "1"], "leq": [["0", "1"]]},
    },
    "mu": ["0", "1"],
    "nu": ["0", "1"],
}

EXTENSION = {
    "structures": {
        "main": {
            "kind": "semilattice",
            "labels": ["0", "x", "y", "1"],
            "leq": [["0", "x"], ["0", "y"], ["x", "1"], ["y", "1"]],
        },
        "values": {"kind": "semilattice", "labels": ["0", "1"], "leq": [["0", "1"]]},
    },
    "subset": ["0", "x", "1"],
    "map": {"0": "0", "x": "1", "1": "1"},
}

EXTENSION_INTO_DIAMOND = {
    "structures": {
        "main": {
            "kind": "semilattice",
            "labels": ["0", "x", "y", "u1", "u2", "u3", "1"],
            "leq": [
                ["0", "x"], ["0", "y"], ["x", "u1"], ["x", "u2"], ["y", "u1"],
                ["y", "u3"], ["u1", "1"], ["u2", "1"], ["u3", "1"],
            ],
        },
        "values": M3,
    },
    "subset": ["0", "u1", "u2", "u3", "1"],
    "map": {"0": "0", "u1": "p", "u2": "q", "u3": "r", "1": "1"},
}

FLAT_MEASURE = {
    "structures": {
        "main": CHAIN3,
        "psi": {
            "kind": "measured",
            "domain": "main",
            "algebra": "max",
            "table": [
                [x, y, "0" if ix <= iy else "1"]
                for ix, x in enumerate(("0", "m", "1"))
                for iy, y in enumerate(("0", "m", "1"))
            ],
        },
    }
}

SPLIT_FRAGMENT = {
    "structures": {
        "main": {
            "kind": "lattice",
            "labels": ["0", "e", "pA", "pB", "w"],
            "leq": [["0", "e"], ["e", "pA"], ["e", "pB"], ["pA", "w"], ["pB", "w"]],
        },
        "psi": {
            "kind": "measured",
            "domain": "main",
            "algebra": "max",
            "table": [
                [x, y, "0" if (ix <= iy or (x, y) == ("e", "0")) else "2"]
                for ix, x in enumerate(("0", "e", "pA", "pB", "w"))
                for iy, y in enumerate(("0", "e", "pA", "pB", "w"))
                # the diamond order: e below both midpoints, both below w
            ],
        },
        "chain_pair": {"kind": "chain_pair", "dyadic_depth": 8},
    },
    "fragment": {"base": "0", "lower:0": "e", "left": "pA", "right": "pB", "top:0": "w"},
    "lower_indices": [0],
    "upper_indices": [0],
}

INDICATOR_2D = {
    "structures": {
        "main": {"kind": "lattice", "labels": ["0", "1"], "leq": [["0", "1"]]},
        "chain_pair": {"kind": "chain_pair", "dyadic_depth": 8},
    },
    "fragment": {"left": "1", "lower:0": "0", "mid:0": "1", "top:0": "1"},
    "fragment2": {"left": "1", "lower:0": "0", "top-swap:0": "1"},
    "rho": {"0": "0", "1": "2"},
    "lower_indices": [0],
    "upper_indices": [0],
}


# -- document IO ----------------------------------------------------------


def test_bare_structure_wraps_under_main():
    env, raw = loads_document(json.dumps(CHAIN3))
    assert set(env) == {"main"}
    assert env["main"].labels == ("0", "m", "1")
    assert raw["kind"] == "lattice"


def test_partial_lattice_round_trip():
    env, _ = loads_document(json.dumps(REGISTERED_SQUARE))
    P = env["main"]
    text = dump_structures({"main": P})
    env2, _ = loads_document(text)
    assert env2["main"] == P
    assert structure_to_data(P)["joins"] == [{"args": ["x", "y"], "value": "t"}]


def test_hom_and_square_documents():
    env, _ = loads_document(json.dumps(TWO_CHAINS_GLUED))
    sq = env["main"]
    sq.validate()
    assert sq.P.labels == ("z", "a") and sq.Q.labels == ("z", "c")
    assert sq.f.mapping == (0,) and sq.g.mapping == (0,)


def test_measured_document_decodes_fractions():
    env, _ = loads_document(json.dumps(FLAT_MEASURE))
    psi = env["psi"]
    assert isinstance(psi, Measure)
    assert psi.at_labels("1", "0") == Fraction(1)
    assert psi.at_labels("0", "1") == Fraction(0)


def test_measured_document_with_named_semilattice_algebra():
    doc = {
        "structures": {
            "main": CHAIN3,
            "S": {"kind": "semilattice", "labels": ["z", "v"], "leq": [["z", "v"]]},
            "psi": {
                "kind": "measured",
                "domain": "main",
                "algebra": "S",
                "table": [
                    [x, y, "z" if ix <= iy else "v"]
                    for ix, x in enumerate(("0", "m", "1"))
                    for iy, y in enumerate(("0", "m", "1"))
                ],
            },
        }
    }
    env, _ = loads_document(json.dumps(doc))
    psi = env["psi"]
    assert isinstance(psi.algebra, SemilatticeAlgebra)
    assert psi.at_labels("1", "0") == env["S"].index("v")


def test_chain_pair_documents():
    env, _ = loads_document(json.dumps({"kind": "chain_pair", "dyadic_depth": 4}))
    cp = env["main"]
    assert cp.a(3) == Fraction(11, 8) and cp.b(3) == Fraction(3, 2)
    env, _ = loads_document(
        json.dumps({"kind": "chain_pair", "algebra": "max", "a": ["0", "1"], "b": ["1"]})
    )
    cp = env["main"]
    assert isinstance(cp, OmegaChainPair)
    assert cp.a(5) == 1 and cp.b(5) == 1  # tables repeat their last entry


def test_triple_document():
    env, _ = loads_document(
        json.dumps({"kind": "triple", "components": [[[0, 2]], [], [[1, None]]]})
    )
    assert isinstance(env["main"], Triple)
    assert not env["main"].x0.is_empty() and not env["main"].x2.is_bounded()


def test_document_errors():
    with pytest.raises(StructureError, match="kind"):
        loads_document(json.dumps({"kind": "widget", "labels": []}))
    with pytest.raises(StructureError, match="unresolved"):
        loads_document(
            json.dumps(
                {"structures": {"main": {"kind": "hom", "source": "nope",
                                         "target": "nope", "map": {}}}}
            )
        )
    with pytest.raises(StructureError, match="every ordered pair"):
        loads_document(
            json.dumps(
                {
                    "structures": {
                        "main": CHAIN3,
                        "psi": {
                            "kind": "measured",
                            "domain": "main",
                            "algebra": "max",
                            "table": [["0", "0", "0"]],
                        },
                    }
                }
            )
        )


def test_digest_is_canonical():
    a = {"kind": "lattice", "labels": ["0", "1"], "leq": [["0", "1"]]}
    b = {"leq": [["0", "1"]], "labels": ["0", "1"], "kind": "lattice"}
    assert document_digest(a) == document_digest(b)
    assert document_digest(a) != document_digest(CHAIN3)
    assert canonical_json(b) == canonical_json(a)


# -- command line ---------------------------------------------------------


def dispatch(write_doc, doc, *argv, name="doc.json"):
    path = write_doc(doc, name)
    return cli_dispatch([a.replace("DOC", path) for a in argv])


def test_validate_verified_and_refuted(write_doc):
    code, report = dispatch(write_doc, REGISTERED_SQUARE, "validate", "DOC")
    assert code == 0 and report.verdict == "verified"

    code, report = dispatch(write_doc, BAD_SQUARE, "validate", "DOC")
    assert code == 1 and report.verdict == "refuted"
    assert report.witnesses
    env, _ = loads_document(json.dumps(BAD_SQUARE))
    assert recheck(report.to_data(), env)
    tampered = report.to_data()
    tampered["witnesses"] = [["join", ["x", "y"], "t"]]  # a true entry
    assert not recheck(tampered, env)


def test_con_counts_the_chain(write_doc):
    code, report = dispatch(write_doc, CHAIN3, "con", "DOC")
    assert code == 0
    assert report.details["count"] == 4
    assert report.details["distributive"] is True


def test_con_growth_bound_exits_three(write_doc):
    doc = {
        "kind": "partial_lattice",
        "labels": ["a", "b", "c", "d", "e"],
        "leq": [],
        "joins": [],
        "meets": [],
    }
    code, report = dispatch(write_doc, doc, "con", "DOC", "--bound", "100")
    assert code == 3
    assert report.details.get("bound") is True


def test_check_distributive_refutes_the_diamond(write_doc):
    code, report = dispatch(write_doc, M3, "check", "distributive", "DOC")
    assert code == 1 and report.verdict == "refuted"
    env, _ = loads_document(json.dumps(M3))
    assert recheck(report.to_data(), env)
    tampered = report.to_data()
    tampered["witnesses"] = [["0", "p", "1"]]  # distributes fine
    assert not recheck(tampered, env)


def test_reports_are_byte_identical_modulo_timing(write_doc):
    runs = [
        dispatch(write_doc, M3, "check", "distributive", "DOC", "--format", fmt)[1]
        for fmt in ("text", "json", "text")
    ]
    blobs = {r.to_json(with_timing=False) for r in runs}
    assert len(blobs) == 1


def test_theta_and_quotient(write_doc):
    code, report = dispatch(write_doc, CHAIN3, "theta", "DOC", "m", "0")
    assert code == 0
    assert ["m", "0"] in report.details["pairs"]
    assert sorted(map(sorted, report.details["classes"])) == [["0", "m"], ["1"]]

    doc = {"structures": {"main": CHAIN3}, "congruence": [["m", "0"]]}
    code, report = dispatch(write_doc, doc, "quotient", "DOC")
    assert code == 0
    assert len(report.details["quotient"]["labels"]) == 2
    assert report.details["projection"]["0"] == report.details["projection"]["m"]


def test_pushout_emits_the_glued_structure(write_doc):
    code, report = dispatch(write_doc, TWO_CHAINS_GLUED, "pushout", "DOC")
    assert code == 0
    labels = report.details["pushout"]["labels"]
    assert set(labels) == {"k:z", "p:a", "q:c"}


def test_gamma_verified_and_refuted(write_doc):
    code, report = dispatch(write_doc, TWO_CHAINS_GLUED, "gamma", "DOC")
    assert code == 0 and report.verdict == "verified"

    bad = json.loads(json.dumps(TWO_CHAINS_GLUED))
    bad["mu"] = ["1", "0"]
    bad["nu"] = ["0", "0"]
    code, report = dispatch(write_doc, bad, "gamma", "DOC")
    assert code == 1 and report.witnesses
    env, _ = loads_document(json.dumps(bad))
    assert recheck(report.to_data(), env)


def test_dual_reports_the_adjoint(write_doc):
    doc = {
        "structures": {
            "A": {"kind": "lattice", "labels": ["0", "1"], "leq": [["0", "1"]]},
            "B": CHAIN3,
            "main": {"kind": "hom", "source": "A", "target": "B",
                     "map": {"0": "0", "1": "1"}},
        }
    }
    code, report = dispatch(write_doc, doc, "dual", "DOC")
    assert code == 0
    assert report.details["kind"] == "join"
    assert report.details["adjoint"] == {"0": "0", "m": "0", "1": "1"}
    assert report.details["double_dual"] is True


def test_extend_hom_verified_and_refuted(write_doc):
    code, report = dispatch(write_doc, EXTENSION, "extend-hom", "DOC")
    assert code == 0 and report.verdict == "verified"

    code, report = dispatch(write_doc, EXTENSION_INTO_DIAMOND, "extend-hom", "DOC")
    assert code == 1 and report.witnesses
    w = report.witnesses[0]
    assert {"x", "y", "subset", "map"} <= set(w)
    env, _ = loads_document(json.dumps(EXTENSION_INTO_DIAMOND))
    assert recheck(report.to_data(), env)
    tampered = report.to_data()
    tampered["witnesses"] = [dict(w, x="0", y="0")]
    assert not recheck(tampered, env)


def test_free_relations(write_doc):
    code, report = dispatch(
        write_doc, ANTICHAIN2, "free", "leq", "DOC", "(meet p q)", "(join p q)"
    )
    assert code == 0 and report.verdict == "verified"

    code, report = dispatch(write_doc, ANTICHAIN2, "free", "leq", "DOC", "p", "q")
    assert code == 1
    assert report.witnesses == [{"left": "p", "right": "q"}]
    env, _ = loads_document(json.dumps(ANTICHAIN2))
    assert recheck(report.to_data(), env)
    tampered = report.to_data()
    tampered["witnesses"] = [{"left": "(meet p q)", "right": "p"}]
    assert not recheck(tampered, env)

    code, report = dispatch(write_doc, ANTICHAIN2, "free", "enum", "DOC")
    assert code == 0
    assert report.details["count"] == 4 and report.details["complete"] is True


def test_free_needs_terms_and_known_generators(write_doc):
    code, report = dispatch(write_doc, ANTICHAIN2, "free", "leq", "DOC")
    assert code == 2
    code, report = dispatch(write_doc, ANTICHAIN2, "free", "leq", "DOC", "p", "zz")
    assert code == 2


def test_verify_cube_small(write_doc):
    code, report = cli_dispatch(["verify", "cube", "--max-size", "4"])
    assert code == 0
    assert report.details["simple"] == 1


def test_verify_measure_and_tampering(write_doc):
    code, report = dispatch(write_doc, FLAT_MEASURE, "verify", "measure", "DOC")
    assert code == 0

    broken = json.loads(json.dumps(FLAT_MEASURE))
    table = broken["structures"]["psi"]["table"]
    for row in table:
        if row[0] == "1" and row[1] == "0":
            row[2] = "0"  # top collapses to bottom but not to the midpoint
    code, report = dispatch(write_doc, broken, "verify", "measure", "DOC")
    assert code == 1 and report.witnesses
    env, _ = loads_document(json.dumps(broken))
    assert recheck(report.to_data(), env)


def test_verify_measure_rejects_wrong_kind(write_doc):
    code, report = dispatch(write_doc, CHAIN3, "verify", "measure", "DOC")
    assert code == 2


def test_verify_obstructions(write_doc):
    code, report = dispatch(write_doc, SPLIT_FRAGMENT, "verify", "obstruction-1d", "DOC")
    assert code == 1
    assert report.witnesses == [{"index": 1, "side": "lower", "value": "2"}]
    env, _ = loads_document(json.dumps(SPLIT_FRAGMENT))
    assert recheck(report.to_data(), env)

    code, report = dispatch(write_doc, INDICATOR_2D, "verify", "obstruction-2d", "DOC")
    assert code == 1
    assert report.witnesses[0]["side"] == "upper"


def test_verify_witness_scan(write_doc):
    code, report = dispatch(
        write_doc,
        {"kind": "chain_pair", "dyadic_depth": 10},
        "verify", "witness", "DOC", "--bound", "4",
    )
    assert code == 0
    assert report.details["candidates"] == 33

    survivor_doc = {"kind": "chain_pair", "algebra": "max", "a": ["0", "1"], "b": ["1"]}
    code, report = dispatch(write_doc, survivor_doc, "verify", "witness", "DOC",
                            "--bound", "2")
    assert code == 1
    assert {"survivor": "1", "max_k": 64} in report.witnesses
    env, _ = loads_document(json.dumps(survivor_doc))
    assert recheck(report.to_data(), env)


def test_suite_command(write_doc):
    code, report = cli_dispatch(["suite", "obstruction", "--seed", "7"])
    assert code == 0
    assert report.command == "suite obstruction"
    assert report.seed == 7
    assert "elapsed" not in report.details


def test_missing_file_exits_two(tmp_path):
    code, report = cli_dispatch(["con", str(tmp_path / "absent.json")])
    assert code == 2
    assert report.verdict == "error"


def test_main_prints_and_writes(write_doc, tmp_path, capsys):
    path = write_doc(CHAIN3, "chain.json")
    assert main(["con", path, "--format", "json"]) == 0
    out = capsys.readouterr().out
    data = json.loads(out)
    assert data["verdict"] == "verified" and data["details"]["count"] == 4

    target = tmp_path / "report.json"
    assert main(["con", path, "--format", "json", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["details"]["count"] == 4

    assert main(["check", "distributive", write_doc(M3, "m3.json")]) == 1
    assert "refuted" in capsys.readouterr().out
