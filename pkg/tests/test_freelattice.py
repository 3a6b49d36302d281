"""Terms, the generator-order solver, and the free-lattice engine."""

import itertools

import pytest

from latwb.errors import BoundExceeded, StructureError
from latwb.order import antichain_poset, boolean_cube, chain, m3, n5
from latwb.plattice import FinitePartialLattice, all_congruences
from latwb.freelattice import (
    TermOrderSolver,
    cep_via_quotient,
    eval_term,
    fl_enumerate,
    fl_eq,
    fl_leq,
    gen,
    join,
    meet,
    parse_term,
)


def antichain_plat(n):
    return FinitePartialLattice.from_poset(antichain_poset(n))


def test_term_building_flattens_and_dedupes():
    x, y, z = gen("x"), gen("y"), gen("z")
    assert join(x, join(y, z)) == join(x, y, z) == join(z, y, x, y)
    assert join(x, x) == x
    assert str(join(x, meet(y, z))) == "(join x (meet y z))"


def test_parse_term_round_trip():
    for text in ("x", "(join x y)", "(meet x (join y z))"):
        assert str(parse_term(text)) == text
    assert parse_term("(join x x)") == gen("x")


def test_parse_term_rejects_garbage():
    for bad in ("", "(x y)", "(join x", "(join)", "x y"):
        with pytest.raises(StructureError):
            parse_term(bad)


def test_whitman_style_facts_on_two_generators():
    P = antichain_plat(2)
    x, y = gen("x0"), gen("x1")
    assert fl_leq(P, meet(x, y), join(x, y))
    assert not fl_leq(P, x, y)
    assert not fl_leq(P, join(x, y), meet(x, y))
    assert fl_eq(P, join(x, meet(x, y)), x)  # absorption
    assert fl_eq(P, meet(x, join(x, y)), x)


def test_free_lattice_on_two_generators_has_four_classes():
    reps, complete = fl_enumerate(antichain_plat(2), levels=3)
    assert complete
    assert len(reps) == 4


def test_free_lattice_on_chain_collapses_to_the_chain():
    P = FinitePartialLattice.from_lattice(chain(3), pairs_only=True)
    reps, complete = fl_enumerate(P, levels=2)
    assert complete
    assert len(reps) == 3


def test_free_lattice_on_three_generators_blows_the_bound():
    with pytest.raises(BoundExceeded):
        fl_enumerate(antichain_plat(3), levels=6, max_terms=60)


def test_generator_order_matches_total_lattices():
    for lat in (chain(4), m3(), n5(), boolean_cube(2)):
        P = FinitePartialLattice.from_lattice(lat)
        solver = TermOrderSolver(P)
        for a in range(lat.n):
            for b in range(lat.n):
                got = solver.leq(gen(lat.labels[a]), gen(lat.labels[b]))
                assert got == lat.leq_ix(a, b)


def test_registered_operations_constrain_terms():
    lat = boolean_cube(2)
    P = FinitePartialLattice.from_lattice(lat)
    bottom, top = lat.labels[lat.bottom], lat.labels[lat.top]
    others = [lb for lb in lat.labels if lb not in (bottom, top)]
    t = join(gen(others[0]), gen(others[1]))
    assert fl_eq(P, t, gen(top))


def test_solver_soundness_against_evaluations():
    # a positive fl_leq answer survives every evaluation into every lattice
    P = antichain_plat(2)
    pool = [gen("x0"), gen("x1")]
    pool += [join(*pool), meet(*pool), join(pool[0], meet(*pool))]
    positives = [
        (s, t) for s in pool for t in pool if fl_leq(P, s, t)
    ]
    for lat in (chain(3), m3(), n5()):
        for env_vals in itertools.product(range(lat.n), repeat=2):
            env = {"x0": env_vals[0], "x1": env_vals[1]}
            for s, t in positives:
                assert lat.leq_ix(eval_term(lat, s, env), eval_term(lat, t, env))


def test_eval_term():
    lat = boolean_cube(2)
    env = {"a": lat.index("10"), "b": lat.index("01")}
    t = join(gen("a"), gen("b"))
    assert eval_term(lat, t, env) == lat.top
    assert eval_term(lat, meet(gen("a"), gen("b")), env) == lat.bottom


def test_cep_via_quotient_on_registered_square():
    P = FinitePartialLattice.from_data(
        ("0", "x", "y", "t"),
        [("0", "x"), ("0", "y"), ("x", "t"), ("y", "t")],
        joins=[(("x", "y"), "t")],
    )
    for a in all_congruences(P):
        ok, witness = cep_via_quotient(P, a)
        assert ok, witness


def test_solver_universe_bound():
    P = antichain_plat(3)
    t = gen("x0")
    for _ in range(8):
        t = meet(join(t, gen("x1")), gen("x2"))
    with pytest.raises(BoundExceeded):
        TermOrderSolver(P, [t], max_universe=10)
