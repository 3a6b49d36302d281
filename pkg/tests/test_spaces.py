"""Triple spaces, chain pairs, and the obstruction extractors.

The dyadic chain values frozen here were computed once by hand from the
integer square root: the best approximations of sqrt(2) with denominator
8 are 11/8 from below and 12/8 from above.
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from latwb.errors import StructureError
from latwb.intervals import EMPTY_SET, FULL_SET, IntervalSet
from latwb.spaces import (
    MaxAlgebra,
    OmegaChainPair,
    Triple,
    base_triple,
    chi,
    dyadic_witness,
    left_corner,
    lower_probe,
    membership,
    mid_probe,
    mu,
    obstruction_extract_1d,
    obstruction_extract_2d,
    partial_join,
    partial_meet,
    sigma,
    top_probe,
    right_corner,
    witness_scan,
)
from latwb.suites import (
    axis_measure_fixture,
    indicator_fixture,
    indicator_refuted_fixture,
    split_measure_fixture,
)

interval_sets = st.lists(
    st.tuples(st.integers(0, 10), st.one_of(st.none(), st.integers(0, 12))),
    max_size=3,
).map(lambda segs: IntervalSet.of(*segs))


def p_triple(x0, x1, x2):
    """Force the first component's boundedness to match the other two."""
    if chi(x1) | chi(x2):
        return Triple(x0 | IntervalSet.tail(13), x1, x2)
    return Triple(x0 & IntervalSet.initial(13), x1, x2)


p_triples = st.builds(p_triple, interval_sets, interval_sets, interval_sets)


def test_chi():
    assert chi(EMPTY_SET) == 0
    assert chi(IntervalSet.initial(5)) == 0
    assert chi(FULL_SET) == 1
    assert chi(IntervalSet.tail(3)) == 1


def test_triple_basics():
    t = Triple(FULL_SET, IntervalSet.tail(2), EMPTY_SET)
    assert t.swap().swap() == t
    assert t.swap() == Triple(FULL_SET, EMPTY_SET, IntervalSet.tail(2))
    assert Triple.from_data(t.to_data()) == t
    assert str(base_triple()) == "<{}, {}, {}>"
    with pytest.raises(StructureError):
        Triple.from_data([[], []])


def test_membership_of_the_designated_triples():
    assert membership(base_triple()).in_U
    assert membership(lower_probe(4)).in_U
    assert membership(top_probe(2)).in_U
    flags = membership(left_corner())
    assert flags.in_V and flags.in_P and not flags.in_U
    flags = membership(right_corner())
    assert flags.in_P and not flags.in_V
    flags = membership(Triple(FULL_SET, EMPTY_SET, EMPTY_SET))
    assert not flags.in_P and not flags.in_Pstar
    assert membership(mid_probe(3)).in_V


@given(p_triples)
def test_membership_hierarchy(t):
    flags = membership(t)
    assert flags.in_P
    if flags.in_U:
        assert flags.in_V
    if flags.in_P:
        assert flags.in_Pstar


def test_corner_meet_escapes_the_space():
    assert partial_meet(left_corner(), right_corner()) is None
    top = partial_join(left_corner(), right_corner())
    assert top == Triple(FULL_SET, FULL_SET, FULL_SET)
    assert partial_meet(left_corner(), top_probe(5)) == mid_probe(5)
    with pytest.raises(StructureError):
        partial_join(Triple(FULL_SET, EMPTY_SET, EMPTY_SET), base_triple())


def test_dyadic_witness_frozen_values():
    cp = dyadic_witness(8)
    assert cp.a(0) == 0 and cp.b(0) == 2
    assert cp.a(1) == 1 and cp.b(1) == Fraction(3, 2)
    assert cp.a(3) == Fraction(11, 8) and cp.b(3) == Fraction(3, 2)
    assert not cp.violations(16)
    for k in range(1, 16):
        assert cp.b(k) - cp.a(k) == Fraction(1, 2 ** k)
        assert cp.a(k) ** 2 < 2 < cp.b(k) ** 2


def test_chain_pair_shape_violations():
    alg = MaxAlgebra()
    bad = OmegaChainPair(alg, (Fraction(1),), (Fraction(2),))
    assert ("lower-chain-starts-at-zero", (Fraction(1),)) in bad.violations(1)
    bad = OmegaChainPair(alg, (Fraction(0), Fraction(2), Fraction(1)), (Fraction(3),))
    assert any(name == "lower-chain-increasing" for name, _ in bad.violations(2))
    bad = OmegaChainPair(alg, (Fraction(0), Fraction(3)), (Fraction(2),))
    assert any(name == "chains-cross" for name, _ in bad.violations(1))


def test_table_and_formula_fallback():
    cp = OmegaChainPair(MaxAlgebra(), (Fraction(0), Fraction(1)), (Fraction(2),))
    assert cp.a(10) == 1 and cp.b(10) == 2  # repeats the last entry
    cp = dyadic_witness(2)
    # past the stored table the formula takes over
    assert cp.a(6) == Fraction(90, 64) and cp.b(6) == Fraction(91, 64)


def test_sigma_on_probes():
    cp = dyadic_witness(6)
    assert sigma(cp, base_triple()) == cp.a(0)
    assert sigma(cp, lower_probe(4)) == cp.a(4)
    assert sigma(cp, mid_probe(3)) == cp.b(3)
    # the top probe's last component reaches down to 0
    assert sigma(cp, top_probe(3)) == cp.b(0)
    with pytest.raises(StructureError):
        sigma(cp, Triple(FULL_SET, EMPTY_SET, EMPTY_SET))


def test_mu_on_corners_and_probes():
    cp = dyadic_witness(6)
    assert mu(cp, left_corner(), right_corner()) == cp.b(0)
    assert mu(cp, lower_probe(3), base_triple()) == cp.a(3)
    assert mu(cp, top_probe(2), mid_probe(2)) == cp.b(0)
    assert mu(cp, mid_probe(2), base_triple()) == cp.b(2)
    assert mu(cp, mid_probe(2), left_corner()) == cp.algebra.zero  # mid below left


@given(p_triples, p_triples, p_triples)
def test_mu_is_an_ultrametric_on_the_space(x, y, z):
    cp = dyadic_witness(4)
    assert mu(cp, x, x) == cp.algebra.zero
    assert mu(cp, x, z) <= max(mu(cp, x, y), mu(cp, y, z))


def test_witness_scan_refuses_every_dyadic():
    scan = witness_scan(dyadic_witness(8), max_power=3, bound=2, max_k=16)
    assert len(scan.entries) == 17  # 0, 1/8, ..., 2
    assert scan.all_refused()
    assert not scan.survivors()


def test_witness_scan_finds_a_survivor_when_one_exists():
    cp = OmegaChainPair(MaxAlgebra(), (Fraction(0), Fraction(1)), (Fraction(1),))
    scan = witness_scan(cp, max_power=1, bound=1, max_k=8)
    assert scan.survivors() == [Fraction(1)]
    refused = dict(scan.entries)
    assert refused[Fraction(0)] == 1 and refused[Fraction(1, 2)] == 1


def test_one_dimensional_extractor_accepts_the_axis_fragment():
    cp, L, f, psi, expected = axis_measure_fixture()
    rep = obstruction_extract_1d(cp, L, f, psi, lower_indices=(0, 1), upper_indices=(0, 1))
    assert rep.ok() and rep.verdict == "consistent"
    assert rep.value == expected
    assert all(passed for _, _, _, passed in rep.sampled)
    assert rep.first_failure is None


def test_one_dimensional_extractor_refutes_the_split_fragment():
    cp, L, f, psi = split_measure_fixture()
    rep = obstruction_extract_1d(cp, L, f, psi)
    assert rep.ok() and rep.verdict == "refuted"
    assert rep.first_failure == (1, "lower")


def test_one_dimensional_extractor_flags_broken_fragments():
    cp, L, f, psi = split_measure_fixture()
    partial = {t: v for t, v in f.items() if t != top_probe(0)}
    rep = obstruction_extract_1d(cp, L, partial, psi)
    assert not rep.ok() and rep.verdict == "invalid"
    assert any(name == "fragment-complete" for name, _ in rep.failures())

    wrong = dict(f)
    wrong[base_triple()] = "nope"
    rep = obstruction_extract_1d(cp, L, wrong, psi)
    assert any(name == "values-in-lattice" for name, _ in rep.failures())


def test_two_dimensional_extractor_accepts_the_indicator_fragment():
    cp, C2, f, fp, rho, expected = indicator_fixture()
    rep = obstruction_extract_2d(cp, C2, f, fp, rho, lower_indices=(0, 1), upper_indices=(0, 1))
    assert rep.ok() and rep.verdict == "consistent"
    assert rep.value == expected


def test_two_dimensional_extractor_refutes_the_dyadic_indicator():
    cp, C2, f, fp, rho = indicator_refuted_fixture()
    rep = obstruction_extract_2d(cp, C2, f, fp, rho)
    assert rep.ok() and rep.verdict == "refuted"
    assert rep.first_failure == (1, "upper")


def test_two_dimensional_extractor_preconditions():
    cp, C2, f, fp, rho, _ = indicator_fixture()
    askew = dict(rho)
    askew["0"], askew["1"] = askew["1"], askew["0"]
    rep = obstruction_extract_2d(cp, C2, f, fp, askew)
    assert any(name == "assignment-monotone" for name, _ in rep.failures())

    clash = dict(fp)
    clash[top_probe(0).swap()] = "0"
    rep = obstruction_extract_2d(cp, C2, f, clash, rho)
    assert any(name == "swap-agreement" for name, _ in rep.failures())


def test_max_algebra():
    alg = MaxAlgebra()
    assert alg.zero == 0
    assert alg.join(Fraction(1, 2), Fraction(1, 3)) == Fraction(1, 2)
    assert alg.leq(Fraction(1, 3), Fraction(1, 2))
    assert alg.format(Fraction(3, 2)) == "3/2"
    assert alg == MaxAlgebra() and hash(alg) == hash(MaxAlgebra())
