"""Posets, lattices, semilattices and the complete-hom duality."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from latwb._bits import bits, mask_of
from latwb.enumeration import all_lattices, all_posets
from latwb.errors import StructureError
from latwb.order import (
    CompleteJoinHom,
    CompleteMeetHom,
    FiniteLattice,
    FinitePoset,
    FiniteSemilattice,
    boolean_cube,
    chain,
    compact_elements,
    distributivity_witness,
    find_order_isomorphism,
    ideal_lattice,
    ideals_of,
    interpolation_check,
    is_cobrouwerian_finite,
    is_distributive,
    is_relatively_complemented,
    join_subsemilattices,
    m3,
    mid_witness,
    n5,
    product_lattice,
    relative_complement_witness,
)


def test_from_relation_closes_transitively():
    po = FinitePoset.from_relation(("a", "b", "c"), [("a", "b"), ("b", "c")])
    assert po.leq_ix(0, 2)
    assert not po.leq_ix(2, 0)
    assert po.index("b") == 1


def test_from_relation_rejects_cycles():
    with pytest.raises(StructureError):
        FinitePoset.from_relation(("a", "b"), [("a", "b"), ("b", "a")])


def test_sup_and_inf_of_mask(diamond):
    x, y = diamond.index("x"), diamond.index("y")
    assert diamond.sup_of_mask(mask_of([x, y])) == diamond.index("1")
    assert diamond.inf_of_mask(mask_of([x, y])) == diamond.index("0")
    po = FinitePoset.from_relation(("a", "b"), [])
    assert po.sup_of_mask(3) is None
    assert po.inf_of_mask(3) is None


def test_covers(diamond):
    zero = diamond.index("0")
    above_zero = {j for i, j in diamond.covers() if i == zero}
    assert above_zero == {diamond.index("x"), diamond.index("y")}
    assert len(diamond.covers()) == 4


# the table builder renumbers along a linear extension; brute force is the
# oracle that the shortcut still lands on genuine least upper bounds
def _brute_tables(po: FinitePoset):
    join, meet = [], []
    for i in range(po.n):
        jrow, mrow = [], []
        for j in range(po.n):
            jrow.append(po.sup_of_mask(1 << i | 1 << j))
            mrow.append(po.inf_of_mask(1 << i | 1 << j))
        join.append(tuple(jrow))
        meet.append(tuple(mrow))
    return tuple(join), tuple(meet)


def test_from_poset_matches_brute_force_on_all_small_lattices():
    for lat in all_lattices(6):
        rebuilt = FiniteLattice.from_poset(FinitePoset(lat.labels, lat.leq))
        jn, mt = _brute_tables(rebuilt)
        assert rebuilt.join == jn
        assert rebuilt.meet == mt
        assert rebuilt.join == lat.join
        assert rebuilt.meet == lat.meet


def test_from_poset_rejects_non_lattices():
    two = FinitePoset.from_relation(("a", "b"), [])
    with pytest.raises(StructureError):
        FiniteLattice.from_poset(two)


def test_bottom_top(diamond):
    assert diamond.labels[diamond.bottom] == "0"
    assert diamond.labels[diamond.top] == "1"


def test_join_meet_masks(diamond):
    full = (1 << diamond.n) - 1
    assert diamond.join_mask(full) == diamond.top
    assert diamond.meet_mask(full) == diamond.bottom
    assert diamond.join_mask(0) == diamond.bottom
    assert diamond.meet_mask(0) == diamond.top


def test_distributivity_witnesses():
    assert distributivity_witness(m3()) is not None
    assert distributivity_witness(n5()) is not None
    assert distributivity_witness(boolean_cube(3)) is None
    assert is_distributive(chain(4))
    assert not is_distributive(m3())


def test_relative_complement_witnesses():
    assert is_relatively_complemented(boolean_cube(3))
    assert is_relatively_complemented(m3())
    o, a, i = relative_complement_witness(chain(3))
    lat = chain(3)
    io, ia, ii = lat.index(o), lat.index(a), lat.index(i)
    assert lat.leq_ix(io, ia) and lat.leq_ix(ia, ii)


def test_cobrouwerian_matches_distributivity_on_small_lattices():
    for lat in all_lattices(5):
        assert is_cobrouwerian_finite(lat) == is_distributive(lat)
    assert mid_witness(m3()) is not None
    assert mid_witness(chain(4)) is None


def test_product_lattice_shape():
    sq = product_lattice(chain(2), chain(2))
    assert sq.n == 4
    assert is_distributive(sq)
    assert sorted(sq.labels) == ["0.0", "0.1", "1.0", "1.1"]


def test_semilattice_subsets(diamond):
    sl = FiniteSemilattice.from_lattice(diamond)
    subs = join_subsemilattices(sl)
    # every join-closed subset containing 0: count them by brute force
    brute = 0
    for k in range(diamond.n + 1):
        for combo in itertools.combinations(range(diamond.n), k):
            mask = mask_of(combo)
            if mask and sl.is_subsemilattice(mask):
                brute += 1
    assert len(subs) == brute
    full = (1 << diamond.n) - 1
    assert sl.cofinality_witness(full) is None
    bottom_only = 1 << sl.zero
    assert sl.cofinality_witness(bottom_only) is not None


def test_ideal_lattice_of_antichain_semilattice():
    sl = FiniteSemilattice.from_lattice(chain(2))
    assert len(ideals_of(sl)) == 2
    lat = ideal_lattice(FiniteSemilattice.from_lattice(boolean_cube(2)))
    assert lat.n == len(ideals_of(FiniteSemilattice.from_lattice(boolean_cube(2))))
    assert is_distributive(lat)


def test_compact_elements_of_finite_lattice():
    lat = boolean_cube(2)
    assert compact_elements(lat).labels == lat.labels


def test_find_order_isomorphism():
    a = chain(3)
    b = FiniteLattice.from_relation(("x", "y", "z"), [("z", "y"), ("y", "x")])
    perm = find_order_isomorphism(a, b)
    assert perm is not None
    assert find_order_isomorphism(a, m3()) is None


def test_interpolation_check():
    lat = boolean_cube(2)
    lower = [lat.index("00")]
    upper = [lat.index("11")]
    assert interpolation_check(lat, lower, upper) is not None
    po = FinitePoset.from_relation(
        ("a", "b", "u", "v"), [("a", "u"), ("a", "v"), ("b", "u"), ("b", "v")]
    )
    assert interpolation_check(po, [0, 1], [2, 3]) is None


# -- complete homs and their adjoints -------------------------------------


def _all_join_homs(A: FiniteLattice, B: FiniteLattice):
    for values in itertools.product(range(B.n), repeat=A.n):
        f = CompleteJoinHom(A, B, tuple(values))
        if f.is_valid():
            yield f


def test_adjoint_laws_exhaustive_small():
    A, B = chain(3), boolean_cube(2)
    count = 0
    for f in _all_join_homs(A, B):
        g = f.adjoint()
        assert g.is_valid()
        for a in range(A.n):
            for b in range(B.n):
                assert B.leq_ix(f.mapping[a], b) == A.leq_ix(a, g.mapping[b])
        assert tuple(g.adjoint().mapping) == tuple(f.mapping)
        count += 1
    assert count > 0


def test_meet_hom_adjoint_between_different_sizes():
    # g: boolean_cube(2) -> chain(2) keeping only the top at 1
    A, B = boolean_cube(2), chain(2)
    top = A.top
    g = CompleteMeetHom(A, B, tuple(1 if x == top else 0 for x in range(A.n)))
    assert g.is_valid()
    f = g.adjoint()
    assert f.source is B and f.target is A
    assert f.is_valid()
    for b in range(B.n):
        for a in range(A.n):
            assert A.leq_ix(f.mapping[b], a) == B.leq_ix(b, g.mapping[a])
    assert tuple(f.adjoint().mapping) == tuple(g.mapping)


def test_triple_composition_identities():
    A, B = chain(4), chain(3)
    f = CompleteJoinHom(A, B, (0, 1, 2, 2))
    assert f.is_valid()
    g = f.adjoint()
    fg = [f.mapping[g.mapping[b]] for b in range(B.n)]
    fgf = [fg[f.mapping[a]] for a in range(A.n)]
    assert fgf == [f.mapping[a] for a in range(A.n)]


# -- property tests --------------------------------------------------------


@st.composite
def random_lattice(draw):
    lats = all_lattices(5)
    return lats[draw(st.integers(0, len(lats) - 1))]


@given(random_lattice(), st.data())
@settings(max_examples=60, deadline=None)
def test_lattice_laws_hold(lat, data):
    i = data.draw(st.integers(0, lat.n - 1))
    j = data.draw(st.integers(0, lat.n - 1))
    k = data.draw(st.integers(0, lat.n - 1))
    assert lat.join[i][j] == lat.join[j][i]
    assert lat.meet[i][lat.join[i][j]] == i  # absorption
    assert lat.join[lat.join[i][j]][k] == lat.join[i][lat.join[j][k]]
    assert lat.leq_ix(lat.meet[i][j], i)
    assert lat.leq_ix(i, lat.join[i][j])


@given(st.integers(1, 5), st.data())
@settings(max_examples=40, deadline=None)
def test_poset_order_is_reflexive_transitive(n, data):
    posets = [p for p in all_posets(n) if p.n == n]
    po = posets[data.draw(st.integers(0, len(posets) - 1))]
    for i in range(po.n):
        assert po.leq_ix(i, i)
        for j in bits(po.leq[i]):
            assert po.leq[j] & ~po.leq[i] == 0
