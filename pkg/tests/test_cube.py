"""The three-over-three diagram and the exhaustive lifting scan."""

from latwb.cube import CubeReport, conc_image_check, cube_verify, lattice_homs
from latwb.order import boolean_cube, chain, m3


def test_conc_image_is_healthy():
    assert conc_image_check() == []


def test_lattice_homs_counts():
    # maps from the two-chain pick a comparable pair, top above bottom
    two = chain(2)
    homs = lattice_homs(two, boolean_cube(2))
    assert len(homs) == sum(
        1
        for i in range(4)
        for j in range(4)
        if boolean_cube(2).leq_ix(i, j)
    )
    assert all(boolean_cube(2).leq_ix(w[0], w[1]) for w in homs)
    # collapsing the diamond: every hom factors through a comparable pair,
    # and any map separating all five points would embed it
    embeddings = [w for w in lattice_homs(m3(), chain(2)) if len(set(w)) == 5]
    assert embeddings == []


def test_homs_from_m3_collapse_the_atoms_or_everything():
    # into the four-element square: no hom uses more than two values
    for w in lattice_homs(m3(), boolean_cube(2)):
        assert len(set(w)) <= 2


def test_cube_verify_small_scan():
    rep = cube_verify(4)
    assert isinstance(rep, CubeReport)
    assert rep.ok()
    assert rep.image_defects == ()
    assert rep.forced_equal_failures == ()
    assert rep.separating_cocones == 0
    assert rep.lattices_scanned == 1 + 1 + 1 + 2  # isomorphism classes up to size 4
    assert rep.simple_count == 1  # below size five only the two-chain is simple
    assert rep.cocones > 0


def test_cube_verify_finds_more_cocones_with_size():
    small, large = cube_verify(3), cube_verify(5)
    assert large.lattices_scanned > small.lattices_scanned
    assert large.cocones >= small.cocones
    assert large.simple_count == 2  # the diamond arrives at size five
    assert large.ok() and small.ok()
