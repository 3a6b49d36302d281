"""Why the two-sided gluing results stop at dimension two.

The diagram verified here has a one-element lattice at the bottom,
three two-element lattices in the middle, and ``2``, ``M3``, ``2`` on
top, with the two outer top maps hitting the atoms ``a`` and ``c`` of
``M3``.  Its image under the congruence functor is a truncated cube of
two-element semilattices, which maps onto ``2``; a lifting of that map
would need a simple partial lattice receiving the whole diagram.  But
any commuting cocone forces ``w(a) = w(c)`` for the middle leg ``w``,
while a lifting also forces ``w`` to separate points, and ``a != c``.
:func:`cube_verify` replays this argument exhaustively over all simple
lattices up to a given size.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .enumeration import all_lattices
from .order import FiniteLattice, chain, m3
from .plattice import (
    FinitePartialLattice,
    PartialLatticeHom,
    con_lattice,
    con_f,
    one_congruence,
    zero_congruence,
)

__all__ = ["CubeReport", "conc_image_check", "cube_verify", "lattice_homs"]


def lattice_homs(src: FiniteLattice, dst: FiniteLattice):
    """All maps preserving binary joins and meets, as index tuples."""
    out = []
    pairs = [(i, j) for i in range(src.n) for j in range(src.n) if i < j]
    for w in product(range(dst.n), repeat=src.n):
        ok = True
        for i, j in pairs:
            if w[src.join[i][j]] != dst.join[w[i]][w[j]]:
                ok = False
                break
            if w[src.meet[i][j]] != dst.meet[w[i]][w[j]]:
                ok = False
                break
        if ok:
            out.append(w)
    return out


def _vertex(lat: FiniteLattice) -> FinitePartialLattice:
    return FinitePartialLattice.from_lattice(lat, pairs_only=True)


def conc_image_check() -> list[str]:
    """Confirm the diagram's congruence image is the truncated cube of twos.

    Every vertex except the bottom has exactly two congruences, and
    every arrow separates them, so the induced maps are the unique
    zero-preserving embeddings.  Returns the list of defects (empty in
    a healthy build; exercised by the acceptance suite).
    """
    two = chain(2)
    bot = chain(1)
    top_mid = m3()
    defects = []

    vt = {"bot": _vertex(bot), "two": _vertex(two), "m3": _vertex(top_mid)}
    f = PartialLatticeHom(vt["two"], vt["m3"], (0, top_mid.index("a")))
    g = PartialLatticeHom(vt["two"], vt["m3"], (0, top_mid.index("c")))
    ident = PartialLatticeHom(vt["two"], vt["two"], (0, 1))
    embed_bot = PartialLatticeHom(vt["bot"], vt["two"], (0,))
    arrows = [
        ("bottom-left", embed_bot),
        ("bottom-center", embed_bot),
        ("bottom-right", embed_bot),
        ("left-up", ident),
        ("left-in", f),
        ("center-left", ident),
        ("center-right", ident),
        ("right-up", ident),
        ("right-in", g),
    ]
    for name, h in arrows:
        if not h.is_valid():
            defects.append("arrow %s is not a homomorphism" % name)

    for name, P, expect in (("bottom", vt["bot"], 1), ("side", vt["two"], 2),
                            ("center", vt["m3"], 2)):
        got = len(con_lattice(P).congruences)
        if got != expect:
            defects.append("vertex %s has %d congruences, expected %d" % (name, got, expect))

    # arrows out of nontrivial vertices must separate zero from one
    for name, h in arrows:
        z = con_f(h, zero_congruence(h.source))
        if z.rel != zero_congruence(h.target).rel:
            defects.append("arrow %s does not preserve the zero congruence" % name)
        o = con_f(h, one_congruence(h.source))
        if h.source.n > 1 and o.rel != one_congruence(h.target).rel:
            defects.append("arrow %s does not carry one to one" % name)
    return defects


@dataclass(frozen=True)
class CubeReport:
    max_size: int
    image_defects: tuple
    lattices_scanned: int
    simple_count: int
    cocones: int
    separating_cocones: int
    forced_equal_failures: tuple

    def ok(self) -> bool:
        return (not self.image_defects and not self.forced_equal_failures
                and self.separating_cocones == 0)


def cube_verify(max_size: int = 7) -> CubeReport:
    """Exhaust simple lattices up to ``max_size`` for a lifting cocone.

    A cocone is a triple ``(u, w, v)`` of lattice maps from the top row
    into a candidate lattice commuting through the middle row; the
    bottom legs pin ``u`` and ``v`` on zero and the outer top maps pin
    them on one, so cocones correspond to maps ``w`` from the center
    lattice identifying the two outer atoms.  A lifting would be a
    cocone whose center map separates points; the report counts both.
    """
    top_mid = m3()
    ia, ic = top_mid.index("a"), top_mid.index("c")
    defects = conc_image_check()

    scanned = simple = cocones = separating = 0
    forced_failures = []
    for P in all_lattices(max_size):
        scanned += 1
        if len(con_lattice(_vertex(P)).congruences) != 2:
            continue
        simple += 1
        for w in lattice_homs(top_mid, P):
            if w[ia] != w[ic]:
                continue
            u = (w[top_mid.index("0")], w[ia])
            v = (w[top_mid.index("0")], w[ic])
            if not (P.leq_ix(u[0], u[1]) and P.leq_ix(v[0], v[1])):
                forced_failures.append((P.labels, w))
                continue
            cocones += 1
            if u[1] != w[ia] or v[1] != w[ic] or u[1] != v[1]:
                forced_failures.append((P.labels, w))
            if len(set(w)) == top_mid.n:
                separating += 1
    return CubeReport(max_size, tuple(defects), scanned, simple, cocones,
                      separating, tuple(forced_failures))
