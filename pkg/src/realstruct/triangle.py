"""Triangle curves: Galois covers of P^1 branched over three points.

A cover with group G is encoded by a pair (a, c) generating G; b is
(c a)^-1 so that a b c = 1.  The branching multiplicities are the orders of
a, b, c.  The curve is real (isomorphic to its conjugate via a lift of
complex conjugation) iff G has an automorphism inverting both a and c.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import groups as grp
from .groups import FiniteGroup


class TriangleError(ValueError):
    pass


@dataclass(frozen=True)
class TriangleDatum:
    group: FiniteGroup = field(compare=False)
    a: int
    b: int
    c: int
    multiplicities: tuple[int, int, int]


@dataclass(frozen=True)
class TriangleReport:
    order: int
    genus: int
    multiplicities: tuple[int, int, int]
    is_real: bool
    aut_equals_deck: str
    warnings: tuple[str, ...] = ()


def make_triangle(G: FiniteGroup, a: int, c: int) -> TriangleDatum:
    if not grp.is_generating_pair(G, a, c):
        raise TriangleError("(a, c) does not generate the group")
    # a*b*c = 1; b is conjugate to (a*c)^-1, so its order is the same
    b = G.inverse(G.mul(c, a))
    mults = (G.element_order(a), G.element_order(b), G.element_order(c))
    if min(mults) < 2:
        raise TriangleError(f"multiplicities {mults}: an element of order 1 is not a branch point")
    return TriangleDatum(G, a, b, c, mults)


def hurwitz_genus(order: int, multiplicities: Iterable[int]) -> Fraction:
    """1 + |G| (1 - 1/m - 1/n - 1/p) / 2, exact."""
    bracket = 1 - sum(Fraction(1, k) for k in multiplicities)
    return 1 + Fraction(order) * bracket / 2


def genus(td: TriangleDatum) -> int:
    g = hurwitz_genus(td.group.order, td.multiplicities)
    if g.denominator != 1 or g < 0:
        raise TriangleError(f"inconsistent datum: Riemann-Hurwitz gives genus {g}")
    return int(g)


def is_real(td: TriangleDatum) -> bool:
    return grp.inverting_automorphism_exists(td.group, td.a, td.c)


def aut_equals_deck(td: TriangleDatum) -> str:
    """"yes" when the multiplicities are pairwise distinct, otherwise "unknown"."""
    return _aut_flag(td.multiplicities)


def _aut_flag(mults) -> str:
    return "yes" if len(set(mults)) == 3 else "unknown"


def report(td: TriangleDatum) -> TriangleReport:
    g = genus(td)
    warnings = []
    if g <= 1:
        warnings.append(f"genus {g} datum: multiplicities {td.multiplicities} are not hyperbolic")
    return TriangleReport(td.group.order, g, td.multiplicities, is_real(td), aut_equals_deck(td), tuple(warnings))


def harnack_check(g: int, t: int) -> bool:
    """A real curve of genus g can have t ovals only if 0 <= t <= g + 1."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return 0 <= t <= g + 1


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class Realization:
    """A second triangle realization of the same curve, recorded by its
    numbers only (group name, order, multiplicities)."""

    group: str
    order: int
    multiplicities: tuple[int, int, int]

    @property
    def genus(self) -> Fraction:
        return hurwitz_genus(self.order, self.multiplicities)

    @property
    def aut_equals_deck(self) -> str:
        return _aut_flag(self.multiplicities)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    family: str
    params: tuple[int, ...]
    datum: TriangleDatum
    expected_genus: int
    expected_real: bool
    full_group: Realization | None = None


def fermat(n: int) -> CatalogEntry:
    """x^n + y^n + z^n = 0 with its deck group (Z/n)^2 of diagonal projectivities."""
    if n < 2:
        raise TriangleError("Fermat family needs n >= 2")
    G = grp.abelian([n, n])
    td = make_triangle(G, G.generators["g1"], G.generators["g2"])
    full = Realization("(Z/n)^2 x| S3", 6 * n * n, (2, 3, 2 * n))
    return CatalogEntry(f"fermat({n})", "fermat", (n,), td, (n - 1) * (n - 2) // 2, True, full)


def accola(g: int) -> CatalogEntry:
    """y^2 = x^(2g+2) - 1 with deck group Z/2 x Z/(2g+2)."""
    if g < 1:
        raise TriangleError("Accola family needs g >= 1")
    G = grp.abelian([2, 2 * g + 2])
    td = make_triangle(G, G.generators["g1"], G.generators["g2"])
    full = Realization(f"Z/2 x D{2 * g + 2}", 8 * g + 8, (2, 4, 2 * g + 2))
    return CatalogEntry(f"accola({g})", "accola", (g,), td, g, True, full)


def metacyclic_family(r: int, m: int) -> CatalogEntry:
    """Semidirect product Z/p x| Z/m, p = r^m - 1: a non-real triangle curve."""
    G, a, c = grp.metacyclic(r, m)
    td = make_triangle(G, a, c)
    expected = hurwitz_genus(G.order, td.multiplicities)
    return CatalogEntry(f"metacyclic({r},{m})", "metacyclic", (r, m), td, int(expected), False, None)


FAMILIES = {"fermat": fermat, "accola": accola, "metacyclic": metacyclic_family}


def catalog(fermat_range=range(3, 11), accola_range=range(2, 21),
            metacyclic_params=((3, 4),)) -> list[CatalogEntry]:
    out = [fermat(n) for n in fermat_range]
    out += [accola(g) for g in accola_range]
    out += [metacyclic_family(r, m) for r, m in metacyclic_params]
    return out


def find_triple(G: FiniteGroup, multiplicities: tuple[int, int, int]) -> tuple[int, int] | None:
    """Search a generating pair (a, c) of G whose triangle datum has the given
    multiplicities (as an ordered triple).  Brute force; small groups only."""
    m, n, p = multiplicities
    orders = [G.element_order(x) for x in G.elements()]
    cand_a = [x for x in G.elements() if orders[x] == m]
    cand_c = [x for x in G.elements() if orders[x] == p]
    for a in cand_a:
        for c in cand_c:
            b = G.inverse(G.mul(c, a))
            if orders[b] == n and grp.is_generating_pair(G, a, c):
                return a, c
    return None


def fermat_full_group(n: int) -> FiniteGroup:
    """(Z/n)^3 / diagonal, extended by S3 permuting coordinates."""
    N = grp.abelian([n, n])  # (x, y) <-> class of (x, y, 0)
    S3 = grp.dihedral(3)
    # realize S3 elements as permutations of three coordinates
    r = (1, 2, 0)
    s = (1, 0, 2)

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    perms = []
    for x in S3.elements():
        k, f = x % 3, x // 3
        perm = (0, 1, 2)
        for _ in range(k):
            perm = compose(r, perm)
        if f:
            perm = compose(perm, s)
        perms.append(perm)

    def action(h):
        perm = perms[h]
        out = []
        for v in N.elements():
            x, y = divmod(v, n)
            coords = (x, y, 0)
            moved = [0, 0, 0]
            for i in range(3):
                moved[perm[i]] = coords[i]
            x2, y2 = (moved[0] - moved[2]) % n, (moved[1] - moved[2]) % n
            out.append(x2 * n + y2)
        return out

    return grp.semidirect_product(N, S3, action, name=f"fermat-full({n})")


def datum_from_expression(expr: str, a_word: str | None = None, c_word: str | None = None) -> TriangleDatum:
    G, kind = grp.parse_group(expr)
    default = grp.DEFAULT_PAIR.get(kind)
    if (a_word is None or c_word is None) and default is None:
        raise TriangleError(f"{kind} has no default generator pair; pass --a and --c")
    a_word = a_word or default[0]
    c_word = c_word or default[1]
    return make_triangle(G, G.word(a_word), G.word(c_word))
