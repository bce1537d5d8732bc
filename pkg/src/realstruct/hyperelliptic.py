"""Real hyperelliptic surfaces S = (E x F)/G and the topology of S(R).

Both elliptic curves are R^2/Z^2 with a complex structure given by an
integral matrix J (multiplication by i or by a cube root of unity in the
lattice basis).  Every map in sight is affine, x -> M x + t with M integral
and t rational, so the whole computation is exact arithmetic on finitely
many rational vectors modulo Z^2.

Pipeline: bdf_family builds the deck group G; attach_real_structure adds an
antiholomorphic lift sigma; involutive_lifts collects the lifts g*sigma that
are involutions up to conjugacy; real_part counts the G-classes of
components of their fixed loci and decides torus versus Klein bottle from
how the stabilizer acts on the F-circle.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import groups as grp
from .serialize import rational_list
from .linalg import (
    IntMatrix,
    RatVector,
    kernel_basis,
    ratvec,
    reduce_mod1,
    smith_normal_form,
    solve_congruence,
    unimodular_inverse,
)


class HyperellipticError(ValueError):
    """A parameter or structure violates the requirements of the construction."""


class NotFree(HyperellipticError):
    pass


class NotNormalized(HyperellipticError):
    pass


J_I = IntMatrix.from_rows([[0, -1], [1, 0]])
J_RHO = IntMatrix.from_rows([[0, -1], [1, -1]])
LATTICES = {"i": J_I, "rho": J_RHO}
_I2 = IntMatrix.identity(2)


def conjugate_cm(J: IntMatrix) -> IntMatrix:
    """Matrix of the conjugate multiplication: for J^2 - tr(J) J + det(J) = 0,
    the other root is tr(J) - J."""
    tr = J[0, 0] + J[1, 1]
    return IntMatrix.diag([tr, tr]) - J


def _normalize_direction(d: Sequence[int]) -> tuple[int, int]:
    d = tuple(int(x) for x in d)
    g = gcd(*d)
    d = (d[0] // g, d[1] // g)
    if d[0] < 0 or (d[0] == 0 and d[1] < 0):
        d = (-d[0], -d[1])
    return d


# ---------------------------------------------------------------------------
# affine maps


@dataclass(frozen=True)
class EllipticAffineMap:
    """x -> M x + t on R^2/Z^2; t is stored reduced modulo 1."""

    M: IntMatrix
    t: RatVector
    antiholo: bool = False

    def __post_init__(self):
        if self.M.shape != (2, 2) or abs(self.M.det()) != 1:
            raise HyperellipticError(f"linear part must be in GL2(Z), got {self.M.tolist()}")
        object.__setattr__(self, "t", reduce_mod1(ratvec(self.t)))
        if len(self.t) != 2:
            raise HyperellipticError("translation part must have two coordinates")

    @classmethod
    def translation(cls, t) -> "EllipticAffineMap":
        return cls(_I2, ratvec(t))

    @classmethod
    def linear(cls, M, antiholo: bool = False) -> "EllipticAffineMap":
        M = M if isinstance(M, IntMatrix) else IntMatrix.from_rows(M)
        return cls(M, (Fraction(0), Fraction(0)), antiholo)

    def __call__(self, x) -> RatVector:
        return reduce_mod1(a + b for a, b in zip(self.M @ ratvec(x), self.t))

    def compose(self, other: "EllipticAffineMap") -> "EllipticAffineMap":
        """self after other."""
        t = tuple(a + b for a, b in zip(self.M @ other.t, self.t))
        return EllipticAffineMap(self.M @ other.M, t, self.antiholo != other.antiholo)

    def inverse(self) -> "EllipticAffineMap":
        Minv = unimodular_inverse(self.M)
        return EllipticAffineMap(Minv, tuple(-x for x in Minv @ self.t), self.antiholo)

    @property
    def is_identity(self) -> bool:
        return self.M == _I2 and not any(self.t)

    @property
    def is_translation(self) -> bool:
        return self.M == _I2

    def is_compatible(self, J: IntMatrix) -> bool:
        target = conjugate_cm(J) if self.antiholo else J
        return self.M @ J == target @ self.M

    def fixed_point(self) -> RatVector | None:
        return solve_congruence(self.M - _I2, tuple(-x for x in self.t))

    def to_json(self) -> dict:
        return {"M": self.M.tolist(), "t": rational_list(self.t), "antiholo": self.antiholo}


@dataclass(frozen=True)
class ProductMap:
    on_E: EllipticAffineMap
    on_F: EllipticAffineMap

    def __post_init__(self):
        if self.on_E.antiholo != self.on_F.antiholo:
            raise HyperellipticError("product map mixes a holomorphic and an antiholomorphic factor")

    @property
    def antiholo(self) -> bool:
        return self.on_E.antiholo

    def compose(self, other: "ProductMap") -> "ProductMap":
        return ProductMap(self.on_E.compose(other.on_E), self.on_F.compose(other.on_F))

    def inverse(self) -> "ProductMap":
        return ProductMap(self.on_E.inverse(), self.on_F.inverse())

    def conjugate(self, by: "ProductMap") -> "ProductMap":
        """by * self * by^-1"""
        return by.compose(self).compose(by.inverse())

    @property
    def is_identity(self) -> bool:
        return self.on_E.is_identity and self.on_F.is_identity

    def square(self) -> "ProductMap":
        return self.compose(self)

    def has_fixed_point(self) -> bool:
        return self.on_E.fixed_point() is not None and self.on_F.fixed_point() is not None

    def to_json(self) -> dict:
        return {"E": self.on_E.to_json(), "F": self.on_F.to_json()}


IDENTITY = ProductMap(EllipticAffineMap.linear(_I2), EllipticAffineMap.linear(_I2))


# ---------------------------------------------------------------------------
# fixed circles of an antiholomorphic involution of one elliptic curve


def _unit_against(w: tuple[int, int]) -> tuple[int, int]:
    """An integer vector u with w . u = 1 (w primitive)."""
    a, b = w
    # extended Euclid
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r == -1:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


@dataclass(frozen=True, order=True)
class Circle:
    """The image in R^2/Z^2 of a line with primitive integral direction.

    Stored canonically as (direction, offset) where offset = w . x mod 1 for
    any point x on the circle and w = (-d2, d1)."""

    direction: tuple[int, int]
    offset: Fraction

    @classmethod
    def through(cls, point, direction) -> "Circle":
        d = _normalize_direction(direction)
        w = (-d[1], d[0])
        off = (w[0] * Fraction(point[0]) + w[1] * Fraction(point[1])) % 1
        return cls(d, off)

    @property
    def normal(self) -> tuple[int, int]:
        return (-self.direction[1], self.direction[0])

    @property
    def base(self) -> RatVector:
        u = _unit_against(self.normal)
        return reduce_mod1((self.offset * u[0], self.offset * u[1]))

    def contains(self, x) -> bool:
        w = self.normal
        return (w[0] * Fraction(x[0]) + w[1] * Fraction(x[1]) - self.offset).denominator == 1

    def image(self, f: EllipticAffineMap) -> "Circle":
        return Circle.through(f(self.base), f.M @ self.direction)

    def to_json(self) -> dict:
        return {"base": rational_list(self.base), "direction": list(self.direction)}


def is_involution(f: EllipticAffineMap) -> bool:
    return f.compose(f).is_identity


def fixed_circles(f: EllipticAffineMap) -> list[Circle]:
    """Fixed locus of an antiholomorphic involution: 0, 1 or 2 circles."""
    if not f.antiholo:
        raise HyperellipticError("fixed_circles needs an antiholomorphic map")
    if not is_involution(f):
        raise HyperellipticError("map is not an involution modulo the lattice")
    x0 = f.fixed_point()
    if x0 is None:
        return []
    A = f.M - _I2
    snf = smith_normal_form(A)
    d1 = snf.D[0, 0]
    direction = snf.V.column(1)
    across = snf.V.column(0)
    circles = {
        Circle.through(tuple(x + Fraction(k, d1) * a for x, a in zip(x0, across)), direction) for k in range(d1)
    }
    out = sorted(circles)
    if len(out) not in (1, 2):
        raise ArithmeticError(f"expected 1 or 2 fixed circles, found {len(out)}")
    return out


# ---------------------------------------------------------------------------
# Bagnera-de Franchis families


@dataclass(frozen=True)
class DeckGenerator:
    name: str
    eta_order: int
    on_F: EllipticAffineMap


def _lin(rows):
    return EllipticAffineMap.linear(IntMatrix.from_rows(rows))


def _tr(*t):
    return EllipticAffineMap.translation(tuple(Fraction(x) for x in t))


FAMILY_ORDER = {1: 2, 2: 4, 3: 4, 4: 8, 5: 3, 6: 9, 7: 6}
FAMILY_GROUP = {1: "Z/2", 2: "Z/2 x Z/2", 3: "Z/4", 4: "Z/4 x Z/2", 5: "Z/3", 6: "Z/3 x Z/3", 7: "Z/6"}
FAMILY_LATTICE = {1: "i", 2: "i", 3: "i", 4: "i", 5: "rho", 6: "rho", 7: "rho"}


def _family_generators(k: int, epsilon: RatVector | None) -> list[DeckGenerator]:
    minus = _lin([[-1, 0], [0, -1]])
    if k == 1:
        return [DeckGenerator("g", 2, minus)]
    if k == 2:
        eps = epsilon if epsilon is not None else (Fraction(1, 2), Fraction(0))
        return [DeckGenerator("g", 2, minus), DeckGenerator("t", 2, EllipticAffineMap.translation(eps))]
    if k == 3:
        return [DeckGenerator("g", 4, EllipticAffineMap.linear(J_I))]
    if k == 4:
        return [DeckGenerator("g", 4, EllipticAffineMap.linear(J_I)),
                DeckGenerator("t", 2, _tr(Fraction(1, 2), Fraction(1, 2)))]
    if k == 5:
        return [DeckGenerator("g", 3, EllipticAffineMap.linear(J_RHO))]
    if k == 6:
        return [DeckGenerator("g", 3, EllipticAffineMap.linear(J_RHO)),
                DeckGenerator("t", 3, _tr(Fraction(1, 3), Fraction(-1, 3)))]
    if k == 7:
        return [DeckGenerator("g", 6, EllipticAffineMap.linear(-J_RHO))]
    raise HyperellipticError(f"family must be 1..7, got {k}")


_h = Fraction(1, 2)
DEFAULT_ETA = {
    1: [(_h, 0)],
    2: [(_h, 0), (0, _h)],
    3: [(Fraction(1, 4), 0)],
    4: [(Fraction(1, 4), Fraction(1, 4)), (_h, 0)],
    5: [(Fraction(1, 3), 0)],
    6: [(0, Fraction(1, 3)), (Fraction(1, 3), 0)],
    7: [(Fraction(1, 6), 0)],
}


def translation_order(t: RatVector) -> int:
    n = 1
    for x in t:
        n = n * Fraction(x).denominator // gcd(n, Fraction(x).denominator)
    return n


def closure(gens: Sequence[ProductMap]) -> list[ProductMap]:
    """Elements of the group generated by gens, in breadth-first order."""
    seen = {IDENTITY: 0}
    out = [IDENTITY]
    i = 0
    while i < len(out):
        x = out[i]
        for g in gens:
            y = g.compose(x)
            if y not in seen:
                seen[y] = len(out)
                out.append(y)
                if len(out) > 10_000:
                    raise HyperellipticError("generated group is infinite or too large")
        i += 1
    return out


@dataclass(frozen=True)
class SurfaceGroupAction:
    family: int
    J_E: IntMatrix
    J_F: IntMatrix
    deck: tuple[tuple[str, ProductMap], ...]
    elements: tuple[ProductMap, ...] = field(repr=False)
    eta: tuple[RatVector, ...] = ()
    epsilon: RatVector | None = None
    sigma_lift: ProductMap | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g: ProductMap) -> int:
        return self._index()[g]

    def _index(self) -> dict:
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {g: i for i, g in enumerate(self.elements)}
            object.__setattr__(self, "_index_cache", cache)
        return cache

    def contains(self, g: ProductMap) -> bool:
        return g in self._index()

    def require_real(self) -> ProductMap:
        if self.sigma_lift is None:
            raise HyperellipticError("no real structure attached")
        return self.sigma_lift


def bdf_family(k: int, eta: Sequence | None = None, epsilon: Sequence | None = None) -> SurfaceGroupAction:
    """Deck group of family k acting on E x F.

    eta lists the E-translations of the generators (one per generator, of the
    order the family requires); epsilon is the half period on F for family 2.
    """
    if k not in FAMILY_ORDER:
        raise HyperellipticError(f"family must be 1..7, got {k}")
    eps = None
    if epsilon is not None:
        if k != 2:
            raise HyperellipticError("epsilon only applies to family 2")
        eps = reduce_mod1(ratvec(epsilon))
        if translation_order(eps) != 2:
            raise HyperellipticError(f"epsilon must be a half period, got order {translation_order(eps)}")
    gens = _family_generators(k, eps)
    etas = [reduce_mod1(ratvec(v)) for v in (eta if eta is not None else DEFAULT_ETA[k])]
    if len(etas) != len(gens):
        raise HyperellipticError(f"family {k} needs {len(gens)} translation parameters, got {len(etas)}")
    for gen, v in zip(gens, etas):
        if translation_order(v) != gen.eta_order:
            raise HyperellipticError(
                f"translation for generator {gen.name} must have order {gen.eta_order}, got {translation_order(v)}"
            )
    deck = tuple((gen.name, ProductMap(EllipticAffineMap.translation(v), gen.on_F)) for gen, v in zip(gens, etas))
    elements = closure([m for _, m in deck])
    if len(elements) != FAMILY_ORDER[k]:
        raise HyperellipticError(f"deck group has order {len(elements)}, expected {FAMILY_ORDER[k]}")
    for g in elements[1:]:
        if g.has_fixed_point():
            raise NotFree(f"action not free: deck element with E-translation {rational_list(g.on_E.t)} has fixed points")
    J_F = LATTICES[FAMILY_LATTICE[k]]
    for g in elements:
        if not g.on_F.is_compatible(J_F):
            raise ArithmeticError("deck element is not holomorphic on F")
    if eps is not None:
        eps_out = eps
    elif k == 2:
        eps_out = (Fraction(1, 2), Fraction(0))
    else:
        eps_out = None
    return SurfaceGroupAction(k, J_I, J_F, deck, tuple(elements), tuple(etas), eps_out)


def attach_real_structure(action: SurfaceGroupAction, sigma: ProductMap) -> SurfaceGroupAction:
    if not sigma.antiholo:
        raise HyperellipticError("the lift of the real structure must be antiholomorphic")
    if not sigma.on_E.is_compatible(action.J_E):
        raise HyperellipticError("E-part of the lift is not antiholomorphic for the complex structure of E")
    if not sigma.on_F.is_compatible(action.J_F):
        raise HyperellipticError("F-part of the lift is not antiholomorphic for the complex structure of F")
    for name, g in action.deck:
        if not action.contains(g.conjugate(sigma)):
            raise NotNormalized(f"lift does not normalize the deck group (conjugate of {name} is not a deck map)")
    if not action.contains(sigma.square()):
        raise NotNormalized("square of the lift is not a deck transformation")
    return replace(action, sigma_lift=sigma)


# ---------------------------------------------------------------------------
# extended group


@dataclass(frozen=True)
class ExtendedGroup:
    order: int
    sigma_action: tuple[int, ...]  # index permutation of G induced by conjugation
    sigma_square: int  # index in G of sigma^2
    acts_trivially: bool
    acts_by_inversion: bool
    isomorphism_type: str | None
    lemma_case: str | None


def _as_finite_group(action: SurfaceGroupAction) -> tuple[grp.FiniteGroup, list[ProductMap]]:
    sigma = action.require_real()
    elems = list(action.elements) + [g.compose(sigma) for g in action.elements]
    index = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    table = [[index[elems[i].compose(elems[j])] for j in range(n)] for i in range(n)]
    return grp.FiniteGroup(n, np.array(table), name="extended"), elems


_CANDIDATES = {
    "Z/2 x Z/2": lambda: grp.abelian([2, 2]),
    "Z/4": lambda: grp.cyclic(4),
    "D3": lambda: grp.dihedral(3),
    "D4": lambda: grp.dihedral(4),
    "D6": lambda: grp.dihedral(6),
    "Z/2 x Z/2 x Z/2": lambda: grp.abelian([2, 2, 2]),
    "Z/4 x Z/2": lambda: grp.abelian([4, 2]),
    "Z/2 x D4": grp.z2_x_d4,
    "G1": grp.group_g1,
    "D3 x Z/3": grp.d3_x_z3,
}


@lru_cache(maxsize=None)
def _candidate(name: str) -> grp.FiniteGroup:
    return _CANDIDATES[name]()


# expected cases: family group -> list of (case label, required sigma action, extended group)
_LEMMA_CASES = {
    "Z/2": [("1", "inversion", "Z/2 x Z/2")],
    "Z/3": [("1", "inversion", "D3")],
    "Z/4": [("1", "inversion", "D4")],
    "Z/6": [("1", "inversion", "D6")],
    "Z/2 x Z/2": [("2.1", "trivial", "Z/2 x Z/2 x Z/2"), ("2.2", "trivial", "Z/4 x Z/2"),
                  ("2.3", "nontrivial", "D4")],
    "Z/4 x Z/2": [("3", None, "Z/2 x D4"), ("3", None, "G1")],
    "Z/3 x Z/3": [("4", None, "D3 x Z/3")],
}


def extended_group(action: SurfaceGroupAction) -> ExtendedGroup:
    sigma = action.require_real()
    Ghat, elems = _as_finite_group(action)
    n = action.order
    perm = tuple(action.index(g.conjugate(sigma)) for g in action.elements)
    trivial = perm == tuple(range(n))
    inversion = all(action.elements[perm[i]] == action.elements[i].inverse() for i in range(n))
    sq = action.index(sigma.square())
    iso, case = _classify_extension(action.family, Ghat, trivial, inversion)
    return ExtendedGroup(2 * n, perm, sq, trivial, inversion, iso, case)


def _classify_extension(family: int, Ghat: grp.FiniteGroup, trivial: bool, inversion: bool):
    iso = None
    for name, build in _CANDIDATES.items():
        cand = _candidate(name)
        if cand.order == Ghat.order and grp.is_isomorphic(cand, Ghat):
            iso = name
            break
    for label, need, group_name in _LEMMA_CASES[FAMILY_GROUP[family]]:
        if need == "inversion" and not inversion:
            continue
        if need == "trivial" and not trivial:
            continue
        if need == "nontrivial" and trivial:
            continue
        if iso == group_name:
            return iso, label
    return iso, None


# ---------------------------------------------------------------------------
# involutive lifts and the real part


def _lift_candidates(action: SurfaceGroupAction) -> list[ProductMap]:
    sigma = action.require_real()
    return [g.compose(sigma) for g in action.elements]


def involutive_lift_classes(action: SurfaceGroupAction, conjugacy: str = "deck") -> list[list[ProductMap]]:
    """Involutive lifts g*sigma partitioned into conjugacy classes.

    conjugacy="deck" conjugates by G, "extended" by the whole extended group.
    The two agree: conjugating an involutive lift s by another lift s' is the
    same as conjugating by the deck element s' s."""
    if conjugacy not in ("deck", "extended"):
        raise ValueError("conjugacy must be 'deck' or 'extended'")
    sigma = action.require_real()
    lifts = [x for x in _lift_candidates(action) if x.square().is_identity]
    conjugators = list(action.elements)
    if conjugacy == "extended":
        conjugators += [g.compose(sigma) for g in action.elements]
    remaining = dict.fromkeys(lifts)
    classes = []
    for s in lifts:
        if s not in remaining:
            continue
        cls = []
        for h in conjugators:
            c = s.conjugate(h)
            if c in remaining:
                del remaining[c]
                cls.append(c)
        classes.append(cls)
    return classes


def involutive_lifts(action: SurfaceGroupAction, conjugacy: str = "deck") -> list[ProductMap]:
    return [cls[0] for cls in involutive_lift_classes(action, conjugacy)]


@dataclass(frozen=True)
class RealSurfaceTopology:
    tori: int
    klein: int

    @property
    def is_valid(self) -> bool:
        return validate_topology(self)

    def to_json(self) -> dict:
        return {"tori": self.tori, "klein": self.klein, "valid": self.is_valid}


ALLOWED_TOPOLOGIES = frozenset(
    [(c, 0) for c in range(5)] + [(0, b) for b in range(1, 5)] + [(1, 1), (1, 2)]
)


def validate_topology(t: RealSurfaceTopology) -> bool:
    return (t.tori, t.klein) in ALLOWED_TOPOLOGIES


@dataclass(frozen=True)
class ComponentClass:
    lift: int  # index into RealPartReport.lifts
    circle_E: Circle
    circle_F: Circle
    orbit_size: int
    stabilizer_order: int
    kind: str  # "torus" or "klein"


@dataclass(frozen=True)
class LiftReport:
    lift: ProductMap
    class_size: int
    circles_E: int
    circles_F: int


@dataclass(frozen=True)
class RealPartReport:
    topology: RealSurfaceTopology
    lifts: tuple[LiftReport, ...]
    components: tuple[ComponentClass, ...]


Component = tuple[Circle, Circle]


def _move(g: ProductMap, comp: Component) -> Component:
    return comp[0].image(g.on_E), comp[1].image(g.on_F)


def _reverses_fiber(h: ProductMap, cF: Circle) -> bool:
    image = h.on_F.M @ cF.direction
    return tuple(image) == tuple(-x for x in cF.direction)


def _fixes_point_on_fiber(h: ProductMap, cF: Circle) -> bool:
    """Does h (restricted to the F-circle it preserves) have a fixed point?"""
    f = h.on_F
    x0 = cF.base
    d = cF.direction
    moved = [a - b for a, b in zip(f(x0), x0)]  # f(x0) - x0 modulo Z^2
    if tuple(f.M @ d) == d:
        # translation along the circle by moved; fixed iff moved is integral
        return all(Fraction(v).denominator == 1 for v in reduce_mod1(moved))
    # reflection of the circle always has a fixed point
    return True


def _classify_component(comp: Component, stabilizer: list[ProductMap]) -> str:
    cE, cF = comp
    for h in stabilizer:
        if tuple(h.on_E.M @ cE.direction) != cE.direction:
            raise ArithmeticError("deck element reverses the E-circle; deck maps must be translations on E")
    by_orientation = any(_reverses_fiber(h, cF) for h in stabilizer)
    by_fixed_point = any(_fixes_point_on_fiber(h, cF) for h in stabilizer if not h.is_identity)
    if by_orientation != by_fixed_point:
        raise ArithmeticError("orientation and fixed-point criteria disagree on a component")
    return "klein" if by_orientation else "torus"


def real_part(action: SurfaceGroupAction, conjugacy: str = "deck") -> RealPartReport:
    """Components of S(R) up to the deck group and their topological type."""
    classes = involutive_lift_classes(action, conjugacy)
    lift_reports = []
    comps_out = []
    tori = klein = 0
    G = action.elements
    for li, cls in enumerate(classes):
        s = cls[0]
        cE, cF = fixed_circles(s.on_E), fixed_circles(s.on_F)
        lift_reports.append(LiftReport(s, len(cls), len(cE), len(cF)))
        comps = [(a, b) for a in cE for b in cF]
        seen: set = set()
        for comp in comps:
            if comp in seen:
                continue
            orbit = {comp}
            stab = []
            for g in G:
                img = _move(g, comp)
                if img == comp:
                    stab.append(g)
                if img in comps:
                    orbit.add(img)
            seen |= orbit
            kind = _classify_component(comp, stab)
            comps_out.append(ComponentClass(li, comp[0], comp[1], len(orbit), len(stab), kind))
            if kind == "klein":
                klein += 1
            else:
                tori += 1
    return RealPartReport(RealSurfaceTopology(tori, klein), tuple(lift_reports), tuple(comps_out))


def real_part_topology(action: SurfaceGroupAction) -> RealSurfaceTopology:
    return real_part(action).topology


def real_part_all_lifts(action: SurfaceGroupAction) -> RealSurfaceTopology:
    """Same count without picking representatives: every component of every
    involutive lift's fixed locus, with G acting on (lift, component) pairs."""
    lifts = [x for x in _lift_candidates(action) if x.square().is_identity]
    nodes = []
    for s in lifts:
        for a in fixed_circles(s.on_E):
            for b in fixed_circles(s.on_F):
                nodes.append((s, (a, b)))
    node_set = set(nodes)
    seen = set()
    tori = klein = 0
    for node in nodes:
        if node in seen:
            continue
        s, comp = node
        orbit = set()
        stab = []
        for g in action.elements:
            img = (s.conjugate(g), _move(g, comp))
            if img not in node_set:
                raise ArithmeticError("deck image of a fixed component is not a fixed component")
            orbit.add(img)
            if img == node:
                stab.append(g)
        seen |= orbit
        if _classify_component(comp, stab) == "klein":
            klein += 1
        else:
            tori += 1
    return RealSurfaceTopology(tori, klein)


# ---------------------------------------------------------------------------
# default real structures and the sweep


def _antiholo(rows, t=(0, 0)) -> EllipticAffineMap:
    return EllipticAffineMap(IntMatrix.from_rows(rows), ratvec(t), True)


def product_antiholo(ME, tE, MF, tF) -> ProductMap:
    return ProductMap(_antiholo(ME, tE), _antiholo(MF, tF))


CONJ_I = [[1, 0], [0, -1]]
CONJ_RHO = [[1, -1], [0, -1]]

DEFAULT_SIGMA = {
    1: product_antiholo(CONJ_I, (0, 0), CONJ_I, (0, 0)),
    2: product_antiholo(CONJ_I, (0, 0), CONJ_I, (0, 0)),
    3: product_antiholo([[-1, 0], [0, 1]], (0, 0), CONJ_I, (0, 0)),
    4: product_antiholo(CONJ_I, (0, 0), CONJ_I, (_h, 0)),
    5: product_antiholo([[-1, 0], [0, 1]], (0, 0), CONJ_RHO, (0, 0)),
    6: product_antiholo(CONJ_I, (0, 0), [[-1, 1], [0, 1]], (0, 0)),
    7: product_antiholo([[-1, 0], [0, 1]], (0, 0), CONJ_RHO, (0, 0)),
}


def default_real_action(k: int) -> SurfaceGroupAction:
    return attach_real_structure(bdf_family(k), DEFAULT_SIGMA[k])


@lru_cache(maxsize=None)
def antiholomorphic_matrices(lattice: str) -> tuple[IntMatrix, ...]:
    """Linear parts of antiholomorphic involutions for the given complex structure."""
    J = LATTICES[lattice]
    Jbar = conjugate_cm(J)
    out = []
    for a, b, c, d in itertools.product(range(-2, 3), repeat=4):
        M = IntMatrix.from_rows([[a, b], [c, d]])
        if M.det() == -1 and M @ M == _I2 and M @ J == Jbar @ M:
            out.append(M)
    return tuple(out)


def _grid(den: int) -> list[RatVector]:
    return [(Fraction(i, den), Fraction(j, den)) for i in range(den) for j in range(den)]


def eta_choices(k: int) -> Iterator[list[RatVector]]:
    """All E-translation tuples making family k a free action."""
    gens = _family_generators(k, None)
    pools = [[v for v in _grid(gen.eta_order) if translation_order(v) == gen.eta_order] for gen in gens]
    for combo in itertools.product(*pools):
        yield list(combo)


def _epsilon_choices(k: int) -> list[RatVector | None]:
    if k != 2:
        return [None]
    return [v for v in _grid(2) if translation_order(v) == 2]


@dataclass(frozen=True)
class SweepRecord:
    family: int
    eta: tuple[RatVector, ...]
    epsilon: RatVector | None
    sigma: ProductMap
    topology: RealSurfaceTopology
    lemma_case: str | None
    extended_type: str | None


def _tE_representatives(M: IntMatrix, den: int) -> list[RatVector]:
    """Grid translations modulo the image of (I - M): conjugating by a
    translation of E changes t_E exactly by that image and commutes with G."""
    left = kernel_basis((M - _I2).T)
    f = left[0]
    reps = {}
    for t in _grid(den):
        key = (f[0] * t[0] + f[1] * t[1]) % 1
        reps.setdefault(key, t)
    return [reps[k] for k in sorted(reps)]


def sweep_family(k: int, denominator: int = 12) -> Iterator[SweepRecord]:
    """Real structures on family k with lift translation parts in (1/denominator) Z^2."""
    lattice_F = FAMILY_LATTICE[k]
    grid = _grid(denominator)
    ext_cache: dict = {}
    for eps in _epsilon_choices(k):
        for eta in eta_choices(k):
            try:
                action = bdf_family(k, eta, eps)
            except HyperellipticError:
                continue
            by_translation = {g.on_E.t: g for g in action.elements}
            for ME in antiholomorphic_matrices("i"):
                # conjugation must permute the E-translations compatibly
                images = {}
                for name, g in action.deck:
                    tgt = reduce_mod1(ME @ g.on_E.t)
                    if tgt not in by_translation:
                        break
                    images[name] = by_translation[tgt]
                else:
                    yield from _sweep_sigma(k, action, ME, images, by_translation, lattice_F, grid,
                                            denominator, ext_cache)


def _sweep_sigma(k, action, ME, images, by_translation, lattice_F, grid, denominator, ext_cache):
    deck = dict(action.deck)
    # F-parts that conjugate each generator to the required image, keyed by the F-part of their square
    f_parts: dict = {}
    for MF in antiholomorphic_matrices(lattice_F):
        for tF in grid:
            sF = EllipticAffineMap(MF, tF, True)
            sF_inv = sF.inverse()
            if all(sF.compose(deck[n].on_F).compose(sF_inv) == images[n].on_F for n in deck):
                f_parts.setdefault(sF.compose(sF), []).append(sF)
    if not f_parts:
        return
    for tE in _tE_representatives(ME, denominator):
        sE = EllipticAffineMap(ME, tE, True)
        sq = by_translation.get(sE.compose(sE).t)
        if sq is None:
            continue
        for sF in f_parts.get(sq.on_F, ()):
            sigma = ProductMap(sE, sF)
            real = attach_real_structure(action, sigma)
            topo = real_part_topology(real)
            ext_key = (tuple(action.index(g.conjugate(sigma)) for _, g in action.deck), action.index(sigma.square()))
            if ext_key not in ext_cache:
                ext = extended_group(real)
                ext_cache[ext_key] = (ext.lemma_case, ext.isomorphism_type)
            case, iso = ext_cache[ext_key]
            yield SweepRecord(k, action.eta, action.epsilon, sigma, topo, case, iso)


@dataclass
class SweepSummary:
    family: int
    structures: int = 0
    topologies: Counter = field(default_factory=Counter)
    lemma_cases: Counter = field(default_factory=Counter)
    invalid: list = field(default_factory=list)

    def add(self, rec: SweepRecord) -> None:
        self.structures += 1
        self.topologies[(rec.topology.tori, rec.topology.klein)] += 1
        self.lemma_cases[(rec.lemma_case, rec.extended_type)] += 1
        if not rec.topology.is_valid:
            self.invalid.append(rec)


def _summarize(k: int, denominator: int) -> SweepSummary:
    summary = SweepSummary(k)
    for rec in sweep_family(k, denominator):
        summary.add(rec)
    return summary


def sweep(families: Iterable[int] = range(1, 8), denominator: int = 12, workers: int = 1) -> list[SweepSummary]:
    families = list(families)
    if workers > 1 and len(families) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_summarize, families, [denominator] * len(families)))
    return [_summarize(k, denominator) for k in families]
