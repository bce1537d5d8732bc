"""Finite groups on the index set {0, ..., order-1}.

Small groups carry a dense multiplication table.  The metacyclic family can
get large (order above 15000 inside the tested range), so it multiplies by
formula and only materializes a table on request.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter, deque
from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

import numpy as np

TABLE_LIMIT = 4096
FULL_ASSOCIATIVITY_LIMIT = 512
SAMPLED_TRIPLES = 1_000_000


class GroupParseError(ValueError):
    """A group expression could not be parsed or names no known constructor."""


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication.

    ``generators`` maps names to element indices; words in these names can be
    evaluated with :meth:`word`.
    """

    def __init__(
        self,
        order: int,
        table: np.ndarray | None = None,
        *,
        mul: Callable[[int, int], int] | None = None,
        mul_array: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None,
        identity: int = 0,
        name: str = "",
        generators: dict[str, int] | None = None,
        labels: Sequence[str] | None = None,
        check: bool = True,
    ):
        if order < 1:
            raise GroupError("group order must be positive")
        if table is None and mul is None:
            raise GroupError("need a table or a multiplication")
        self.order = order
        self.identity = identity
        self.name = name
        self.generators = dict(generators or {})
        self.labels = list(labels) if labels is not None else None
        self._table = None
        self._rows = None
        if table is not None:
            self._set_table(np.asarray(table))
        self._mul = mul
        self._mul_array = mul_array
        self._inverse: list[int] | None = None
        if check:
            self.check()

    def _set_table(self, table: np.ndarray) -> None:
        if table.shape != (self.order, self.order):
            raise GroupError(f"table has shape {table.shape}, expected {(self.order, self.order)}")
        self._table = table.astype(np.int32 if self.order > 32000 else np.int16, copy=False)
        self._rows = self._table.tolist()

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.order > TABLE_LIMIT:
                raise GroupError(f"refusing to materialize a {self.order}x{self.order} table")
            idx = np.arange(self.order)
            xs, ys = np.meshgrid(idx, idx, indexing="ij")
            self._set_table(self.mul_array(xs.ravel(), ys.ravel()).reshape(self.order, self.order))
        return self._table

    @property
    def has_table(self) -> bool:
        return self._table is not None

    def mul(self, x: int, y: int) -> int:
        if self._rows is not None:
            return self._rows[x][y]
        return self._mul(x, y)

    def mul_array(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        if self._table is not None:
            return self._table[xs, ys]
        if self._mul_array is not None:
            return self._mul_array(np.asarray(xs), np.asarray(ys))
        return np.array([self._mul(int(x), int(y)) for x, y in zip(xs, ys)])

    def elements(self) -> range:
        return range(self.order)

    def inverse(self, x: int) -> int:
        if self._inverse is None:
            if self._table is not None:
                inv = np.argmax(self._table == self.identity, axis=1)
                self._inverse = inv.tolist()
            else:
                self._inverse = [-1] * self.order
        if self._inverse[x] < 0:
            # walk the cyclic subgroup: x^(k-1) is the inverse
            prev, cur = self.identity, x
            while cur != self.identity:
                prev, cur = cur, self.mul(cur, x)
            self._inverse[x] = prev
        return self._inverse[x]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse(x), -k
        out = self.identity
        base = x
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, x: int) -> int:
        k, cur = 1, x
        while cur != self.identity:
            cur = self.mul(cur, x)
            k += 1
            if k > self.order:
                raise GroupError("element order exceeds group order; multiplication is broken")
        return k

    def conjugate(self, x: int, by: int) -> int:
        """by * x * by^-1"""
        return self.mul(self.mul(by, x), self.inverse(by))

    def commutes(self, x: int, y: int) -> bool:
        return self.mul(x, y) == self.mul(y, x)

    def is_abelian(self) -> bool:
        gens = list(self.generators.values()) or list(self.elements())
        return all(self.commutes(x, y) for x, y in itertools.combinations(gens, 2))

    def closure(self, gens: Sequence[int]) -> set[int]:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def word(self, text: str) -> int:
        """Evaluate a word such as ``a*c^-1*a^2`` in the named generators."""
        text = text.replace(" ", "")
        if text in ("", "1", "e", "id"):
            return self.identity
        out = self.identity
        for factor in text.split("*"):
            m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9']*)(?:\^(-?\d+))?", factor)
            if not m:
                raise GroupParseError(f"cannot parse word factor {factor!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            if name in ("e", "id"):
                continue
            if name not in self.generators:
                raise GroupParseError(f"unknown generator {name!r}; known: {sorted(self.generators)}")
            out = self.mul(out, self.power(self.generators[name], exp))
        return out

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def check(self) -> None:
        """Latin square, identity, and associativity (full or sampled)."""
        n = self.order
        e = self.identity
        if self.has_table or n <= TABLE_LIMIT:
            T = self.table
            if not (T[e] == np.arange(n)).all() or not (T[:, e] == np.arange(n)).all():
                raise GroupError("identity element does not act trivially")
            expected = np.arange(n)
            if not (np.sort(T, axis=1) == expected).all() or not (np.sort(T, axis=0) == expected[:, None]).all():
                raise GroupError("multiplication table is not a Latin square")
        if n <= FULL_ASSOCIATIVITY_LIMIT:
            T = self.table.astype(np.int64)
            for x in range(n):
                left = T[T[x]]  # (x*y)*z over all y, z
                right = T[x][T]  # x*(y*z)
                if not (left == right).all():
                    raise GroupError("multiplication is not associative")
        else:
            rng = np.random.default_rng(0)
            samples = SAMPLED_TRIPLES if self._table is not None or self._mul_array is not None else 2000
            xs, ys, zs = (rng.integers(0, n, samples) for _ in range(3))
            left = self.mul_array(self.mul_array(xs, ys), zs)
            right = self.mul_array(xs, self.mul_array(ys, zs))
            if not np.array_equal(left, right):
                raise GroupError("multiplication is not associative (sampled)")
            ex = np.full(samples, e)
            if not (np.array_equal(self.mul_array(ex, xs), xs) and np.array_equal(self.mul_array(xs, ex), xs)):
                raise GroupError("identity element does not act trivially (sampled)")

    def signature(self) -> tuple:
        """Cheap isomorphism invariants: order, element-order counts, centre and
        derived-subgroup sizes, number of squares."""
        orders = Counter(self.element_order(x) for x in self.elements())
        centre = sum(1 for x in self.elements() if all(self.commutes(x, y) for y in self.elements()))
        commutators = {
            self.mul(self.mul(x, y), self.inverse(self.mul(y, x))) for x in self.elements() for y in self.elements()
        }
        derived = len(self.closure(sorted(commutators)))
        squares = len({self.mul(x, x) for x in self.elements()})
        return (self.order, tuple(sorted(orders.items())), centre, derived, squares)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_order(g)


def is_generating_pair(G: FiniteGroup, a: int, c: int) -> bool:
    return len(G.closure([a, c])) == G.order


def extend_homomorphism(G: FiniteGroup, gens: Sequence[int], images: Sequence[int],
                        target: FiniteGroup | None = None) -> list[int] | None:
    """Extend g_i -> h_i to a homomorphism G -> target (default G), or None
    if ill-defined.

    Walks the Cayley graph from the identity assigning rho(x*g) = rho(x)*h and
    checks every edge, which is exactly the homomorphism condition on
    generators.  Returns the map as a list (index -> image).
    """
    H = G if target is None else target
    rho = [-1] * G.order
    rho[G.identity] = H.identity
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        rx = rho[x]
        for g, h in zip(gens, images):
            y = G.mul(x, g)
            val = H.mul(rx, h)
            if rho[y] < 0:
                rho[y] = val
                queue.append(y)
            elif rho[y] != val:
                return None
    if min(rho) < 0:
        raise GroupError("generators do not generate the group")
    return rho


def generating_set(G: FiniteGroup) -> list[int]:
    """The named generators if they generate, else a greedy generating set."""
    named = list(G.generators.values())
    if named and len(G.closure(named)) == G.order:
        return named
    gens: list[int] = []
    span = {G.identity}
    for x in sorted(G.elements(), key=lambda y: -G.element_order(y)):
        if x not in span:
            gens.append(x)
            span = G.closure(gens)
            if len(span) == G.order:
                break
    return gens


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> list[int] | None:
    """An isomorphism G -> H as an index list, or None.  Exhaustive over
    images of a generating set of G; meant for groups of order < 100."""
    if G.order != H.order:
        return None
    gens = generating_set(G)
    h_orders = [H.element_order(y) for y in H.elements()]
    choices = [[y for y in H.elements() if h_orders[y] == G.element_order(g)] for g in gens]
    for images in itertools.product(*choices):
        rho = extend_homomorphism(G, gens, images, target=H)
        if rho is not None and len(set(rho)) == G.order:
            return rho
    return None


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


def inverting_automorphism_search(G: FiniteGroup, a: int, c: int) -> bool:
    """Brute-force check for an automorphism with a -> a^-1, c -> c^-1."""
    if not is_generating_pair(G, a, c):
        raise GroupError("(a, c) does not generate the group")
    rho = extend_homomorphism(G, [a, c], [G.inverse(a), G.inverse(c)])
    return rho is not None and len(set(rho)) == G.order


def inverting_automorphism_exists(G: FiniteGroup, a: int, c: int) -> bool:
    """Is there an automorphism rho of G with rho(a) = a^-1 and rho(c) = c^-1?

    For the metacyclic family with its defining generators this reduces to
    r^2 = 1 (mod p); everything else goes through the generic search.
    """
    if isinstance(G, MetacyclicGroup) and (a, c) == (G.a, G.c):
        return semidirect_inverting_criterion(G.params)
    return inverting_automorphism_search(G, a, c)


# ---------------------------------------------------------------------------
# constructors


def _cyclic_labels(n: int, name: str) -> list[str]:
    return ["e"] + [f"{name}^{k}" if k > 1 else name for k in range(1, n)]


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(n, table, name=f"cyclic({n})", generators={"g": 1 % n}, labels=_cyclic_labels(n, "g"))


def abelian(factors: Sequence[int]) -> FiniteGroup:
    """Direct product of cyclic groups Z/n_1 x ... x Z/n_k, generators g1..gk."""
    factors = list(factors)
    if not factors or any(f < 1 for f in factors):
        raise GroupError("abelian group needs positive invariant factors")
    order = int(np.prod(factors))
    coords = list(itertools.product(*(range(f) for f in factors)))
    index = {c: i for i, c in enumerate(coords)}
    arr = np.array(coords)
    mods = np.array(factors)
    table = np.empty((order, order), dtype=np.int64)
    for i, c in enumerate(coords):
        sums = (arr + np.array(c)) % mods
        table[i] = [index[tuple(v)] for v in sums.tolist()]
    gens = {}
    for k in range(len(factors)):
        unit = [0] * len(factors)
        unit[k] = 1 % factors[k]
        gens[f"g{k + 1}"] = index[tuple(unit)]
    labels = ["(" + ",".join(map(str, c)) + ")" for c in coords]
    name = "abelian(" + ",".join(map(str, factors)) + ")"
    return FiniteGroup(order, table, name=name, generators=gens, labels=labels)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotation r of order n, reflection s."""
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")
    # element (k, f) = r^k s^f, index k + n*f
    order = 2 * n
    table = np.empty((order, order), dtype=np.int64)
    for x in range(order):
        k1, f1 = x % n, x // n
        for y in range(order):
            k2, f2 = y % n, y // n
            k = (k1 + (k2 if f1 == 0 else -k2)) % n
            table[x, y] = k + n * ((f1 + f2) % 2)
    labels = [("e" if k == 0 else f"r^{k}") + ("" if f == 0 else "s") for f in range(2) for k in range(n)]
    labels = [lab.replace("es", "s") for lab in labels]
    return FiniteGroup(order, table, name=f"dihedral({n})", generators={"r": 1 % n if n > 1 else 0, "s": n},
                       labels=labels)


def direct_product(G: FiniteGroup, H: FiniteGroup, *, name: str = "",
                   rename: tuple[dict, dict] | None = None) -> FiniteGroup:
    """G x H, element (g, h) at index g*|H| + h."""
    order = G.order * H.order
    TG, TH = G.table.astype(np.int64), H.table.astype(np.int64)
    g_idx = np.arange(order) // H.order
    h_idx = np.arange(order) % H.order
    table = TG[g_idx[:, None], g_idx[None, :]] * H.order + TH[h_idx[:, None], h_idx[None, :]]
    left = dict(G.generators)
    right = dict(H.generators)
    if rename:
        left = {rename[0].get(k, k): v for k, v in left.items()}
        right = {rename[1].get(k, k): v for k, v in right.items()}
    gens = {}
    for k, v in left.items():
        gens[k] = v * H.order + H.identity
    for k, v in right.items():
        key = k if k not in gens else k + "'"
        gens[key] = G.identity * H.order + v
    labels = None
    if G.labels and H.labels:
        labels = [f"({G.labels[g]},{H.labels[h]})" for g in range(G.order) for h in range(H.order)]
    return FiniteGroup(order, table, identity=G.identity * H.order + H.identity,
                       name=name or f"{G.name} x {H.name}", generators=gens, labels=labels)


def semidirect_product(N: FiniteGroup, H: FiniteGroup, action: Callable[[int], Sequence[int]], *,
                       name: str = "", generators: dict | None = None) -> FiniteGroup:
    """N x| H with h n h^-1 = action(h)[n]; element (n, h) = n*h at index n*|H| + h."""
    phi = [list(action(h)) for h in range(H.order)]
    for h in range(H.order):
        if sorted(phi[h]) != list(range(N.order)):
            raise GroupError("action is not a permutation of N")
    order = N.order * H.order
    table = np.empty((order, order), dtype=np.int64)
    for x in range(order):
        n1, h1 = divmod(x, H.order)
        for y in range(order):
            n2, h2 = divmod(y, H.order)
            # n1 h1 n2 h2 = n1 (h1 n2 h1^-1) h1 h2
            table[x, y] = N.mul(n1, phi[h1][n2]) * H.order + H.mul(h1, h2)
    G = FiniteGroup(order, table, identity=N.identity * H.order + H.identity,
                    name=name or f"{N.name} x| {H.name}", check=False)
    if generators:
        G.generators = dict(generators)
    G.check()
    return G


def group_g1() -> FiniteGroup:
    """<sigma, g, t | sigma^2 = g^4 = t^2 = 1, t central, sigma g = g^-1 t sigma>.

    Realized as (Z/4 x Z/2) x| Z/2 with sigma acting by g -> g^-1 t, t -> t.
    """
    N = abelian([4, 2])  # (i, j) = g^i t^j, index 2i + j
    H = cyclic(2)

    def act(h):
        if h == 0:
            return list(range(8))
        perm = []
        for x in range(8):
            i, j = divmod(x, 2)
            # g^i t^j -> (g^-1 t)^i t^j = g^-i t^(i+j)
            perm.append(((-i) % 4) * 2 + (i + j) % 2)
        return perm

    # index = n*|H| + h, with n = 2i + j
    gens = {"g": (2 * 1 + 0) * 2, "t": (2 * 0 + 1) * 2, "sigma": 1}
    return semidirect_product(N, H, act, name="G1", generators=gens)


def z2_x_d4() -> FiniteGroup:
    return direct_product(cyclic(2), dihedral(4), name="Z/2 x D4", rename=({"g": "t"}, {}))


def d3_x_z3() -> FiniteGroup:
    return direct_product(dihedral(3), cyclic(3), name="D3 x Z/3", rename=({}, {"g": "t"}))


def symmetric3() -> FiniteGroup:
    return dihedral(3)


# ---------------------------------------------------------------------------
# metacyclic family  <a, c | a^m = c^p = 1, a c a^-1 = c^r>,  p = r^m - 1


@dataclass(frozen=True)
class MetacyclicParams:
    r: int
    m: int

    @property
    def p(self) -> int:
        return self.r ** self.m - 1

    @property
    def n(self) -> int:
        return (self.r - 1) * self.m

    def validate(self) -> "MetacyclicParams":
        if self.r < 3 or self.m < 4:
            raise GroupError(f"metacyclic family needs r >= 3 and m >= 4, got r={self.r}, m={self.m}")
        p = self.p
        if gcd(self.r, p) != 1:
            raise GroupError("r must be a unit mod p")
        if multiplicative_order(self.r, p) != self.m:
            raise GroupError("r must have multiplicative order m mod p")
        return self


def multiplicative_order(x: int, mod: int) -> int:
    if mod == 1:
        return 1
    k, cur = 1, x % mod
    while cur != 1:
        cur = cur * x % mod
        k += 1
        if k > mod:
            raise ValueError(f"{x} is not a unit mod {mod}")
    return k


class MetacyclicGroup(FiniteGroup):
    """Element c^j a^i stored at index i*p + j.

    Multiplication: (c^j a^i)(c^l a^k) = c^(j + l r^i) a^(i+k).
    """

    def __init__(self, params: MetacyclicParams, check: bool = True):
        self.params = params.validate()
        m, p, r = params.m, params.p, params.r
        self._rpow = [pow(r, i, p) for i in range(m)]
        rpow_arr = np.array(self._rpow, dtype=np.int64)

        def mul(x, y):
            i, j = divmod(x, p)
            k, l = divmod(y, p)
            return ((i + k) % m) * p + (j + l * self._rpow[i]) % p

        def mul_array(xs, ys):
            xs = np.asarray(xs, dtype=np.int64)
            ys = np.asarray(ys, dtype=np.int64)
            i, j = np.divmod(xs, p)
            k, l = np.divmod(ys, p)
            return ((i + k) % m) * p + (j + l * rpow_arr[i]) % p

        super().__init__(m * p, mul=mul, mul_array=mul_array, identity=0,
                         name=f"metacyclic({r},{m})", generators={"a": p, "c": 1}, check=False)
        if check:
            self.check()
            self.check_relations()

    @property
    def a(self) -> int:
        return self.generators["a"]

    @property
    def c(self) -> int:
        return self.generators["c"]

    def check_relations(self) -> None:
        m, p, r = self.params.m, self.params.p, self.params.r
        a, c = self.a, self.c
        if self.power(a, m) != self.identity or self.power(c, p) != self.identity:
            raise GroupError("metacyclic relations a^m = c^p = 1 fail")
        if self.conjugate(c, a) != self.power(c, r):
            raise GroupError("metacyclic relation a c a^-1 = c^r fails")


def metacyclic(r: int, m: int, check: bool = True) -> tuple[MetacyclicGroup, int, int]:
    G = MetacyclicGroup(MetacyclicParams(r, m), check=check)
    return G, G.a, G.c


def semidirect_inverting_criterion(params: MetacyclicParams) -> bool:
    """r^2 = 1 (mod p): when inversion of both generators is an automorphism."""
    params.validate()
    return (params.r * params.r - 1) % params.p == 0


# ---------------------------------------------------------------------------
# constructor expressions, e.g. "metacyclic(3,4)", "fermat-deck(5)"


def _accola_deck(g: int) -> FiniteGroup:
    G = abelian([2, 2 * g + 2])
    G.generators = {"y": G.generators["g1"], "x": G.generators["g2"]}
    return G


def _fermat_deck(n: int) -> FiniteGroup:
    return abelian([n, n])


CONSTRUCTORS: dict[str, Callable[..., FiniteGroup]] = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "abelian": lambda *f: abelian(f),
    "metacyclic": lambda r, m: metacyclic(r, m)[0],
    "fermat-deck": _fermat_deck,
    "accola-deck": _accola_deck,
    "g1": group_g1,
    "z2xd4": z2_x_d4,
    "d3xz3": d3_x_z3,
}

# default (a, c) words used when an expression is turned into a triangle datum
DEFAULT_PAIR = {
    "cyclic": ("g", "g"),
    "dihedral": ("s", "r"),
    "abelian": ("g1", "g2"),
    "metacyclic": ("a", "c"),
    "fermat-deck": ("g1", "g2"),
    "accola-deck": ("y", "x"),
}


def parse_group(expr: str) -> tuple[FiniteGroup, str]:
    """Build a group from an expression like ``metacyclic(3,4)``; returns (group, constructor name)."""
    m = re.fullmatch(r"\s*([a-z0-9-]+)\s*(?:\(([^)]*)\))?\s*", expr)
    if not m:
        raise GroupParseError(f"cannot parse group expression {expr!r}")
    name, args = m.group(1), m.group(2)
    if name not in CONSTRUCTORS:
        raise GroupParseError(f"unknown group constructor {name!r}; known: {sorted(CONSTRUCTORS)}")
    params = []
    if args and args.strip():
        try:
            params = [int(x) for x in args.replace("[", "").replace("]", "").split(",")]
        except ValueError:
            raise GroupParseError(f"group parameters must be integers in {expr!r}") from None
    try:
        return CONSTRUCTORS[name](*params), name
    except TypeError as exc:
        raise GroupParseError(f"bad arguments for {name}: {exc}") from None
