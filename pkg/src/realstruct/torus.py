"""Real structures on complex tori.

A real structure on an n-dimensional complex torus C^n / L lifts to an
affine map x -> s x + b of L (x) R = R^{2n}, written here in coordinates of a
lattice basis.  ``s`` is an integral involution with n eigenvalues +1 and n
eigenvalues -1; ``b`` is only relevant modulo the lattice.

The class of such a pair is determined by r = rank_F2(s - I) and by whether
the involution has fixed points (equivalently, whether the associated
orbifold extension splits).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (
    IntMatrix,
    RatVector,
    adapted_basis,
    canonical_involution,
    integer_rank,
    is_integral,
    is_involution,
    rank_mod2,
    rational_inverse,
    rational_matmul,
    ratvec,
    solve_congruence,
    torsion_order,
    unimodular_inverse,
)


class InvalidStructure(ValueError):
    """Input does not describe a real structure on a torus."""

    invariant = "structure"


class NotAnInvolution(InvalidStructure):
    invariant = "involution"


class NonIntegralSquare(InvalidStructure):
    invariant = "integral-square"


class EigenvalueImbalance(InvalidStructure):
    invariant = "eigenvalue-balance"


@dataclass(frozen=True)
class RealTorusStructure:
    n: int
    s: IntMatrix
    b: RatVector

    def __post_init__(self):
        object.__setattr__(self, "b", ratvec(self.b))


@dataclass(frozen=True)
class TorusClassInvariant:
    n: int
    r: int
    splits: bool


@dataclass(frozen=True)
class RealPartTopology:
    component_count: int
    component_dimension: int


@dataclass(frozen=True)
class NormalForm:
    """Canonical affine representative y -> s y + b of a real torus.

    ``basis`` and ``origin`` record the change of coordinates x = basis*y +
    origin that carries the input map (after adding ``shift``, a lattice
    vector) to the canonical one.
    """

    invariant: TorusClassInvariant
    s: IntMatrix
    b: RatVector
    basis: IntMatrix
    origin: RatVector
    shift: tuple[int, ...]


@dataclass(frozen=True)
class CompatibleComplexStructure:
    A: tuple[tuple[Fraction, ...], ...]
    adapted_basis: IntMatrix
    eigenbasis: tuple[tuple[Fraction, ...], ...]
    J: tuple[tuple[Fraction, ...], ...]


def validate(struct: RealTorusStructure) -> RealTorusStructure:
    s, b, n = struct.s, struct.b, struct.n
    if n < 1 or s.shape != (2 * n, 2 * n) or len(b) != 2 * n:
        raise InvalidStructure(f"expected a {2 * n}x{2 * n} matrix and a vector of length {2 * n}")
    if not is_involution(s):
        raise NotAnInvolution("s is not an involution: s*s != I")
    eye = IntMatrix.identity(2 * n)
    plus = 2 * n - integer_rank(s - eye)
    minus = 2 * n - integer_rank(s + eye)
    if plus != n or minus != n:
        raise EigenvalueImbalance(
            f"s has {plus} eigenvalues +1 and {minus} eigenvalues -1; an antiholomorphic "
            f"involution needs {n} of each"
        )
    sb = s @ b
    if not is_integral(x + y for x, y in zip(sb, b)):
        raise NonIntegralSquare("s*b + b is not integral, so the lift does not square to a lattice translation")
    return struct


def class_invariant(struct: RealTorusStructure) -> TorusClassInvariant:
    validate(struct)
    eye = IntMatrix.identity(2 * struct.n)
    r = rank_mod2(struct.s - eye)
    splits = solve_congruence(struct.s - eye, [-x for x in struct.b]) is not None
    return TorusClassInvariant(struct.n, r, splits)


def fixed_point(struct: RealTorusStructure) -> RatVector | None:
    """Some fixed point of the involution on the torus, or None."""
    eye = IntMatrix.identity(2 * struct.n)
    return solve_congruence(struct.s - eye, [-x for x in struct.b])


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def normal_form(struct: RealTorusStructure) -> NormalForm:
    validate(struct)
    n = struct.n
    k = 2 * n
    P = adapted_basis(struct.s)
    P_inv = unimodular_inverse(P)
    r = rank_mod2(struct.s - IntMatrix.identity(k))
    p = n - r
    y = list(P_inv @ struct.b)  # translation in adapted coordinates

    # Admissible moves: y -> y + lam + s0 c - c with lam integral, c real.
    lam = [0] * k
    c = [Fraction(0)] * k
    for i in range(r):
        b1, b2 = y[2 * i], y[2 * i + 1]
        # s0 c - c on a swap pair is (c2 - c1, c1 - c2)
        c[2 * i + 1] = b1  # c2 - c1 = b1 (with c1 = 0, lam1 = 0)
        lam[2 * i + 1] = -int(b1 + b2)  # b1 + b2 is integral
    for i in range(2 * r, 2 * r + p):
        lam[i] = -_floor(y[i])
    for i in range(2 * r + p, k):
        c[i] = -y[i] / 2  # s0 c - c = -2c on the -1 block
    # Moving the origin to -c turns y into y + lam - (s0 c - c).
    shifted = []
    for i in range(k):
        if i < 2 * r:
            pair = i - (i % 2)
            d = (c[pair + 1] - c[pair]) if i % 2 == 0 else (c[pair] - c[pair + 1])
        elif i < 2 * r + p:
            d = Fraction(0)
        else:
            d = -2 * c[i]
        shifted.append(y[i] + lam[i] - d)
    if any(v != 0 for v in shifted[:2 * r]) or any(v != 0 for v in shifted[2 * r + p:]):
        raise ArithmeticError("translation reduction left nonzero swap/minus components")
    plus_part = shifted[2 * r:2 * r + p]
    if any(v not in (0, Fraction(1, 2)) for v in plus_part):
        raise ArithmeticError("plus-block translation not reduced to {0, 1/2}")

    # Change of basis inside the +1 block so that 2*b+ becomes its first vector.
    Q = [[int(i == j) for j in range(k)] for i in range(k)]
    twice = [int(2 * v) for v in plus_part]
    if any(twice):
        # columns: 2*b+, then every standard vector except e_piv
        piv = twice.index(1)
        others = [j for j in range(p) if j != piv]
        for i in range(p):
            Q[2 * r + i][2 * r] = twice[i]
            for col, j in enumerate(others, start=1):
                Q[2 * r + i][2 * r + col] = int(i == j)
    Q = IntMatrix.from_rows(Q)
    splits = not any(twice)
    b_canon = [Fraction(0)] * k
    if not splits:
        b_canon[2 * r] = Fraction(1, 2)
    b_canon = tuple(b_canon)

    basis = P @ Q
    origin = tuple(P @ [-x for x in c])
    shift = tuple(int(v) for v in P @ lam)
    s_canon = canonical_involution(r, p, p)
    # x = basis*y + origin conjugates x -> s x + b + shift into y -> s_canon y + b_canon
    lhs = tuple(a + bb + sh - o for a, bb, sh, o in zip(struct.s @ origin, struct.b, shift, origin))
    if struct.s @ basis != basis @ s_canon or lhs != tuple(basis @ b_canon):
        raise ArithmeticError("normal form verification failed")
    inv = TorusClassInvariant(n, r, splits)
    return NormalForm(inv, s_canon, b_canon, basis, origin, shift)


def equivalent(s1: RealTorusStructure, s2: RealTorusStructure) -> bool:
    if s1.n != s2.n:
        raise ValueError(f"dimension mismatch: {s1.n} vs {s2.n}")
    return class_invariant(s1) == class_invariant(s2)


def real_part(struct: RealTorusStructure) -> RealPartTopology:
    inv = class_invariant(struct)
    if not inv.splits:
        return RealPartTopology(0, struct.n)
    return RealPartTopology(torsion_order(struct.s - IntMatrix.identity(2 * struct.n)), struct.n)


def elliptic_nu(struct: RealTorusStructure) -> int:
    """Number of real ovals of a real curve of genus one (0, 1 or 2)."""
    if struct.n != 1:
        raise ValueError("elliptic_nu needs a structure of complex dimension 1")
    return real_part(struct).component_count


def moduli_hyperbola_check(a, b) -> bool:
    """Whether [[a, b], [-b, -a]] squares to -I, i.e. b^2 - a^2 = 1."""
    a, b = Fraction(a), Fraction(b)
    return b * b - a * a == 1


def _identity(k):
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def eigenbasis(struct: RealTorusStructure) -> list[list[Fraction]]:
    """Rational basis (as matrix columns) with the n +1-eigenvectors first."""
    validate(struct)
    P = adapted_basis(struct.s)
    k = 2 * struct.n
    r = rank_mod2(struct.s - IntMatrix.identity(k))
    p = struct.n - r
    cols = [P.column(j) for j in range(k)]
    plus = [[a + b for a, b in zip(cols[2 * i], cols[2 * i + 1])] for i in range(r)] + cols[2 * r:2 * r + p]
    minus = [[a - b for a, b in zip(cols[2 * i], cols[2 * i + 1])] for i in range(r)] + cols[2 * r + p:]
    E = [list(c) for c in plus + minus]
    return [[Fraction(E[j][i]) for j in range(k)] for i in range(k)]


def is_compatible(s: IntMatrix, J: Sequence[Sequence]) -> bool:
    """J^2 = -I and J s = -s J: J is a complex structure making s antiholomorphic."""
    k = s.rows
    J = [[Fraction(x) for x in row] for row in J]
    S = [[Fraction(x) for x in row] for row in s.tolist()]
    JJ = rational_matmul(J, J)
    minus_eye = [[-x for x in row] for row in _identity(k)]
    JS = rational_matmul(J, S)
    SJ = rational_matmul(S, J)
    return JJ == minus_eye and all(a == -b for ra, rb in zip(JS, SJ) for a, b in zip(ra, rb))


def compatible_complex_structure(struct: RealTorusStructure, A: Sequence[Sequence]) -> CompatibleComplexStructure:
    """The complex structure J = [[0, A], [-A^-1, 0]] written in an eigenbasis of s.

    Every A in GL(n, Q) gives a translation-invariant complex structure for
    which the involution is antiholomorphic.
    """
    n = struct.n
    A = [[Fraction(x) for x in row] for row in A]
    if len(A) != n or any(len(row) != n for row in A):
        raise ValueError(f"A must be {n}x{n}")
    try:
        A_inv = rational_inverse(A)
    except ValueError:
        raise ValueError("A is singular") from None
    E = eigenbasis(struct)
    k = 2 * n
    J_eig = [[Fraction(0)] * k for _ in range(k)]
    for i in range(n):
        for j in range(n):
            J_eig[i][n + j] = A[i][j]
            J_eig[n + i][j] = -A_inv[i][j]
    J = rational_matmul(rational_matmul(E, J_eig), rational_inverse(E))
    if not is_compatible(struct.s, J):
        raise ArithmeticError("constructed J is not compatible")
    return CompatibleComplexStructure(
        tuple(tuple(r) for r in A),
        adapted_basis(struct.s),
        tuple(tuple(r) for r in E),
        tuple(tuple(r) for r in J),
    )


def extract_A(struct: RealTorusStructure, J: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of compatible_complex_structure: read A off the eigenbasis form of J."""
    if not is_compatible(struct.s, J):
        raise ValueError("J is not a compatible complex structure")
    n = struct.n
    E = eigenbasis(struct)
    J_eig = rational_matmul(rational_matmul(rational_inverse(E), J), E)
    return tuple(tuple(J_eig[i][n:]) for i in range(n))


# ---------------------------------------------------------------------------
# constructors


def canonical_structure(n: int, r: int, splits: bool = True) -> RealTorusStructure:
    """Normal-form representative with invariant (n, r, splits)."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    if not splits and r == n:
        raise ValueError("r = n forces the structure to split")
    s = canonical_involution(r, n - r, n - r)
    b = [Fraction(0)] * (2 * n)
    if not splits:
        b[2 * r] = Fraction(1, 2)
    return RealTorusStructure(n, s, tuple(b))


def realizable_invariants(n: int) -> list[TorusClassInvariant]:
    out = []
    for r in range(n + 1):
        out.append(TorusClassInvariant(n, r, True))
        if r < n:
            out.append(TorusClassInvariant(n, r, False))
    return out


def random_unimodular(k: int, rng: random.Random, steps: int | None = None) -> IntMatrix:
    P = [[int(i == j) for j in range(k)] for i in range(k)]
    if k < 2:
        return IntMatrix.from_rows([[rng.choice([1, -1])]])
    for _ in range(steps if steps is not None else 2 * k):
        i, j = rng.sample(range(k), 2)
        q = rng.choice([-1, 1])
        P[i] = [a + q * b for a, b in zip(P[i], P[j])]
        if rng.random() < 0.25:
            P[i], P[j] = P[j], P[i]
    return IntMatrix.from_rows(P)


def transform(struct: RealTorusStructure, P: IntMatrix, shift=None, origin=None) -> RealTorusStructure:
    """Apply the admissible moves: change of lattice basis, lattice shift of b, origin change.

    The result represents the same real torus: s -> P s P^-1, b -> P b,
    then b -> b + shift + (s c - c) for the origin c.
    """
    P_inv = unimodular_inverse(P)
    s = P @ struct.s @ P_inv
    b = list(P @ struct.b)
    k = len(b)
    if shift is not None:
        b = [x + int(y) for x, y in zip(b, shift)]
    if origin is not None:
        c = ratvec(origin)
        sc = s @ c
        b = [x + y - z for x, y, z in zip(b, sc, c)]
    return RealTorusStructure(struct.n, s, tuple(b[:k]))


def random_structure(n: int, rng: random.Random, *, invariant: TorusClassInvariant | None = None,
                     origin_denominator: int = 0) -> tuple[RealTorusStructure, TorusClassInvariant]:
    """Random structure in a random (or given) class, with its true invariant."""
    if invariant is None:
        invariant = rng.choice(realizable_invariants(n))
    base = canonical_structure(n, invariant.r, invariant.splits)
    k = 2 * n
    P = random_unimodular(k, rng)
    shift = [rng.randint(-2, 2) for _ in range(k)]
    origin = None
    if origin_denominator:
        origin = [Fraction(rng.randint(0, origin_denominator - 1), origin_denominator) for _ in range(k)]
    return transform(base, P, shift, origin), invariant
