"""Exact integer and rational linear algebra.

Everything here works over Python integers and :class:`fractions.Fraction`,
so results are exact for any input size.  Matrices are small (rank <= 8 in
practice) and dense.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

RatVector = tuple[Fraction, ...]


class IntMatrix:
    """Immutable dense integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        for r in rows:
            for e in r:
                if isinstance(e, Fraction) and e.denominator != 1:
                    raise ValueError(f"non-integral entry {e}")
        return cls(len(rows), ncols, (int(e) for r in rows for e in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls.from_rows(list(zip(*cols)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (-a for a in self.entries))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            return IntMatrix(
                self.rows,
                other.cols,
                (sum(a * b for a, b in zip(self.row(i), c)) for i in range(self.rows) for c in cols),
            )
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError(f"cannot multiply {self.shape} matrix by vector of length {len(vec)}")
        return tuple(sum((a * x for a, x in zip(self.row(i), vec)), Fraction(0)) for i in range(self.rows))

    def det(self) -> int:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        return int(rational_det(self.tolist()))


def ratvec(values: Iterable) -> RatVector:
    """Build a rational vector; accepts ints, Fractions and "p/q" strings."""
    out = []
    for v in values:
        if isinstance(v, str):
            v = parse_rational(v)
        out.append(Fraction(v))
    return tuple(out)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        den_i = int(den)
        if den_i == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), den_i)
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_integral(vec: Iterable[Fraction]) -> bool:
    return all(Fraction(v).denominator == 1 for v in vec)


def reduce_mod1(vec: Iterable[Fraction]) -> RatVector:
    """Reduce every coordinate into [0, 1)."""
    return tuple(Fraction(v) - (Fraction(v).numerator // Fraction(v).denominator) for v in vec)


def common_denominator(vec: Iterable[Fraction]) -> int:
    d = 1
    for v in vec:
        q = Fraction(v).denominator
        d = d * q // gcd(d, q)
    return d


# ---------------------------------------------------------------------------
# rational helpers (lists of Fractions)


def rational_det(rows: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def rational_inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals; raises ValueError if singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def rational_matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[sum((Fraction(x) * y for x, y in zip(r, c)), Fraction(0)) for c in bt] for r in a]


def rational_rank(rows: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    rank = 0
    ncols = len(a[0])
    for c in range(ncols):
        p = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for i in range(rank + 1, len(a)):
            f = a[i][c] / a[rank][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


@lru_cache(maxsize=4096)
def smith_normal_form(M: IntMatrix) -> SnfResult:
    """Return unimodular U, V with U*M*V = D diagonal.

    Diagonal entries are nonnegative and each divides the next; zeros come
    last.  The pivot rule (smallest nonzero absolute value, first in
    row-major order) makes the output deterministic.
    """
    m, n = M.shape
    A = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            # remainders left behind become new, smaller pivots
            rest = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda x: x[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    return SnfResult(IntMatrix.from_rows(U), IntMatrix.from_rows(A), IntMatrix.from_rows(V))


def elementary_divisors(M: IntMatrix) -> tuple[int, ...]:
    return smith_normal_form(M).diagonal


def integer_rank(M: IntMatrix) -> int:
    return smith_normal_form(M).rank


def torsion_order(M: IntMatrix) -> int:
    """Order of the torsion subgroup of Z^rows / M Z^cols."""
    out = 1
    for d in elementary_divisors(M):
        if d:
            out *= d
    return out


def kernel_basis(M: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the (saturated) integer kernel {x in Z^cols : M x = 0}."""
    snf = smith_normal_form(M)
    return [snf.V.column(j) for j in range(snf.rank, M.cols)]


def rank_mod2(M: IntMatrix) -> int:
    rows = [sum(((e & 1) << j) for j, e in enumerate(M.row(i))) for i in range(M.rows)]
    return _f2_rank(rows)


def _f2_rank(rows: list[int]) -> int:
    rank = 0
    rows = [r for r in rows if r]
    while rows:
        pivot = rows.pop()
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def solve_congruence(A: IntMatrix, b: Sequence[Fraction]) -> RatVector | None:
    """Find a rational x with A x - b integral, or None if impossible.

    The returned x has every coordinate reduced into [0, 1); since A is
    integral, shifting x by an integer vector keeps A x - b integral.
    """
    b = ratvec(b)
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {A.rows} rows")
    snf = smith_normal_form(A)
    ub = snf.U @ b
    diag = snf.diagonal
    y = [Fraction(0)] * A.cols
    for i, c in enumerate(ub):
        d = diag[i] if i < len(diag) else 0
        if d:
            y[i] = c / d
        elif c.denominator != 1:
            return None
    return reduce_mod1(snf.V @ y)


# ---------------------------------------------------------------------------
# Z[Z/2]-lattices: integral involutions


@dataclass(frozen=True)
class Z2Decomposition:
    """Multiplicities of the three indecomposable Z[Z/2]-lattices.

    ``r`` counts regular summands (s swaps a basis pair), the other two
    count rank-one summands where s acts by +1 or -1.
    """

    r: int
    n_plus_free: int
    n_minus_free: int

    @property
    def rank(self) -> int:
        return 2 * self.r + self.n_plus_free + self.n_minus_free


def is_involution(s: IntMatrix) -> bool:
    return s.is_square and s @ s == IntMatrix.identity(s.rows)


def _require_involution(s: IntMatrix) -> None:
    if not is_involution(s):
        raise ValueError("matrix is not an involution (s*s != I)")


def z2_decomposition(s: IntMatrix) -> Z2Decomposition:
    _require_involution(s)
    k = s.rows
    eye = IntMatrix.identity(k)
    r = rank_mod2(s - eye)
    plus = k - integer_rank(s - eye)
    minus = k - integer_rank(s + eye)
    return Z2Decomposition(r, plus - r, minus - r)


def canonical_involution(r: int, n_plus: int, n_minus: int) -> IntMatrix:
    """Block form: r swap blocks, then +1 on n_plus, then -1 on n_minus."""
    k = 2 * r + n_plus + n_minus
    rows = [[0] * k for _ in range(k)]
    for i in range(r):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = 1
    for i in range(n_plus):
        rows[2 * r + i][2 * r + i] = 1
    for i in range(n_minus):
        j = 2 * r + n_plus + i
        rows[j][j] = -1
    return IntMatrix.from_rows(rows)


def _f2_row_reduce_ops(vectors: list[list[int]], dim: int) -> list[tuple]:
    """Elementary row operations over F_2 that send the columns ``vectors``
    (each of length ``dim``) to the first standard basis vectors.

    Returns the operations as ("swap", i, j) / ("add", dst, src) tuples, in
    application order.
    """
    mat = [[v[i] & 1 for v in vectors] for i in range(dim)]
    ops = []
    for c in range(len(vectors)):
        p = next((i for i in range(c, dim) if mat[i][c]), None)
        if p is None:
            raise ValueError("vectors are dependent mod 2")
        if p != c:
            mat[c], mat[p] = mat[p], mat[c]
            ops.append(("swap", c, p))
        for i in range(dim):
            if i != c and mat[i][c]:
                mat[i] = [x ^ y for x, y in zip(mat[i], mat[c])]
                ops.append(("add", i, c))
    return ops


def _unimodular_with_columns_mod2(vectors: list[list[int]], dim: int) -> list[list[int]]:
    """Integer unimodular matrix whose first columns reduce to ``vectors`` mod 2."""
    ops = _f2_row_reduce_ops(vectors, dim)
    # R = product of the integer lifts of ops (R*vectors == e_i mod 2);
    # we want R^{-1}, built by applying inverse ops in reverse order.
    Z = [[int(i == j) for j in range(dim)] for i in range(dim)]
    for op in reversed(ops):
        kind, i, j = op
        if kind == "swap":
            Z[i], Z[j] = Z[j], Z[i]
        else:
            # inverse of row_i += row_j is row_i -= row_j, applied on the left
            Z[i] = [x - y for x, y in zip(Z[i], Z[j])]
    return Z


def _f2_graph_basis(pairs: list[tuple[list[int], list[int]]]) -> list[tuple[list[int], list[int]]]:
    """Row-reduce the span of concatenated F_2 vectors, returning a basis."""
    if not pairs:
        return []
    la = len(pairs[0][0])
    rows = [[x & 1 for x in a] + [x & 1 for x in b] for a, b in pairs]
    basis = []
    width = len(rows[0])
    for c in range(width):
        p = next((i for i in range(len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        piv = rows.pop(p)
        rows = [[x ^ y for x, y in zip(r, piv)] if r[c] else r for r in rows]
        basis = [[x ^ y for x, y in zip(r, piv)] if r[c] else r for r in basis]
        basis.append(piv)
        rows = [r for r in rows if any(r)]
    return [(r[:la], r[la:]) for r in basis]


def adapted_basis(s: IntMatrix) -> IntMatrix:
    """Unimodular P such that P^-1 s P is in canonical block form.

    Columns of P: pairs (x_i, s x_i) for the r regular summands, then a basis
    of the remaining +1 part, then of the remaining -1 part.  Built from the
    saturated eigenlattices L+ and L-; the quotient L / (L+ + L-) is an
    elementary abelian 2-group that identifies subspaces of L+/2L+ and
    L-/2L- by a linear isomorphism, and choosing compatible bases on the two
    sides yields the swap pairs.
    """
    _require_involution(s)
    k = s.rows
    eye = IntMatrix.identity(k)
    snf_plus = smith_normal_form(s - eye)
    snf_minus = smith_normal_form(s + eye)
    plus_idx = list(range(snf_plus.rank, k))
    minus_idx = list(range(snf_minus.rank, k))
    Vp_inv = rational_inverse(snf_plus.V.tolist())
    Vm_inv = rational_inverse(snf_minus.V.tolist())

    def coords(v_inv, idx, vec):
        full = [sum(Fraction(a) * x for a, x in zip(row, vec)) for row in v_inv]
        return [int(full[i]) for i in idx]

    pairs = []
    for j in range(k):
        ej = [int(i == j) for i in range(k)]
        up = (eye + s) @ ej
        um = (eye - s) @ ej
        pairs.append((coords(Vp_inv, plus_idx, up), coords(Vm_inv, minus_idx, um)))
    graph = _f2_graph_basis(pairs)
    r = len(graph)

    Zp = _unimodular_with_columns_mod2([a for a, _ in graph], len(plus_idx))
    Zm = _unimodular_with_columns_mod2([b for _, b in graph], len(minus_idx))
    Bp = [snf_plus.V.column(j) for j in plus_idx]
    Bm = [snf_minus.V.column(j) for j in minus_idx]

    def combo(basis, coeffs):
        return [sum(c * v[i] for c, v in zip(coeffs, basis)) for i in range(k)]

    plus_vecs = [combo(Bp, [Zp[i][j] for i in range(len(plus_idx))]) for j in range(len(plus_idx))]
    minus_vecs = [combo(Bm, [Zm[i][j] for i in range(len(minus_idx))]) for j in range(len(minus_idx))]

    columns = []
    for i in range(r):
        twice = [a + b for a, b in zip(plus_vecs[i], minus_vecs[i])]
        if any(x % 2 for x in twice):
            raise ArithmeticError("adapted basis construction produced a non-lattice vector")
        x = [t // 2 for t in twice]
        columns.append(x)
        columns.append([int(v) for v in s @ x])
    columns.extend(plus_vecs[r:])
    columns.extend(minus_vecs[r:])
    P = IntMatrix.from_columns(columns)

    target = canonical_involution(r, len(plus_idx) - r, len(minus_idx) - r)
    if abs(P.det()) != 1 or s @ P != P @ target:
        raise ArithmeticError("adapted basis failed its block-form check")
    return P


def unimodular_inverse(P: IntMatrix) -> IntMatrix:
    inv = rational_inverse(P.tolist())
    return IntMatrix.from_rows(inv)
