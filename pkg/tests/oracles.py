"""Brute-force reference computations on finite grids.

These deliberately avoid the package's congruence solver, Smith form and
circle bookkeeping: fixed loci are found by evaluating maps on every grid
point, and components by flood fill along grid steps.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction
from math import lcm

import numpy as np


def _grid(N: int, dim: int) -> np.ndarray:
    axes = [np.arange(N)] * dim
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)


def _encode(points: np.ndarray, N: int) -> np.ndarray:
    code = np.zeros(len(points), dtype=np.int64)
    for k in range(points.shape[1]):
        code = code * N + points[:, k]
    return code


def fixed_steps(A: np.ndarray, bound: int = 2) -> list[np.ndarray]:
    """Nonzero integer vectors v with |v_i| <= bound and A v = v."""
    box = _grid(2 * bound + 1, A.shape[0]) - bound
    keep = (box @ A.T == box).all(axis=1) & box.any(axis=1)
    return list(box[keep])


def _components(points: np.ndarray, N: int, steps: list[np.ndarray]) -> list[set[int]]:
    codes = _encode(points, N)
    present = set(codes.tolist())
    lookup = {c: p for c, p in zip(codes.tolist(), points)}
    seen: set[int] = set()
    comps = []
    for start in codes.tolist():
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            p = lookup[queue.popleft()]
            for v in steps:
                q = (p + v) % N
                c = int(_encode(q[None, :], N)[0])
                if c in present and c not in seen:
                    seen.add(c)
                    comp.add(c)
                    queue.append(c)
        comps.append(comp)
    return comps


def torus_components(s: list[list[int]], b: list[Fraction]) -> int:
    """Number of components of Fix(x -> s x + b) on R^k/Z^k, by rasterization.

    Each component is a translate of the +1 eigen-subtorus; it meets the grid
    (1/N)Z^k in N^n points when N is a multiple of 2 * den(b)."""
    A = np.array(s, dtype=np.int64)
    k = A.shape[0]
    N = 2 * lcm(*(Fraction(x).denominator for x in b))
    if N < 4:
        N = 4
    Nb = np.array([int(Fraction(x) * N) for x in b], dtype=np.int64)
    pts = _grid(N, k)
    moved = (pts @ A.T + Nb - pts) % N
    fixed = pts[(moved == 0).all(axis=1)]
    if len(fixed) == 0:
        return 0
    for bound in (1, 2, 4, 8, 12):
        steps = fixed_steps(A, bound)
        comps = _components(fixed, N, steps)
        n_plus = k - np.linalg.matrix_rank(A - np.eye(k, dtype=np.int64))
        if all(len(c) == N ** n_plus for c in comps):
            return len(comps)
    raise AssertionError("grid steps do not generate the fixed sublattice; raise the bound")


# ---------------------------------------------------------------------------
# hyperelliptic surfaces


class AffineOnGrid:
    """An affine map of R^4/Z^4 restricted to the grid (1/N)Z^4."""

    def __init__(self, A: np.ndarray, t_num: np.ndarray, N: int, antiholo: bool):
        self.A, self.t, self.N, self.antiholo = A, t_num % N, N, antiholo

    @classmethod
    def from_product(cls, pm, N: int) -> "AffineOnGrid":
        A = np.zeros((4, 4), dtype=np.int64)
        A[:2, :2] = np.array(pm.on_E.M.tolist())
        A[2:, 2:] = np.array(pm.on_F.M.tolist())
        t = [Fraction(x) * N for x in (*pm.on_E.t, *pm.on_F.t)]
        if any(x.denominator != 1 for x in t):
            raise ValueError(f"translation not on the 1/{N} grid")
        return cls(A, np.array([int(x) for x in t]), N, pm.antiholo)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        return (pts @ self.A.T + self.t) % self.N

    def compose(self, other: "AffineOnGrid") -> "AffineOnGrid":
        return AffineOnGrid(self.A @ other.A, self.A @ other.t + self.t, self.N, self.antiholo != other.antiholo)

    def key(self):
        return (self.A.tobytes(), tuple(self.t.tolist()))


def _group_closure(gens: list[AffineOnGrid], N: int) -> list[AffineOnGrid]:
    ident = AffineOnGrid(np.eye(4, dtype=np.int64), np.zeros(4, dtype=np.int64), N, False)
    out = [ident]
    seen = {ident.key()}
    i = 0
    while i < len(out):
        for g in gens:
            h = g.compose(out[i])
            # reduce the linear part: on a grid of size >= 3 a finite-order
            # integral matrix is determined by its action, so keys are exact
            if h.key() not in seen:
                seen.add(h.key())
                out.append(h)
        i += 1
        if len(out) > 100:
            raise AssertionError("group too large")
    return out


def _perm(f: AffineOnGrid, pts: np.ndarray) -> np.ndarray:
    return _encode(f(pts), f.N)


def grid_size(deck_gens, sigma) -> int:
    """A grid fine enough to contain every fixed point: fixed points of
    x -> Mx + t with M an involution solve (M - I) x = -t, so twice the
    translation denominators suffices (deck elements only add multiples)."""
    dens = [Fraction(x).denominator for g in (*deck_gens, sigma) for x in (*g.on_E.t, *g.on_F.t)]
    return max(4, 2 * lcm(*dens))


def hyperelliptic_real_part(deck_gens, sigma, N: int | None = None) -> tuple[int, int]:
    """(tori, klein) of S(R) for S = (E x F)/G by rasterizing E x F at 1/N."""
    if N is None:
        N = grid_size(deck_gens, sigma)
    gens = [AffineOnGrid.from_product(g, N) for g in deck_gens]
    G = _group_closure(gens, N)
    s0 = AffineOnGrid.from_product(sigma, N)
    pts = _grid(N, 4)
    ident = np.arange(len(pts))
    perms_G = [_perm(g, pts) for g in G]
    lifts = [g.compose(s0) for g in G]
    involutive = [s for s in lifts if np.array_equal(_perm(s.compose(s), pts), ident)]

    # conjugacy classes under G, by comparing grid permutations
    def inv_perm(p):
        q = np.empty_like(p)
        q[p] = np.arange(len(p))
        return q

    lift_perms = [_perm(s, pts) for s in involutive]
    lift_keys = [p.tobytes() for p in lift_perms]
    reps = []
    assigned = set()
    for i, p in enumerate(lift_perms):
        if lift_keys[i] in assigned:
            continue
        reps.append(i)
        for pg in perms_G:
            conj = pg[p[inv_perm(pg)]]  # g s g^-1 as a permutation
            assigned.add(conj.tobytes())

    tori = klein = 0
    for i in reps:
        s, p = involutive[i], lift_perms[i]
        fixed_idx = np.nonzero(p == ident)[0]
        if len(fixed_idx) == 0:
            continue
        fixed_pts = pts[fixed_idx]
        steps = fixed_steps(s.A, 2)
        comps = _components(fixed_pts, N, steps)
        comp_of = {}
        for ci, comp in enumerate(comps):
            for c in comp:
                comp_of[c] = ci
        F_steps = sorted((v for v in steps if not v[:2].any()), key=lambda v: int(abs(v).sum()))
        done = set()
        for ci, comp in enumerate(comps):
            if ci in done:
                continue
            sample = next(iter(comp))
            stab = []
            for g, pg in zip(G, perms_G):
                img = int(pg[sample])
                cj = comp_of.get(img)
                if cj is None:
                    continue
                # g maps the whole component onto component cj (check it)
                imgs = {int(pg[c]) for c in comp}
                assert imgs == comps[cj], "deck map splits a fixed component"
                done.add(cj)
                if cj == ci:
                    stab.append(g)
            # orientation along the F-circle: follow one grid step and see
            # whether h sends it forward or backward
            v = F_steps[0]
            p0 = np.array(np.unravel_index(sample, (N,) * 4))
            reverses = False
            for h in stab:
                a = h(p0[None, :])[0]
                b = h(((p0 + v) % N)[None, :])[0]
                if np.array_equal((b - a) % N, (-v) % N):
                    reverses = True
            if reverses:
                klein += 1
            else:
                tori += 1
    return tori, klein


def _det(M: list[list[Fraction]]) -> Fraction:
    if len(M) == 1:
        return Fraction(M[0][0])
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(len(M)))


def _cramer(B: list[list[int]], y: list[Fraction]) -> list[Fraction]:
    d = _det(B)
    out = []
    for j in range(len(B)):
        Bj = [row[:j] + [yi] + row[j + 1:] for row, yi in zip(B, y)]
        out.append(_det(Bj) / d)
    return out


def brute_force_congruence(A: list[list[int]], b: list[Fraction]) -> bool:
    """Is A x - b integral for some real x?

    Pick a nonsingular maximal minor B (rows I, columns J).  Columns J span
    the column space, so any solution can be moved to one supported on J with
    B x_J = b_I + z_I for an integral z_I; z_I only matters modulo det B."""
    m, k = len(A), len(A[0])
    b = [Fraction(x) for x in b]
    for r in range(min(m, k), 0, -1):
        for I in itertools.combinations(range(m), r):
            for J in itertools.combinations(range(k), r):
                B = [[A[i][j] for j in J] for i in I]
                d = abs(_det(B))
                if d == 0:
                    continue
                for z in itertools.product(range(int(d)), repeat=r):
                    xJ = _cramer(B, [b[i] + zi for i, zi in zip(I, z)])
                    x = [Fraction(0)] * k
                    for j, v in zip(J, xJ):
                        x[j] = v
                    if all((sum(a * xi for a, xi in zip(row, x)) - bi).denominator == 1 for row, bi in zip(A, b)):
                        return True
                return False
    return all(bi.denominator == 1 for bi in b)
