import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_force_congruence
from realstruct.linalg import (
    IntMatrix,
    Z2Decomposition,
    adapted_basis,
    canonical_involution,
    elementary_divisors,
    is_integral,
    kernel_basis,
    parse_rational,
    rank_mod2,
    reduce_mod1,
    smith_normal_form,
    solve_congruence,
    torsion_order,
    unimodular_inverse,
    z2_decomposition,
)
from realstruct.torus import random_unimodular

SWAP = IntMatrix.from_rows([[0, 1], [1, 0]])
I2 = IntMatrix.identity(2)


def small_matrices(max_dim=4, lo=-5, hi=5):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    ).map(IntMatrix.from_rows)


@st.composite
def unimodular(draw, k):
    rng = random.Random(draw(st.integers(0, 10**6)))
    return random_unimodular(k, rng, steps=draw(st.integers(0, 3 * k)))


@st.composite
def involutions(draw, max_r=3, max_free=3):
    r = draw(st.integers(0, max_r))
    p = draw(st.integers(0, max_free))
    q = draw(st.integers(0, max_free))
    if 2 * r + p + q == 0:
        p = 1
    s0 = canonical_involution(r, p, q)
    P = draw(unimodular(s0.rows))
    return P @ s0 @ unimodular_inverse(P), Z2Decomposition(r, p, q)


# -- smith normal form -------------------------------------------------------


def test_snf_identity():
    res = smith_normal_form(I2)
    assert res.D == I2
    assert res.diagonal == (1, 1)


def test_snf_swap_minus_identity():
    M = IntMatrix.from_rows([[-1, 1], [1, -1]])
    res = smith_normal_form(M)
    assert res.diagonal == (1, 0)
    assert res.U @ M @ res.V == res.D


def test_snf_rectangular():
    M = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12]])
    res = smith_normal_form(M)
    # gcd of entries is 2, gcd of the 2x2 minors (36, 48, 24) is 12
    assert res.diagonal == (2, 6)
    assert res.U @ M @ res.V == res.D


def test_snf_zero_matrix():
    Z = IntMatrix.zeros(2, 3)
    assert smith_normal_form(Z).diagonal == (0, 0)


@given(small_matrices())
def test_snf_recomposes(M):
    res = smith_normal_form(M)
    assert res.U @ M @ res.V == res.D
    assert abs(res.U.det()) == 1 and abs(res.V.det()) == 1
    diag = res.diagonal
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == tuple(nonzero)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    for i in range(res.D.rows):
        for j in range(res.D.cols):
            if i != j:
                assert res.D[i, j] == 0


@given(small_matrices())
def test_snf_deterministic(M):
    assert smith_normal_form(M) == smith_normal_form(M)


# -- rank mod 2, torsion ----------------------------------------------------


@pytest.mark.parametrize(
    "rows, expected",
    [([[0, 0], [0, -2]], 0), ([[1, 1], [1, 1]], 1), ([[1, 0], [0, 1]], 2), ([[3, 5], [1, 7]], 1)],
)
def test_rank_mod2(rows, expected):
    assert rank_mod2(IntMatrix.from_rows(rows)) == expected


@pytest.mark.parametrize(
    "rows, expected",
    [([[0, 0], [0, -2]], 2), ([[-1, 1], [1, -1]], 1), ([[1, 0], [0, 1]], 1), ([[2, 0], [0, 6]], 12)],
)
def test_torsion_order(rows, expected):
    assert torsion_order(IntMatrix.from_rows(rows)) == expected


def test_kernel_basis_saturated():
    M = IntMatrix.from_rows([[2, 4]])
    (v,) = kernel_basis(M)
    assert abs(v[0]) == 2 and abs(v[1]) == 1


# -- congruences ------------------------------------------------------------


def test_congruence_klein_bottle_has_no_solution():
    A = IntMatrix.from_rows([[0, 0], [0, -2]])
    assert solve_congruence(A, [Fraction(-1, 2), Fraction(0)]) is None


def test_congruence_zero_rhs():
    A = IntMatrix.from_rows([[3, 1], [7, -2]])
    assert solve_congruence(A, [0, 0]) == (0, 0)


def test_congruence_swap():
    A = IntMatrix.from_rows([[-1, 1], [1, -1]])
    b = [Fraction(-1, 2), Fraction(-1, 2)]
    x = solve_congruence(A, b)
    assert x is not None
    assert is_integral(a - c for a, c in zip(A @ x, b))
    # the hand solution (1/2, 0) is one of the valid answers
    assert is_integral(a - c for a, c in zip(A @ (Fraction(1, 2), Fraction(0)), b))


def test_congruence_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_congruence(I2, [0, 0, 0])


rationals = st.fractions(max_denominator=6).map(lambda x: x - (x.numerator // x.denominator))


@given(small_matrices(max_dim=3, lo=-3, hi=3).flatmap(
    lambda A: st.tuples(st.just(A), st.lists(rationals, min_size=A.rows, max_size=A.rows))))
def test_congruence_matches_brute_force(args):
    A, b = args
    x = solve_congruence(A, b)
    if x is not None:
        assert is_integral(a - c for a, c in zip(A @ x, b))
        assert all(0 <= v < 1 for v in x)
    assert (x is not None) == brute_force_congruence(A.tolist(), b)


def test_parse_rational():
    assert parse_rational(" -3/6 ") == Fraction(-1, 2)
    assert parse_rational("4") == 4
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_reduce_mod1():
    assert reduce_mod1([Fraction(-1, 3), Fraction(7, 2), 2]) == (Fraction(2, 3), Fraction(1, 2), 0)


# -- Z[Z/2] lattices ---------------------------------------------------------


@pytest.mark.parametrize(
    "s, expected",
    [(I2, (0, 2, 0)), (SWAP, (1, 0, 0)), (IntMatrix.diag([1, -1]), (0, 1, 1))],
)
def test_z2_decomposition_examples(s, expected):
    d = z2_decomposition(s)
    assert (d.r, d.n_plus_free, d.n_minus_free) == expected


def test_z2_decomposition_rejects_non_involution():
    with pytest.raises(ValueError):
        z2_decomposition(IntMatrix.from_rows([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        adapted_basis(IntMatrix.from_rows([[0, -1], [1, 0]]))


def test_adapted_basis_swap():
    P = adapted_basis(SWAP)
    assert unimodular_inverse(P) @ SWAP @ P == SWAP


def test_adapted_basis_block_form_is_identity_permitted():
    s = canonical_involution(1, 1, 1)
    P = adapted_basis(s)
    assert unimodular_inverse(P) @ s @ P == s


@given(involutions())
def test_involution_properties(case):
    s, dec = case
    k = s.rows
    assert z2_decomposition(s) == dec
    minus_I = s - IntMatrix.identity(k)
    assert set(elementary_divisors(minus_I)) <= {0, 1, 2}
    assert torsion_order(minus_I) == 2 ** dec.n_minus_free
    P = adapted_basis(s)
    assert abs(P.det()) == 1
    assert unimodular_inverse(P) @ s @ P == canonical_involution(dec.r, dec.n_plus_free, dec.n_minus_free)


@given(involutions(max_r=4, max_free=4), unimodular(1))
def test_decomposition_conjugation_invariant(case, _):
    s, dec = case
    rng = random.Random(s.rows)
    G = random_unimodular(s.rows, rng)
    assert z2_decomposition(G @ s @ unimodular_inverse(G)) == z2_decomposition(s)
