import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from realstruct.groups import (
    FiniteGroup,
    GroupError,
    GroupParseError,
    MetacyclicParams,
    abelian,
    cyclic,
    d3_x_z3,
    dihedral,
    direct_product,
    element_order,
    find_isomorphism,
    group_g1,
    inverting_automorphism_exists,
    inverting_automorphism_search,
    is_generating_pair,
    is_isomorphic,
    metacyclic,
    multiplicative_order,
    parse_group,
    semidirect_inverting_criterion,
    z2_x_d4,
)


def test_metacyclic_orders():
    assert metacyclic(3, 4)[0].order == 320
    assert metacyclic(3, 5)[0].order == 1210
    assert metacyclic(5, 4)[0].order == 2496


def test_metacyclic_relations():
    G, a, c = metacyclic(3, 4)
    assert G.power(a, 4) == G.identity
    assert G.power(c, 80) == G.identity
    assert G.mul(G.mul(a, c), G.inverse(a)) == G.power(c, 3)
    assert element_order(G, c) == 80
    assert element_order(G, G.identity) == 1
    assert element_order(G, G.inverse(G.mul(a, c))) == 8


@pytest.mark.parametrize("r, m", [(3, 4), (3, 5), (4, 4), (4, 5), (5, 4)])
def test_metacyclic_b_has_period_n(r, m):
    G, a, c = metacyclic(r, m)
    b = G.inverse(G.mul(a, c))
    assert element_order(G, b) == (r - 1) * m


def test_metacyclic_params_rejected():
    with pytest.raises(ValueError):
        metacyclic(2, 4)
    with pytest.raises(ValueError):
        metacyclic(3, 3)


def test_multiplicative_order():
    assert multiplicative_order(3, 80) == 4
    assert multiplicative_order(2, 7) == 3


def test_generating_pairs():
    G, a, c = metacyclic(3, 4)
    assert is_generating_pair(G, a, c)
    Z6 = cyclic(6)
    g = Z6.generators["g"]
    assert is_generating_pair(Z6, Z6.power(g, 2), Z6.power(g, 3))
    Z4 = cyclic(4)
    g2 = Z4.power(Z4.generators["g"], 2)
    assert not is_generating_pair(Z4, g2, g2)


def test_metacyclic_not_real():
    G, a, c = metacyclic(3, 4)
    assert not inverting_automorphism_exists(G, a, c)
    assert not inverting_automorphism_search(G, a, c)


@pytest.mark.parametrize("r, m, expected", [(3, 4, False), (4, 4, False), (5, 5, False)])
def test_semidirect_criterion(r, m, expected):
    assert semidirect_inverting_criterion(MetacyclicParams(r, m)) is expected


@pytest.mark.parametrize("q", [3, 4, 5, 6])
def test_dihedral_inverting(q):
    D = dihedral(q)
    r, s = D.generators["r"], D.generators["s"]
    assert inverting_automorphism_exists(D, s, r)


def test_inverting_requires_generation():
    Z4 = cyclic(4)
    g2 = Z4.power(Z4.generators["g"], 2)
    with pytest.raises(GroupError):
        inverting_automorphism_exists(Z4, g2, g2)


@given(st.lists(st.integers(2, 6), min_size=1, max_size=2), st.data())
def test_abelian_always_inverting(factors, data):
    G = abelian(factors)
    a = data.draw(st.sampled_from(list(G.elements())))
    c = data.draw(st.sampled_from(list(G.elements())))
    if is_generating_pair(G, a, c):
        assert inverting_automorphism_exists(G, a, c)


# -- constructors ------------------------------------------------------------


def test_constructor_orders():
    assert dihedral(4).order == 8
    assert direct_product(cyclic(2), dihedral(4)).order == 16
    assert z2_x_d4().order == 16
    assert d3_x_z3().order == 18
    assert abelian([2, 2, 2]).order == 8


def test_g1_presentation():
    G = group_g1()
    assert G.order == 16
    g, t, sigma = (G.generators[k] for k in ("g", "t", "sigma"))
    e = G.identity
    assert G.power(sigma, 2) == e and G.power(g, 4) == e and G.power(t, 2) == e
    assert G.commutes(t, g) and G.commutes(t, sigma)
    assert G.mul(sigma, g) == G.mul(G.mul(G.inverse(g), t), sigma)
    assert len(G.closure([g, t, sigma])) == 16
    assert not G.is_abelian()


@pytest.mark.parametrize("G", [cyclic(5), abelian([2, 4]), dihedral(5), group_g1(), d3_x_z3()], ids=repr)
def test_tables_are_groups(G):
    T = G.table
    n = G.order
    assert (np.sort(T, axis=1) == np.arange(n)).all()
    for x, y, z in itertools.islice(itertools.product(range(n), repeat=3), 2000):
        assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))


def test_non_group_table_rejected():
    bad = np.array([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    with pytest.raises(GroupError):
        FiniteGroup(3, bad)


def test_isomorphism_tests():
    assert is_isomorphic(z2_x_d4(), direct_product(dihedral(4), cyclic(2)))
    assert not is_isomorphic(group_g1(), z2_x_d4())
    assert not is_isomorphic(abelian([4, 2]), abelian([2, 2, 2]))
    assert is_isomorphic(dihedral(3), direct_product(cyclic(1), dihedral(3)))
    phi = find_isomorphism(cyclic(6), abelian([2, 3]))
    assert phi is not None and len(set(phi)) == 6


# -- expressions ---------------------------------------------------------------


def test_parse_group():
    G, kind = parse_group("metacyclic(3,4)")
    assert (G.order, kind) == (320, "metacyclic")
    assert parse_group("fermat-deck(5)")[0].order == 25
    assert parse_group("dihedral(6)")[0].order == 12
    assert parse_group("abelian([2,4])")[0].order == 8
    assert parse_group("g1")[0].order == 16


@pytest.mark.parametrize("expr", ["metacyclic(3", "nosuch(3)", "cyclic(x)", "dihedral(1,2)"])
def test_parse_group_errors(expr):
    with pytest.raises(GroupParseError):
        parse_group(expr)


def test_words():
    D = dihedral(4)
    assert D.word("r^4") == D.identity
    assert D.word("s*r*s") == D.inverse(D.generators["r"])
    with pytest.raises(GroupParseError):
        D.word("q")
    with pytest.raises(GroupParseError):
        D.word("r^")
