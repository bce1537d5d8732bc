import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hyperelliptic_real_part
from realstruct.hyperelliptic import (
    ALLOWED_TOPOLOGIES,
    CONJ_I,
    DEFAULT_SIGMA,
    FAMILY_ORDER,
    J_I,
    J_RHO,
    Circle,
    EllipticAffineMap,
    HyperellipticError,
    NotFree,
    NotNormalized,
    ProductMap,
    RealSurfaceTopology,
    _classify_component,
    _move,
    antiholomorphic_matrices,
    attach_real_structure,
    bdf_family,
    default_real_action,
    extended_group,
    fixed_circles,
    involutive_lift_classes,
    involutive_lifts,
    product_antiholo,
    real_part,
    real_part_all_lifts,
    real_part_topology,
    sweep_family,
    validate_topology,
)
from realstruct.linalg import IntMatrix
from realstruct.torus import RealTorusStructure
from realstruct.torus import real_part as torus_real_part

H = Fraction(1, 2)
Q = Fraction(1, 4)


def anti(rows, t=(0, 0)):
    return EllipticAffineMap(IntMatrix.from_rows(rows), tuple(Fraction(x) for x in t), True)


# -- fixed circles -------------------------------------------------------------


def test_fixed_circles_diagonal():
    circles = fixed_circles(anti([[1, 0], [0, -1]]))
    assert [c.direction for c in circles] == [(1, 0), (1, 0)]
    assert sorted(c.base[1] for c in circles) == [0, H]


def test_fixed_circles_swap():
    (c,) = fixed_circles(anti([[0, 1], [1, 0]]))
    assert c.direction == (1, 1)
    assert c.contains((0, 0))


def test_fixed_circles_klein_bottle():
    assert fixed_circles(anti([[1, 0], [0, -1]], (H, 0))) == []


def test_fixed_circles_rejects_bad_input():
    with pytest.raises(HyperellipticError):
        fixed_circles(EllipticAffineMap(IntMatrix.diag([1, -1]), (0, 0), False))
    with pytest.raises(HyperellipticError):
        fixed_circles(anti([[1, 0], [0, -1]], (Fraction(1, 3), 0)))


antiholo_involutions = st.tuples(
    st.sampled_from(antiholomorphic_matrices("i") + antiholomorphic_matrices("rho")),
    st.integers(0, 11),
    st.integers(0, 11),
)


@given(antiholo_involutions)
def test_circle_count_matches_torus_module(args):
    M, i, j = args
    f = EllipticAffineMap(M, (Fraction(i, 12), Fraction(j, 12)), True)
    if not f.compose(f).is_identity:
        return
    circles = fixed_circles(f)
    assert len(circles) == torus_real_part(RealTorusStructure(1, M, f.t)).component_count
    for c in circles:
        assert f(c.base) == c.base or all((a - b).denominator == 1 for a, b in zip(f(c.base), c.base))
        assert tuple(M @ c.direction) == c.direction
        assert c.image(f) == c


def test_circle_through_is_canonical():
    assert Circle.through((Fraction(1, 3), 0), (-2, 0)) == Circle.through((Fraction(4, 3), 5), (1, 0))


# -- families ----------------------------------------------------------------------


@pytest.mark.parametrize("k", range(1, 8))
def test_family_orders_and_freeness(k):
    action = bdf_family(k)
    assert action.order == FAMILY_ORDER[k]
    for g in action.elements:
        assert g.on_E.is_translation
        assert g.on_F.is_compatible(action.J_F)
    assert all(not g.has_fixed_point() for g in action.elements[1:])


def test_family_one():
    action = bdf_family(1, [(H, 0)])
    assert action.order == 2
    ((_, g),) = action.deck
    assert g.on_F.M == IntMatrix.diag([-1, -1])


def test_family_four_generators():
    deck = dict(bdf_family(4).deck)
    assert deck["g"].on_F.M == J_I
    assert deck["t"].on_F.t == (H, H)


def test_family_three_rejects_wrong_order():
    with pytest.raises(HyperellipticError):
        bdf_family(3, [(H, 0)])


def test_non_free_action_rejected():
    # eta_g and eta_t both (1/2, 0): g t acts on E trivially and on F with fixed points
    with pytest.raises(NotFree):
        bdf_family(2, [(H, 0), (H, 0)])


def test_bad_family():
    with pytest.raises(HyperellipticError):
        bdf_family(8)


# -- real structures --------------------------------------------------------------


def test_attach_requires_normalizer():
    action = bdf_family(3)
    # x -> conj(x) on F with E-part fixing eta = (1/4, 0) fails: needs inversion on E
    bad = product_antiholo(CONJ_I, (0, 0), CONJ_I, (0, 0))
    with pytest.raises(NotNormalized):
        attach_real_structure(action, bad)


def test_attach_requires_antiholomorphic():
    action = bdf_family(1)
    holo = ProductMap(EllipticAffineMap.linear(IntMatrix.identity(2)), EllipticAffineMap.linear(IntMatrix.identity(2)))
    with pytest.raises(HyperellipticError):
        attach_real_structure(action, holo)


def test_family_one_extended_group():
    ext = extended_group(default_real_action(1))
    assert ext.order == 4
    assert ext.isomorphism_type == "Z/2 x Z/2"
    assert ext.acts_trivially


def test_family_three_dihedral():
    ext = extended_group(default_real_action(3))
    assert ext.acts_by_inversion
    assert (ext.isomorphism_type, ext.lemma_case) == ("D4", "1")


def test_g1_relations():
    action = default_real_action(4)
    sigma = action.sigma_lift
    deck = dict(action.deck)
    g, t = deck["g"], deck["t"]
    assert sigma.on_F.t == (H, 0)
    assert sigma.square().is_identity
    assert sigma.compose(g) == g.inverse().compose(t).compose(sigma)
    assert g.compose(t) == t.compose(g)
    assert extended_group(action).isomorphism_type == "G1"


@pytest.mark.parametrize("k, case", [(1, "1"), (2, "2.1"), (3, "1"), (4, "3"), (5, "1"), (6, "4"), (7, "1")])
def test_default_lemma_cases(k, case):
    assert extended_group(default_real_action(k)).lemma_case == case


# -- lifts and real parts ------------------------------------------------------------


def test_family_one_lifts():
    action = default_real_action(1)
    classes = involutive_lift_classes(action)
    assert len(classes) == 2
    empty = [s for s in involutive_lifts(action) if not fixed_circles(s.on_E) or not fixed_circles(s.on_F)]
    assert len(empty) == 1


def test_no_involutive_lift_means_empty():
    action = bdf_family(2, [(0, H), (H, 0)], (H, H))
    sigma = product_antiholo(CONJ_I, (Q, 0), [[0, -1], [-1, 0]], (0, H))
    real = attach_real_structure(action, sigma)
    assert involutive_lifts(real) == []
    assert real_part_topology(real) == RealSurfaceTopology(0, 0)
    assert hyperelliptic_real_part([g for _, g in action.deck], sigma) == (0, 0)


DEFAULT_TOPOLOGY = {1: (0, 4), 2: (0, 2), 3: (3, 0), 4: (0, 0), 5: (2, 0), 6: (2, 0), 7: (2, 0)}


@pytest.mark.parametrize("k", range(1, 8))
def test_default_topology_matches_oracle(k):
    action = default_real_action(k)
    topo = real_part_topology(action)
    assert (topo.tori, topo.klein) == DEFAULT_TOPOLOGY[k]
    assert validate_topology(topo)
    N = 8 if k == 1 else 24
    assert hyperelliptic_real_part([g for _, g in action.deck], action.sigma_lift, N) == DEFAULT_TOPOLOGY[k]


@pytest.mark.parametrize("k", range(1, 8))
def test_conjugacy_choice_does_not_matter(k):
    action = default_real_action(k)
    deck = {frozenset(c) for c in involutive_lift_classes(action, "deck")}
    ext = {frozenset(c) for c in involutive_lift_classes(action, "extended")}
    assert deck == ext
    assert real_part(action, "deck").topology == real_part(action, "extended").topology
    assert real_part_all_lifts(action) == real_part_topology(action)


@pytest.mark.parametrize("k", range(1, 8))
def test_lifts_stable_under_deck_change(k):
    action = default_real_action(k)
    reference = {frozenset(c) for c in involutive_lift_classes(action)}
    for g in action.elements:
        moved = attach_real_structure(action, g.compose(action.sigma_lift))
        assert {frozenset(c) for c in involutive_lift_classes(moved)} == reference
        assert real_part_topology(moved) == real_part_topology(action)


def _orbit_classifications(action):
    out = []
    for s in involutive_lifts(action):
        comps = [(a, b) for a in fixed_circles(s.on_E) for b in fixed_circles(s.on_F)]
        for comp in comps:
            stab = [g for g in action.elements if _move(g, comp) == comp]
            orbit = {_move(g, comp) for g in action.elements}
            out.append((frozenset(orbit), _classify_component(comp, stab)))
    return out


@pytest.mark.parametrize("k", range(1, 8))
def test_klein_decision_constant_on_orbits(k):
    kinds = {}
    for orbit, kind in _orbit_classifications(default_real_action(k)):
        assert kinds.setdefault(orbit, kind) == kind


def _sampled_records(k, denominator, every):
    return list(itertools.islice(sweep_family(k, denominator), 0, None, every))


@pytest.mark.parametrize("k, every", [(1, 3), (2, 20), (3, 5), (4, 15), (5, 4), (6, 20), (7, 6)])
def test_sweep_sample_matches_oracle(k, every):
    for rec in _sampled_records(k, 6, every):
        action = attach_real_structure(bdf_family(k, rec.eta, rec.epsilon), rec.sigma)
        expected = hyperelliptic_real_part([g for _, g in action.deck], rec.sigma)
        assert (rec.topology.tori, rec.topology.klein) == expected
        assert real_part_all_lifts(action) == rec.topology


def test_validate_topology_examples():
    assert validate_topology(RealSurfaceTopology(4, 0))
    assert validate_topology(RealSurfaceTopology(0, 4))
    assert validate_topology(RealSurfaceTopology(0, 0))
    assert validate_topology(RealSurfaceTopology(1, 2))
    assert not validate_topology(RealSurfaceTopology(2, 1))
    assert not validate_topology(RealSurfaceTopology(5, 0))
    assert len(ALLOWED_TOPOLOGIES) == 11


def test_antiholomorphic_matrices():
    assert len(antiholomorphic_matrices("i")) == 4
    assert len(antiholomorphic_matrices("rho")) == 6
    for M in antiholomorphic_matrices("rho"):
        # M J = conj(J) M with conj(rho) = -1 - rho
        assert M @ J_RHO == (-IntMatrix.identity(2) - J_RHO) @ M


@settings(max_examples=20)
@given(st.sampled_from(sorted(DEFAULT_SIGMA)), st.data())
def test_topology_invariant_under_E_translation_conjugation(k, data):
    action = default_real_action(k)
    i, j = data.draw(st.integers(0, 11)), data.draw(st.integers(0, 11))
    shift = EllipticAffineMap.translation((Fraction(i, 12), Fraction(j, 12)))
    T = ProductMap(shift, EllipticAffineMap.linear(IntMatrix.identity(2)))
    moved = attach_real_structure(action, action.sigma_lift.conjugate(T))
    assert real_part_topology(moved) == real_part_topology(action)
