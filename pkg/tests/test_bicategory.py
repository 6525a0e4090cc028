import random

import pytest
from hypothesis import given, settings, strategies as st

from grpd.bicategory import (associator, check_coherence, compose,
                             horizontal_compose, identity_two_arrow,
                             is_bijective, make_two_arrow, naturality_squares,
                             pentagon_identity, triangle_identity,
                             unitor_left, unitor_right, vertical_compose)
from grpd.correspondence import classify, identity_correspondence
from grpd.errors import AxiomViolation, EndpointMismatch
from grpd import samples

import oracles


def test_composition_classes_match_union_find(rng):
    for _ in range(15):
        X, Y = samples.random_chain(rng, 2)
        comp = compose(X, Y)
        expected = oracles.composition_classes_bf(X, Y)
        ours = {}
        for pair, cid in comp.class_of.items():
            ours.setdefault(cid, set()).add(pair)
        assert frozenset(frozenset(s) for s in ours.values()) == expected
        assert len(comp.correspondence.carrier) == len(expected)


def test_o2x_self_composition_has_four_classes():
    X = samples.o2x()
    comp = compose(X, X)
    assert len(comp.correspondence.carrier) == 4
    assert classify(comp.correspondence).proper


def test_composition_left_leg_and_right_leg():
    X, Y = samples.random_chain(random.Random(3), 2)
    comp = compose(X, Y)
    Z = comp.correspondence
    assert Z.left == X.left and Z.right == Y.right
    for (x, y), cid in comp.class_of.items():
        assert Z.rmap[cid] == X.rmap[x]
        assert Z.smap[cid] == Y.smap[y]


def test_compose_requires_matching_middle():
    X = samples.o2x()                       # pt <- pt
    Y = samples.ss_z2()                     # z2 <- z2
    with pytest.raises(EndpointMismatch):
        compose(X, Y)


def test_two_arrow_must_be_equivariant():
    X = samples.ss_z2()
    # swapping only one group coordinate breaks right equivariance
    mapping = {x: x for x in X.carrier}
    mapping["(0,e)"] = "(0,a)"
    mapping["(0,a)"] = "(0,e)"
    with pytest.raises(AxiomViolation):
        make_two_arrow(X, X, mapping)


def test_two_arrow_must_preserve_anchors():
    X = samples.exel_pardo()
    mapping = {x: x for x in X.carrier}
    with pytest.raises(AxiomViolation):
        # send a point to one with a different source anchor
        bad = dict(mapping)
        bad["(e1,(e,v))"] = "(e1,(a,v))"
        bad["(e1,(a,v))"] = "(e1,(e,v))"
        make_two_arrow(X, X, bad)


def test_identity_and_vertical_composition():
    X = samples.ss_z2()
    one = identity_two_arrow(X)
    assert vertical_compose(one, one).mapping == one.mapping
    alpha = samples.cell_swap_two_arrow(random.Random(7), samples.free_bimodule(
        samples.z2(), samples.z2(), [("*", "*"), ("*", "*")]))
    two = vertical_compose(alpha, alpha)
    assert all(two.mapping[x] == x for x in two.source.carrier)


def test_unitors_and_associator_bijective_on_fixtures():
    X = samples.o2x()
    Y = samples.ss_z2()
    for Z in (X, Y, samples.exel_pardo()):
        assert is_bijective(unitor_left(Z))
        assert is_bijective(unitor_right(Z))
    assert is_bijective(associator(X, X, X))
    assert is_bijective(associator(Y, Y, Y))


def test_unitor_left_strips_unit_coordinate():
    X = samples.o2x()
    lam = unitor_left(X)
    for cid in lam.source.carrier:
        assert lam.mapping[cid] in set(X.carrier)


def test_triangle_and_pentagon_on_fixture_chain():
    X = samples.ss_z2()
    assert triangle_identity(X, X).passed
    assert pentagon_identity(X, X, X, X).passed


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_coherence_on_random_chains(seed):
    chain = samples.random_chain(random.Random(seed), 4)
    report = check_coherence(*chain)
    assert report.passed, report.failures


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_naturality_squares_on_random_chains(seed):
    rng = random.Random(seed)
    chain = samples.random_chain(rng, 3)
    alphas = [samples.cell_swap_two_arrow(rng, X) for X in chain]
    report = naturality_squares(alphas[0], alphas[1], alphas[2])
    assert report.passed, report.failures


def test_naturality_with_identity_two_arrows():
    X = samples.exel_pardo()
    report = naturality_squares(identity_two_arrow(X), identity_two_arrow(X),
                                identity_two_arrow(X))
    assert report.passed
    assert [name for name, _ in report.checks] == [
        "unitor-left-natural", "unitor-right-natural", "associator-natural"]


def test_horizontal_compose_of_identities_is_identity():
    X, Y = samples.random_chain(random.Random(1), 2)
    hid = horizontal_compose(identity_two_arrow(X), identity_two_arrow(Y))
    assert all(hid.mapping[c] == c for c in hid.source.carrier)


def test_check_coherence_report_shape():
    X = samples.z2_identity()
    report = check_coherence(X, X)
    names = [name for name, _ in report.checks]
    assert "unitor-left-bijective[0]" in names
    assert "triangle[0]" in names
    assert "pentagon" not in names          # needs a chain of four
    assert report.passed


def test_identity_correspondence_is_unit_up_to_unitor():
    G = samples.z2()
    X = samples.ss_z2()
    one = identity_correspondence(G)
    lam = unitor_left(X)
    rho = unitor_right(X)
    assert lam.source.left == X.left and lam.target == X
    assert rho.source.right == X.right and rho.target == X
    assert one.left == G and one.right == G
