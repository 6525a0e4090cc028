import random

import pytest

from grpd.errors import AxiomViolation, InputError
from grpd.groupoid import (disjoint_union, group_as_groupoid, group_identity,
                           is_slice, make_groupoid, slice_product, slice_star,
                           space_as_groupoid, transformation_groupoid,
                           unit_slice)
from grpd import samples


def test_space_groupoid_is_all_units():
    G = samples.space(["p", "q", "r"])
    assert set(G.objects) == {"p", "q", "r"}
    assert set(G.arrows) == set(G.unit.values())
    for g in G.arrows:
        assert G.inv[g] == g
        assert G.comp[(g, g)] == g


def test_cyclic_group_tables():
    G = samples.cyclic(4)
    e = group_identity(G)
    assert len(G.arrows) == 4
    # every element has order dividing 4
    for g in G.arrows:
        power, order = g, 1
        while power != e:
            power = G.comp[(power, g)]
            order += 1
        assert 4 % order == 0


def test_pair_groupoid_composition():
    G = samples.pair(3)
    assert len(G.arrows) == 9
    assert G.comp[("(1,2)", "(2,3)")] == "(1,3)"
    assert G.inv["(1,3)"] == "(3,1)"
    assert G.src["(1,3)"] == "3" and G.dst["(1,3)"] == "1"


def test_transformation_groupoid_swap():
    G = samples.swap_groupoid()
    assert set(G.objects) == {"1", "2"}
    assert len(G.arrows) == 4
    nonunits = [g for g in G.arrows if g not in set(G.unit.values())]
    assert len(nonunits) == 2
    for g in nonunits:
        assert G.src[g] != G.dst[g]
        assert G.inv[g] in nonunits and G.inv[g] != g


def test_transformation_groupoid_rejects_non_action():
    table = {("e", "e"): "e", ("e", "a"): "a",
             ("a", "e"): "a", ("a", "a"): "e"}
    group = group_as_groupoid(table)
    broken = {("e", "1"): "1", ("e", "2"): "2",
              ("a", "1"): "1", ("a", "2"): "1"}
    with pytest.raises((AxiomViolation, InputError)):
        transformation_groupoid(group, broken, ["1", "2"])


def test_disjoint_union_sizes_and_isolation():
    G = samples.z2()
    H = samples.pair(2)
    U = disjoint_union(G, H)
    assert len(U.objects) == len(G.objects) + len(H.objects)
    assert len(U.arrows) == len(G.arrows) + len(H.arrows)
    for (g, h) in U.comp:
        same_side = (g in set(G.arrows)) == (h in set(G.arrows))
        assert same_side


def test_disjoint_union_rejects_collisions():
    G = samples.z2()
    with pytest.raises(InputError):
        disjoint_union(G, G)


@pytest.mark.parametrize("corrupt", ["inv", "comp", "unit"])
def test_make_groupoid_rejects_corrupted_tables(corrupt):
    G = samples.z3()
    objects, arrows = list(G.objects), list(G.arrows)
    src, dst = dict(G.src), dict(G.dst)
    unit, inv, comp = dict(G.unit), dict(G.inv), dict(G.comp)
    if corrupt == "inv":
        inv["a"] = "a"                       # a^-1 should be a2
    elif corrupt == "comp":
        comp[("a", "a")] = "a"               # a.a should be a2
    else:
        unit["*"] = "a"
    with pytest.raises(AxiomViolation):
        make_groupoid(objects, arrows, src, dst, unit, inv, comp)


def test_make_groupoid_requires_total_composition():
    G = samples.z2()
    comp = dict(G.comp)
    del comp[("a", "a")]
    with pytest.raises((AxiomViolation, InputError)):
        make_groupoid(list(G.objects), list(G.arrows), dict(G.src),
                      dict(G.dst), dict(G.unit), dict(G.inv), comp)


def test_random_groupoids_validate(rng):
    for _ in range(25):
        G = samples.random_groupoid(rng)
        # reconstructing through make_groupoid re-runs every axiom check
        assert make_groupoid(list(G.objects), list(G.arrows), dict(G.src),
                             dict(G.dst), dict(G.unit), dict(G.inv),
                             dict(G.comp)) == G


def test_groupoid_inverse_laws_hold_on_samples():
    for G in (samples.z2(), samples.z3(), samples.pair(3),
              samples.swap_groupoid(), samples.mixed6()):
        for g in G.arrows:
            assert G.comp[(g, G.inv[g])] == G.unit[G.dst[g]]
            assert G.comp[(G.inv[g], g)] == G.unit[G.src[g]]


# -- slices --------------------------------------------------------------------


def test_unit_slice_and_products():
    G = samples.z2()
    U = unit_slice(G)
    assert U == frozenset(G.unit.values())
    assert slice_product(G, U, U) == U
    assert slice_star(G, U) == U


def test_slices_in_pair_groupoid():
    G = samples.pair(2)
    V = frozenset({"(1,2)"})
    W = frozenset({"(2,1)"})
    assert is_slice(G, V)
    assert slice_star(G, V) == W
    assert slice_product(G, V, W) == frozenset({"(1,1)"})
    # two arrows with the same source are not a slice
    assert not is_slice(G, frozenset({"(1,2)", "(2,2)"}))


def test_slice_product_of_slices_is_slice():
    G = samples.mixed6()
    singletons = [frozenset({g}) for g in G.arrows]
    for V in singletons:
        for W in singletons:
            VW = slice_product(G, V, W)
            assert is_slice(G, VW)
