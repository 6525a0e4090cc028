import itertools
import random

import pytest

from grpd.category import check_conduche, cuntz_pimsner_presentation
from grpd.diagrams import validate_diagram
from grpd.errors import (CompatibilityViolation, FactorizationNotBijective,
                         HexagonViolation, InputError)
from grpd.kgraph import (canonical_words, diagram_from_kgraph, kgraph_fibration,
                         make_kgraph, normalize_word, path_name, word_degree)
from grpd import samples


def brute_force_normal_forms(kg, word):
    """All words reachable from ``word`` by adjacent factorisation swaps, by
    breadth-first search; the normal form must be the unique reachable word
    with colors in ascending priority order."""
    seen = {tuple(word)}
    frontier = [tuple(word)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(len(w) - 1):
                a, b = w[i], w[i + 1]
                for key, (c2, b2) in kg.factor.items():
                    if key == (a, b):
                        moved = w[:i] + (c2, b2) + w[i + 2:]
                    elif (c2, b2) == (a, b):
                        moved = w[:i] + key + w[i + 2:]
                    else:
                        continue
                    if moved not in seen:
                        seen.add(moved)
                        nxt.append(moved)
        frontier = nxt
    priority = {c: i for i, c in enumerate(kg.colors)}
    ascending = [w for w in seen
                 if all(priority[kg.color_of[w[i]]]
                        <= priority[kg.color_of[w[i + 1]]]
                        for i in range(len(w) - 1))]
    return seen, ascending


@pytest.mark.parametrize("theta", ["id", "swap"])
def test_normalize_word_agrees_with_exhaustive_rewriting(theta):
    kg = samples.kg21(theta)
    words = [w for bucket in canonical_words(kg, (2, 1)).values()
             for w in bucket]
    for w in words:
        for perm in set(itertools.permutations(w)):
            # only consider composable reorderings
            try:
                normal = normalize_word(kg, list(perm))
            except InputError:
                continue
            reachable, ascending = brute_force_normal_forms(kg, perm)
            assert len(ascending) == 1
            assert normal == ascending[0]
            assert normal in reachable


def test_kg21_swap_twists_factorisation():
    kg = samples.kg21("swap")
    assert kg.factor[("b1", "c1")] == ("c1", "b2")
    assert normalize_word(kg, ["c1", "b1"]) == ("b2", "c1")


def test_word_degree_and_canonical_counts():
    kg = samples.o2x_kgraph()
    buckets = canonical_words(kg, (3,))
    for n in range(4):
        assert len(buckets[(n,)]) == 2 ** n
        assert all(word_degree(kg, w) == (n,) for w in buckets[(n,)])
    kg21 = samples.kg21("id")
    buckets21 = canonical_words(kg21, (2, 1))
    assert len(buckets21) == 6          # degrees (0..2)x(0..1)
    assert sum(len(b) for b in buckets21.values()) == 1 + 2 + 4 + 1 + 2 + 4


def test_path_names():
    assert path_name((), "v") == "id_v"
    assert path_name(("e1", "e2"), "v") == "e1.e2"


def test_factorisation_must_be_bijective():
    kg = samples.kg21("id")
    edges = {c: list(kg.edges[c]) for c in kg.colors}
    factor = {("b1", "c1"): ("c1", "b1"), ("b2", "c1"): ("c1", "b1")}
    with pytest.raises(FactorizationNotBijective):
        make_kgraph(list(kg.vertices), edges,
                    dict(kg.redge), dict(kg.sedge), factor)


def test_hexagon_counterexample_rejected():
    with pytest.raises(HexagonViolation) as err:
        samples.kgraph3(False)
    assert err.value.witness == ("x1", "y1", "z1")
    samples.kgraph3(True)               # commuting squares pass


def test_rank3_admits_conduche_fibration():
    kg = samples.kgraph3(True)
    F = kgraph_fibration(kg, (1, 1, 1))
    ok, witness = check_conduche(F)
    assert ok, witness


@pytest.mark.parametrize("max_degree", [(1,), (2,), (3,)])
def test_o2x_fibration_is_conduche(max_degree):
    F = kgraph_fibration(samples.o2x_kgraph(), max_degree)
    ok, witness = check_conduche(F)
    assert ok, witness


@pytest.mark.parametrize("theta", ["id", "swap"])
def test_kg21_fibration_is_conduche(theta):
    F = kgraph_fibration(samples.kg21(theta), (2, 1))
    ok, witness = check_conduche(F)
    assert ok, witness


def test_o2x_presentation_matches_golden_file(fixtures_dir):
    F = kgraph_fibration(samples.o2x_kgraph(), (1,))
    text = cuntz_pimsner_presentation(F).render()
    golden = (fixtures_dir / "golden" / "o2x_presentation.txt").read_text()
    assert text == golden


def test_kg21_swap_presentation_shows_twist():
    F = kgraph_fibration(samples.kg21("swap"), (1, 1))
    text = cuntz_pimsner_presentation(F).render()
    assert "S(b1.c1) = S(c1) S(b2)" in text
    assert "S(b2.c1) = S(c1) S(b1)" in text


@pytest.mark.parametrize("build,arg", [
    (lambda: diagram_from_kgraph(samples.o2x_kgraph(), (3,)), "plain"),
    (lambda: diagram_from_kgraph(samples.kg21("swap"), (2, 1)), "kg21"),
    (lambda: diagram_from_kgraph(samples.o2x_selfsimilar_kgraph(), (2,)),
     "group"),
], ids=["o2x", "kg21-swap", "o2x-z2"])
def test_diagrams_from_kgraphs_validate(build, arg):
    d = build()
    stats = validate_diagram(d)
    assert stats["squares"] > 0


def test_self_similar_kgraph_needs_consistent_group_block():
    kg = samples.o2x_selfsimilar_kgraph()
    g = kg.group
    # break the action/cocycle compatibility: phi(a, e1) = e instead of a
    from grpd.errors import CocycleViolation
    bad_phi = dict(g.phi)
    bad_phi[("a", "e1")] = "e"
    with pytest.raises((CompatibilityViolation, CocycleViolation)):
        make_kgraph(list(kg.vertices),
                    {c: list(kg.edges[c]) for c in kg.colors},
                    dict(kg.redge), dict(kg.sedge), dict(kg.factor),
                    group=samples.KGraphGroup(g.group, dict(g.act_v),
                                              dict(g.act_e), bad_phi))


def test_group_diagram_sigma_uses_path_cocycle():
    d = diagram_from_kgraph(samples.o2x_selfsimilar_kgraph(), (2,))
    sig = d.sigma[(("p",), ("p",))]
    # acting group element twists the second path before concatenation
    src = sig.source
    twisted = [c for c in src.carrier if "(a" in c or ",a)" in c]
    assert twisted
    stats = validate_diagram(d)
    assert stats["sigmas"] == len(d.sigma)
