import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from grpd.correspondence import classify
from grpd.errors import InfiniteGroup, InputError, UnknownLetter
from grpd.selfsimilar import (act_on_word, automaton_self_similar_action,
                              check_cocycle, faithfulness_report,
                              finite_self_similar_action, free_reduce,
                              parse_group_word, split_letter_word,
                              to_correspondence)
from grpd import samples

import oracles


def test_adding_machine_increments_all_words_up_to_length_10():
    act = samples.adding_machine()
    for n in range(11):
        for bits in itertools.product("01", repeat=n):
            w = "".join(bits)
            assert act_on_word(act, "a", w) == oracles.binary_increment(w)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=-12, max_value=12),
       st.integers(min_value=0, max_value=255),
       st.integers(min_value=1, max_value=8))
def test_adding_machine_powers(k, value, n):
    act = samples.adding_machine()
    word = "".join(str((value >> i) & 1) for i in range(n))
    group_word = ["a"] * k if k >= 0 else ["a^-1"] * (-k)
    assert act_on_word(act, group_word, word) == \
        oracles.binary_increment(word, k)


def test_adding_machine_inverse_cancels():
    act = samples.adding_machine()
    for w in ("", "0", "10", "0110", "11111"):
        assert act_on_word(act, ["a", "a^-1"], w) == w
        assert act_on_word(act, ["a^-1", "a"], w) == w


def test_free_reduce_and_parse():
    assert free_reduce(("a", "a^-1", "b")) == ("b",)
    assert free_reduce(("a", "b", "b^-1", "a")) == ("a", "a")
    assert parse_group_word("a, b^-1") == ("a", "b^-1")
    assert parse_group_word("1") == ()
    assert parse_group_word("") == ()


def test_split_letter_word_formats():
    act = samples.adding_machine()
    assert split_letter_word(act, "0,1,0") == ("0", "1", "0")
    assert split_letter_word(act, "010") == ("0", "1", "0")
    assert split_letter_word(act, ("0", "1")) == ("0", "1")
    assert split_letter_word(act, "") == ()
    with pytest.raises(UnknownLetter):
        split_letter_word(act, "012")


def test_cocycle_report_cross_validated_for_automaton():
    act = samples.adding_machine()
    report = check_cocycle(act, depth=6)
    assert report.ok and report.mode == "cross-validated"
    assert report.depth == 6


def test_cocycle_report_exact_for_table():
    good = samples.z2_table_action(True)
    report = check_cocycle(good)
    assert report.ok and report.mode == "exact" and report.depth is None


def test_carry_over_finite_group_fails_cocycle():
    bad = samples.z2_table_action(False)
    report = check_cocycle(bad)
    assert not report.ok
    h1, h2, x, lhs, rhs = report.witness
    assert (h1, h2, x) == ("a", "a", "0")
    assert lhs != rhs


def test_table_faithfulness_exact_kernel():
    good = samples.z2_table_action(True)
    report = faithfulness_report(good)
    assert report.exhaustive and report.faithful_so_far

    # an action through a quotient: the square of the generator of Z/4
    # swaps nothing, so <a^2> lies in the kernel
    z4 = samples.cyclic(4)
    pi, restrict = {}, {}
    for g in z4.arrows:
        for x in "01":
            swaps = g in ("a", "a3")
            pi[(g, x)] = {"0": "1", "1": "0"}[x] if swaps else x
            restrict[(g, x)] = "e"
    act = finite_self_similar_action(z4, "01", pi, restrict)
    report = faithfulness_report(act)
    assert report.exhaustive and report.trivial == ("a2",)


def test_automaton_faithfulness_finds_torsion():
    """pi_a = swap with constant restriction a generates Z/2: the word a,a
    acts trivially at every depth."""
    act = automaton_self_similar_action(
        "01", ["a"], {("a", "0"): "1", ("a", "1"): "0"},
        {("a", "0"): ("a",), ("a", "1"): ("a",)})
    report = faithfulness_report(act, max_word_len=2, depth=5)
    assert not report.exhaustive
    assert "a,a" in report.trivial


def test_adding_machine_has_no_short_trivial_words():
    act = samples.adding_machine()
    report = faithfulness_report(act, max_word_len=4, depth=6)
    assert report.faithful_so_far


def test_to_correspondence_of_z2_swap():
    act = samples.z2_table_action(True)
    X = to_correspondence(act)
    c = classify(X)
    assert c.proper and not c.tight
    assert len(X.carrier) == 4


def test_to_correspondence_refuses_automata():
    with pytest.raises(InfiniteGroup):
        to_correspondence(samples.adding_machine())


def test_automaton_rejects_malformed_tables():
    with pytest.raises(InputError):
        automaton_self_similar_action(
            "01", ["a"], {("a", "0"): "1", ("a", "1"): "1"},      # not a perm
            {("a", "0"): (), ("a", "1"): ("a",)})
    with pytest.raises(InputError):
        automaton_self_similar_action(
            "01", ["a"], {("a", "0"): "1", ("a", "1"): "0"},
            {("a", "0"): ()})                                     # missing
    with pytest.raises(InputError):
        automaton_self_similar_action(
            "01", ["a"], {("a", "0"): "1", ("a", "1"): "0"},
            {("a", "0"): ("b",), ("a", "1"): ()})                 # unknown gen


def test_table_mode_acts_like_its_automaton_presentation():
    """The swap action with constant cocycle evaluated through the group
    table agrees with the corresponding automaton on every short word."""
    table = samples.z2_table_action(True)
    autom = automaton_self_similar_action(
        "01", ["a"], {("a", "0"): "1", ("a", "1"): "0"},
        {("a", "0"): ("a",), ("a", "1"): ("a",)})
    for n in range(6):
        for bits in itertools.product("01", repeat=n):
            w = "".join(bits)
            assert act_on_word(table, "a", w) == act_on_word(autom, "a", w)
