import random

import pytest

from conftest import ALPHABET
from topkat.decide import Equivalent, Witness, equivalent, leq, member
from topkat.gen import random_term
from topkat.reduction import (
    TOP_ACTION, ExtendedAlphabet, embed_back, prune_alphabet, reduce,
    topkat_equivalent, topkat_leq,
)
from topkat.syntax import Act, Alphabet, Dot, TOP, parse, render


AL_P = Alphabet(("p",), ())


def test_reduce_examples():
    assert render(reduce(parse("T", AL_P), AL_P)) == "(p + __top__)*"
    assert reduce(parse("p b", ALPHABET), ALPHABET) == parse("p b", ALPHABET)
    assert render(reduce(parse("T p T", AL_P), AL_P)) \
        == "(p + __top__)* p (p + __top__)*"


def test_reduce_output_is_top_free():
    rng = random.Random(31)
    from topkat.syntax import contains_top
    for _ in range(50):
        t = random_term(rng, ALPHABET, 4, allow_top=True)
        assert not contains_top(reduce(t, ALPHABET))


def test_embed_back_examples():
    ext = ExtendedAlphabet(AL_P)
    assert embed_back(Act(TOP_ACTION)) == TOP
    assert embed_back(parse("p", AL_P)) == parse("p", AL_P)
    assert embed_back(ext.sum_star()) == parse("(p + T)*", AL_P)


def test_round_trip_is_topkat_equivalent():
    rng = random.Random(37)
    for _ in range(100):
        t = random_term(rng, ALPHABET, 4, allow_top=True)
        back = embed_back(reduce(t, ALPHABET))
        assert isinstance(topkat_equivalent(back, t, ALPHABET), Equivalent)


def test_top_is_largest():
    ext = ExtendedAlphabet(ALPHABET)
    top_reduct = reduce(TOP, ALPHABET)
    rng = random.Random(41)
    for _ in range(50):
        t = random_term(rng, ext.alphabet, 4)
        assert isinstance(leq(t, top_reduct, ext.alphabet), Equivalent)


def test_topkat_equivalent_same_reduct():
    t = embed_back(reduce(parse("T", AL_P), AL_P))
    assert isinstance(topkat_equivalent(parse("T", AL_P), t, AL_P), Equivalent)


def test_topkat_leq_examples():
    assert isinstance(topkat_leq(parse("p", AL_P), parse("T", AL_P), AL_P), Equivalent)
    assert isinstance(
        topkat_leq(parse("T p", ALPHABET), parse("T (p + q)", ALPHABET), ALPHABET),
        Equivalent)
    assert isinstance(topkat_leq(parse("p", AL_P), parse("p T p", AL_P), AL_P), Witness)


def test_incompleteness_instance():
    # p T p T >= p T is not provable, while the converse direction is
    assert isinstance(topkat_leq(parse("p T", AL_P), parse("p T p T", AL_P), AL_P),
                      Witness)
    assert isinstance(topkat_leq(parse("p T p T", AL_P), parse("p T", AL_P), AL_P),
                      Equivalent)


def test_topkat_monotone_in_bounded_language():
    # cross-check T p <= T (p + q) on bounded languages over the extended alphabet
    pruned = prune_alphabet(ALPHABET, parse("T p", ALPHABET), parse("T (p + q)", ALPHABET))
    ext = ExtendedAlphabet(pruned)
    from topkat.semantics import lang_bounded
    r1 = reduce(parse("T p", ALPHABET), pruned)
    r2 = reduce(parse("T (p + q)", ALPHABET), pruned)
    for n in range(3):
        assert lang_bounded(r1, ext.alphabet, n) <= lang_bounded(r2, ext.alphabet, n)


def test_conservative_over_top_free_terms():
    rng = random.Random(43)
    for _ in range(60):
        t1 = random_term(rng, ALPHABET, 3)
        t2 = random_term(rng, ALPHABET, 3)
        plain = equivalent(t1, t2, ALPHABET)
        lifted = topkat_equivalent(t1, t2, ALPHABET)
        assert isinstance(plain, Equivalent) == isinstance(lifted, Equivalent)


def test_pruning_does_not_change_verdicts():
    wide = Alphabet(("p", "q", "r"), ("b", "c", "d"))
    rng = random.Random(47)
    narrow_terms = Alphabet(("p",), ("b",))
    for _ in range(40):
        t1 = random_term(rng, narrow_terms, 3, allow_top=True)
        t2 = random_term(rng, narrow_terms, 3, allow_top=True)
        assert isinstance(topkat_equivalent(t1, t2, wide), Equivalent) \
            == isinstance(topkat_equivalent(t1, t2, narrow_terms), Equivalent)


def test_witness_verifies_on_reducts():
    v = topkat_leq(parse("T", AL_P), parse("T p", AL_P), AL_P)
    assert isinstance(v, Witness)
    pruned = prune_alphabet(AL_P, parse("T", AL_P), parse("T p", AL_P))
    assert member(v.string, reduce(parse("T", AL_P), pruned))
    assert not member(v.string, reduce(Dot(TOP, parse("p", AL_P)), pruned))


def test_extended_alphabet_guards_reserved_name():
    with pytest.raises(ValueError):
        ExtendedAlphabet(Alphabet((TOP_ACTION,), ()))
    ext = ExtendedAlphabet(AL_P)
    assert ext.alphabet.actions == ("p", TOP_ACTION)


def test_reduce_with_no_declared_actions():
    empty = Alphabet((), ())
    assert render(reduce(parse("T", empty), empty)) == "__top__*"
    assert isinstance(topkat_equivalent(parse("T T", empty), parse("T", empty), empty),
                      Equivalent)
