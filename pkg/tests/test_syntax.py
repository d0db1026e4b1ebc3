import random

import pytest
from hypothesis import given

from conftest import ALPHABET, terms
from topkat import syntax
from topkat.decide import Equivalent, equivalent
from topkat.errors import ParseError
from topkat.gen import random_term
from topkat.syntax import (
    Act, Alphabet, Dot, Not, ONE, Plus, Star, TOP, ZERO,
    contains_top, declare_alphabet, parse, render, reverse, scan_identifiers,
)


def test_parse_sequence_with_tests():
    t = parse("p (b + !c)* q", ALPHABET)
    assert t == Dot(Dot(Act("p"), Star(Plus(syntax.Test("b"), Not(syntax.Test("c"))))), Act("q"))


def test_parse_rejects_negated_action():
    with pytest.raises(ParseError):
        parse("!(p)", ALPHABET)
    with pytest.raises(ParseError):
        parse("!p", ALPHABET)
    with pytest.raises(ParseError):
        parse("!(b*)", ALPHABET)
    with pytest.raises(ParseError):
        parse("!T", ALPHABET)


def test_parse_star_unfolding_shape():
    assert parse("1 + p p*", ALPHABET) == Plus(ONE, Dot(Act("p"), Star(Act("p"))))


def test_parse_precedence_and_separators():
    assert parse("p + q p*", ALPHABET) == Plus(Act("p"), Dot(Act("q"), Star(Act("p"))))
    assert parse("p;q", ALPHABET) == parse("p.q", ALPHABET) == parse("p q", ALPHABET)
    assert parse("p q p", ALPHABET) == Dot(Dot(Act("p"), Act("q")), Act("p"))
    assert parse("!b*", ALPHABET) == Star(Not(syntax.Test("b")))
    assert parse("p**", ALPHABET) == Star(Star(Act("p")))


def test_parse_errors_report_positions():
    with pytest.raises(ParseError, match="position"):
        parse("p @ q", ALPHABET)
    with pytest.raises(ParseError, match="undeclared"):
        parse("p r", ALPHABET)
    with pytest.raises(ParseError):
        parse("(p + q", ALPHABET)
    with pytest.raises(ParseError):
        parse("", ALPHABET)
    with pytest.raises(ParseError, match="trailing"):
        parse("p )", ALPHABET)


def test_render_basics():
    assert render(ZERO) == "0"
    assert render(TOP) == "T"
    assert render(Star(Plus(Act("p"), Act("q")))) == "(p + q)*"
    assert render(Dot(Act("p"), Dot(Act("q"), Act("p")))) == "p (q p)"
    assert render(Plus(Act("p"), Plus(Act("q"), Act("p")))) == "p + (q + p)"


@given(terms(allow_top=True))
def test_parse_render_roundtrip(t):
    assert parse(render(t), ALPHABET) == t


def test_contains_top():
    assert contains_top(parse("p T p", ALPHABET))
    assert not contains_top(parse("p b", ALPHABET))
    assert contains_top(TOP)


def test_reverse_flips_sequences():
    assert reverse(Dot(Act("p"), Act("q"))) == Dot(Act("q"), Act("p"))
    assert reverse(Dot(TOP, Act("p"))) == Dot(Act("p"), TOP)
    assert reverse(parse("p q p", ALPHABET)) == parse("p (q p)", ALPHABET)


@given(terms(allow_top=True))
def test_reverse_involution(t):
    assert reverse(reverse(t)) == t
    assert contains_top(reverse(t)) == contains_top(t)


def test_reverse_preserves_equivalence():
    rng = random.Random(7)
    for _ in range(40):
        t1 = random_term(rng, ALPHABET, 3)
        t2 = random_term(rng, ALPHABET, 3)
        direct = isinstance(equivalent(t1, t2, ALPHABET), Equivalent)
        flipped = isinstance(equivalent(reverse(t1), reverse(t2), ALPHABET), Equivalent)
        assert direct == flipped


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(("p",), ("p",))
    with pytest.raises(ValueError):
        Alphabet(("T",), ())
    with pytest.raises(ValueError):
        Alphabet(("p", "p"), ())
    with pytest.raises(ValueError):
        declare_alphabet(["__top__"], [])
    assert declare_alphabet(["p"], ["b"]).sort_of("p") == "action"


def test_scan_identifiers():
    assert scan_identifiers("p (b + !c)* q T p") == ("p", "b", "c", "q")
    assert scan_identifiers("[b&!c] p [b&c]") == ("b", "c", "p")
