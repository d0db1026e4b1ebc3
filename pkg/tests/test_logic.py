import random

import pytest

from topkat.decide import Equivalent, member
from topkat.domain import Provable, RelCountermodel
from topkat.errors import ParseError, SortError, TopNotAllowedError
from topkat.gen import random_term, random_test_term
from topkat.logic import (
    EncodedEquation, EncodedInequality, Triple, check_rule_instance, check_triple,
    encode, parse_triple_file, parse_triple_line, rule_instance,
)
from topkat.relmodel import SearchBudget, evaluate, falsify_implication, search_countermodel
from topkat.syntax import Alphabet, Dot, Not, TOP, parse


AL_PB = Alphabet(("p",), ("b", "c"))
EXHAUSTIVE = SearchBudget(exhaustive=True)


def triple(kind, pre, prog, post, alphabet=AL_PB):
    return Triple(kind, parse(pre, alphabet), parse(prog, alphabet), parse(post, alphabet))


def test_triple_validation():
    with pytest.raises(SortError):
        triple("hoare", "p", "p", "b")
    with pytest.raises(TopNotAllowedError):
        triple("incorrectness", "b", "p T", "c")
    with pytest.raises(ValueError):
        triple("partial", "b", "p", "c")


def test_encode_shapes():
    tr = triple("hoare", "b", "p", "c")
    enc = encode(tr)
    assert enc == EncodedEquation(parse("b p !c", AL_PB), parse("0", AL_PB))
    tr = triple("incorrectness", "b", "p", "c")
    enc = encode(tr)
    assert isinstance(enc, EncodedInequality)
    assert enc.smaller == Dot(TOP, parse("c", AL_PB))
    assert enc.larger == Dot(TOP, parse("b p", AL_PB))
    printed = encode(tr, direction="as-printed")
    assert printed.smaller == Dot(TOP, parse("b p", AL_PB))
    assert printed.larger == Dot(TOP, parse("c", AL_PB))


def test_check_triple_hoare():
    assert isinstance(check_triple(triple("hoare", "b", "p", "1"), AL_PB), Equivalent)
    assert isinstance(check_triple(triple("hoare", "b", "b p c", "c"), AL_PB), Equivalent)
    refuted = check_triple(triple("hoare", "b", "p", "c"), AL_PB)
    assert not isinstance(refuted, Equivalent)
    assert member(refuted.string, parse("b p !c", AL_PB))


def test_check_triple_incorrectness():
    assert isinstance(check_triple(triple("incorrectness", "1", "p", "0"), AL_PB),
                      Provable)
    assert isinstance(check_triple(triple("incorrectness", "b", "b p", "0"), AL_PB),
                      Provable)
    refuted = check_triple(triple("incorrectness", "1", "p", "1"), AL_PB)
    assert isinstance(refuted, RelCountermodel)
    assert refuted.witness.num_actions == 0  # an atom outside the codomain


def test_check_triple_as_printed_direction_differs():
    tr = triple("incorrectness", "1", "p", "1")
    under = check_triple(tr, AL_PB)
    printed = check_triple(tr, AL_PB, direction="as-printed")
    assert isinstance(under, RelCountermodel)
    assert isinstance(printed, Provable)  # cod(1 p) <= cod(1) holds trivially


def test_incorrectness_verdicts_match_relational_search_at_n2():
    rng = random.Random(73)
    checked_refuted = 0
    for _ in range(200):
        tr = Triple("incorrectness",
                    random_test_term(rng, AL_PB, 2),
                    random_term(rng, AL_PB, 2),
                    random_test_term(rng, AL_PB, 2))
        verdict = check_triple(tr, AL_PB)
        prog = Dot(tr.pre, tr.prog)
        if isinstance(verdict, Provable):
            assert search_countermodel("cod_geq", prog, tr.post, AL_PB,
                                       2, EXHAUSTIVE) is None
        else:
            checked_refuted += 1
            idx = verdict.violating_index
            assert idx in evaluate(tr.post, verdict.interp).cod()
            assert idx not in evaluate(prog, verdict.interp).cod()
    assert checked_refuted > 0


def test_hoare_verdicts_match_relational_cod_inclusion_at_n2():
    rng = random.Random(79)
    for _ in range(200):
        tr = Triple("hoare",
                    random_test_term(rng, AL_PB, 2),
                    random_term(rng, AL_PB, 2),
                    random_test_term(rng, AL_PB, 2))
        verdict = check_triple(tr, AL_PB)
        if isinstance(verdict, Equivalent):
            # no n<=2 model may reach a state outside the postcondition
            hit = search_countermodel(
                "leq", Dot(Dot(tr.pre, tr.prog), Not(tr.post)),
                parse("0", AL_PB), AL_PB, 2, EXHAUSTIVE)
            assert hit is None
        else:
            assert member(verdict.string, Dot(Dot(tr.pre, tr.prog), Not(tr.post)))


def test_rule_instance_shapes():
    one = parse("1", AL_PB)
    p = parse("p", AL_PB)
    hyps, goal = rule_instance("sequencing", [one, one, one, p, p])
    assert len(hyps) == 2 and goal == (parse("1 p p", AL_PB), one)
    with pytest.raises(ValueError, match="5 terms"):
        rule_instance("sequencing", [one, p])
    with pytest.raises(SortError):
        rule_instance("choice", [p, one, p, p])
    with pytest.raises(ValueError, match="unknown rule"):
        rule_instance("frame", [one])


def test_named_rules_survive_exhaustive_search():
    one = parse("1", AL_PB)
    b, c = parse("b", AL_PB), parse("c", AL_PB)
    p = parse("p", AL_PB)
    seq = check_rule_instance("sequencing", [b, c, one, p, p], AL_PB, 2, EXHAUSTIVE)
    assert not seq.refuted and seq.budget == "exhaustive n<=2"
    choice = check_rule_instance("choice", [b, c, p, p], AL_PB, 2, EXHAUSTIVE)
    assert not choice.refuted
    cons = check_rule_instance("consequence", [b, one, c, one, p], AL_PB, 2, EXHAUSTIVE)
    assert not cons.refuted


def test_broken_rule_is_refuted():
    al = Alphabet(("p", "q"), ())
    hit = falsify_implication([], (parse("p", al), parse("q", al)), al, 2, EXHAUSTIVE)
    assert hit is not None


def test_triple_parsing():
    tr = parse_triple_line("hoare {b} p;p {c}", AL_PB)
    assert tr == triple("hoare", "b", "p p", "c")
    tr = parse_triple_line("incorrectness [b] p [c]", AL_PB)
    assert tr.kind == "incorrectness"
    with pytest.raises(ParseError):
        parse_triple_line("hoare [b] p [c]", AL_PB)
    rows = parse_triple_file("# comment\n\nhoare {1} p {1}\nincorrectness [1] p [1]\n",
                             AL_PB)
    assert [lineno for lineno, _ in rows] == [3, 4]
