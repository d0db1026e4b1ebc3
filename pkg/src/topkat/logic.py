"""Hoare and incorrectness triples, and refutation of proof-rule instances.

A Hoare triple {b} p {c} becomes the equation b p !c = 0.  An
incorrectness triple [b] p [c] asserts that every c-state is reachable
from some b-state through p, i.e. the codomain inclusion T c <= T (b p);
refutations therefore come back as verified relational countermodels.
The printed-direction encoding T (b p) <= T c is available behind a flag.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

from .decide import Verdict, equivalent
from .domain import ComparisonVerdict, cod_geq
from .errors import ParseError, SortError, TopNotAllowedError
from .relmodel import SearchBudget, SearchHit, falsify_implication
from .semantics import ATOM_CAP
from .syntax import Alphabet, Dot, Not, Plus, Term, TOP, ZERO, contains_top, is_test_only, parse

DIRECTIONS = ("under", "as-printed")


@dataclass(frozen=True)
class Triple:
    kind: str  # "hoare" | "incorrectness"
    pre: Term
    prog: Term
    post: Term

    def __post_init__(self) -> None:
        if self.kind not in ("hoare", "incorrectness"):
            raise ValueError(f"unknown triple kind {self.kind!r}")
        for side, t in (("precondition", self.pre), ("postcondition", self.post)):
            if not is_test_only(t):
                raise SortError(f"{side} must be a test-only term")
        if contains_top(self.prog):
            raise TopNotAllowedError("triple programs must be top-free")


@dataclass(frozen=True)
class EncodedEquation:
    """Decide with `equivalent(left, right)`."""

    left: Term
    right: Term


@dataclass(frozen=True)
class EncodedInequality:
    """Decide with `topkat_leq(smaller, larger)`."""

    smaller: Term
    larger: Term


def encode(tr: Triple, direction: str = "under") -> EncodedEquation | EncodedInequality:
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    if tr.kind == "hoare":
        return EncodedEquation(Dot(Dot(tr.pre, tr.prog), Not(tr.post)), ZERO)
    reach = Dot(TOP, Dot(tr.pre, tr.prog))
    claim = Dot(TOP, tr.post)
    if direction == "under":
        return EncodedInequality(smaller=claim, larger=reach)
    return EncodedInequality(smaller=reach, larger=claim)


def check_triple(tr: Triple, alphabet: Alphabet, direction: str = "under", *,
                 atom_cap: int = ATOM_CAP) -> Union[Verdict, ComparisonVerdict]:
    """Hoare triples via the equational decision; incorrectness triples via
    the codomain comparison, so refutations carry relational countermodels."""
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    if tr.kind == "hoare":
        enc = encode(tr)
        assert isinstance(enc, EncodedEquation)
        return equivalent(enc.left, enc.right, alphabet, atom_cap=atom_cap)
    prog = Dot(tr.pre, tr.prog)
    if direction == "under":
        return cod_geq(prog, tr.post, alphabet, atom_cap=atom_cap)
    return cod_geq(tr.post, prog, alphabet, atom_cap=atom_cap)


# ---------------------------------------------------------------------------
# Proof-rule instances as hypothesis implications between top-inequalities.

RULES: dict[str, tuple[str, ...]] = {
    # [a] p [b]   [b] q [c]   =>   [a] p q [c]
    "sequencing": ("a", "b", "c", "p", "q"),
    # [a] p [b]   [a] q [b]   =>   [a] p + q [b]
    "choice": ("a", "b", "p", "q"),
    # a' <= a   [a] p [b]   b <= b'   =>   [a'] p [b']
    "consequence": ("a_weak", "a", "b", "b_weak", "p"),
}


@dataclass(frozen=True)
class RuleReport:
    """One-sided refutation outcome: absence of a hit proves nothing."""

    rule: str
    hyps: tuple[tuple[Term, Term], ...]
    goal: tuple[Term, Term]
    hit: SearchHit | None
    budget: str

    @property
    def refuted(self) -> bool:
        return self.hit is not None


def rule_instance(rule: str, terms: Sequence[Term]) -> tuple[
        tuple[tuple[Term, Term], ...], tuple[Term, Term]]:
    """Hypotheses and goal for a named rule, each pair read as T u <= T v."""
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {sorted(RULES)}")
    params = RULES[rule]
    if len(terms) != len(params):
        raise ValueError(f"rule {rule!r} takes {len(params)} terms "
                         f"({', '.join(params)}), got {len(terms)}")
    binding = dict(zip(params, terms))
    for name in params:
        if name.startswith(("a", "b", "c")) and not is_test_only(binding[name]):
            raise SortError(f"rule parameter {name!r} must be a test-only term")
        if contains_top(binding[name]):
            raise TopNotAllowedError("rule parameters must be top-free")
    if rule == "sequencing":
        a, b, c, p, q = (binding[x] for x in params)
        return ((Dot(a, p), b), (Dot(b, q), c)), (Dot(Dot(a, p), q), c)
    if rule == "choice":
        a, b, p, q = (binding[x] for x in params)
        return ((Dot(a, p), b), (Dot(a, q), b)), (Dot(a, Plus(p, q)), b)
    a_weak, a, b, b_weak, p = (binding[x] for x in params)
    return ((a_weak, a), (Dot(a, p), b), (b, b_weak)), (Dot(a_weak, p), b_weak)


def check_rule_instance(rule: str, terms: Sequence[Term], alphabet: Alphabet,
                        max_n: int, budget: SearchBudget) -> RuleReport:
    """Search for a relational refutation of the instantiated rule."""
    hyps, goal = rule_instance(rule, terms)
    hit = falsify_implication(hyps, goal, alphabet, max_n, budget)
    return RuleReport(rule, hyps, goal, hit, budget.describe(max_n))


# ---------------------------------------------------------------------------
# Triple files: one triple per line, `hoare {b} p;q {c}` or
# `incorrectness [b] p;q [c]`.  Blank lines and #-comments are skipped.

_HOARE_RE = re.compile(r"^\s*hoare\s*\{(?P<pre>[^}]*)\}(?P<prog>.*)\{(?P<post>[^}]*)\}\s*$")
_INCOR_RE = re.compile(r"^\s*incorrectness\s*\[(?P<pre>[^\]]*)\](?P<prog>.*)\[(?P<post>[^\]]*)\]\s*$")


def split_triple_line(line: str) -> tuple[str, str, str, str]:
    """Split a triple line into (kind, pre text, prog text, post text)."""
    m = _HOARE_RE.match(line)
    kind = "hoare"
    if m is None:
        m = _INCOR_RE.match(line)
        kind = "incorrectness"
    if m is None:
        raise ParseError(f"not a triple: {line.strip()!r}")
    return kind, m.group("pre"), m.group("prog"), m.group("post")


def parse_triple_line(line: str, alphabet: Alphabet) -> Triple:
    kind, pre, prog, post = split_triple_line(line)
    return Triple(kind, parse(pre, alphabet), parse(prog, alphabet),
                  parse(post, alphabet))


def parse_triple_file(text: str, alphabet: Alphabet) -> list[tuple[int, Triple]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        out.append((lineno, parse_triple_line(line, alphabet)))
    return out
