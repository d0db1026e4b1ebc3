"""Atoms, guarded strings, fusion, and the bounded-language oracle.

`lang_bounded` computes guarded-string languages by direct set
computation up to an action-count bound.  It is the independent oracle
backing the derivative-based decision procedure and must stay free of
any dependency on it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import ParseError, ResourceLimitError, SortError, TopNotAllowedError
from .syntax import (
    Act, Alphabet, Dot, Not, One, Plus, Star, Term, Test, Zero,
    check_over, contains_top, is_test_only,
)

ATOM_CAP = 10


@dataclass(frozen=True)
class Atom:
    """A total truth assignment to the test alphabet, in declared order."""

    tests: tuple[str, ...]
    bits: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.tests) != len(self.bits):
            raise ValueError("one polarity per declared test")

    def value(self, name: str) -> bool:
        try:
            return self.bits[self.tests.index(name)]
        except ValueError:
            raise SortError(f"atom does not assign {name!r}") from None

    def render(self) -> str:
        lits = [(name if bit else "!" + name) for name, bit in zip(self.tests, self.bits)]
        return "[" + "&".join(lits) + "]"


@dataclass(frozen=True)
class GuardedString:
    """Alternating atoms and actions: atoms[0] acts[0] atoms[1] ... atoms[-1]."""

    atoms: tuple[Atom, ...]
    acts: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.atoms) != len(self.acts) + 1:
            raise ValueError("need exactly one more atom than actions")

    @property
    def first_atom(self) -> Atom:
        return self.atoms[0]

    @property
    def last_atom(self) -> Atom:
        return self.atoms[-1]

    @property
    def num_actions(self) -> int:
        return len(self.acts)

    def render(self) -> str:
        parts = [self.atoms[0].render()]
        for act, atom in zip(self.acts, self.atoms[1:]):
            parts.append(act)
            parts.append(atom.render())
        return " ".join(parts)


def all_atoms(alphabet: Alphabet, cap: int = ATOM_CAP) -> list[Atom]:
    """All 2^|tests| atoms, lexicographic in bit order (negative first)."""
    if len(alphabet.tests) > cap:
        raise ResourceLimitError(
            f"{len(alphabet.tests)} tests exceed the atom cap of {cap} "
            f"(2^{len(alphabet.tests)} atoms)")
    return [Atom(alphabet.tests, bits)
            for bits in itertools.product((False, True), repeat=len(alphabet.tests))]


def satisfies(atom: Atom, t: Term) -> bool:
    """Boolean evaluation of a test-only term under the atom's assignment."""
    if not is_test_only(t):
        raise SortError(f"not a test-only term: {t!r}")
    match t:
        case Zero():
            return False
        case One():
            return True
        case Test(name):
            return atom.value(name)
        case Not(arg):
            return not satisfies(atom, arg)
        case Plus(left, right):
            return satisfies(atom, left) or satisfies(atom, right)
        case Dot(left, right):
            return satisfies(atom, left) and satisfies(atom, right)
    raise SortError(f"not a test-only term: {t!r}")


def fuse(s1: GuardedString, s2: GuardedString) -> GuardedString | None:
    """Fusion product: concatenate when the boundary atoms agree, else None."""
    if s1.last_atom != s2.first_atom:
        return None
    return GuardedString(s1.atoms + s2.atoms[1:], s1.acts + s2.acts)


def gs_sort_key(s: GuardedString, alphabet: Alphabet):
    """Canonical ordering: length, then atom bits and action order interleaved."""
    act_index = {name: i for i, name in enumerate(alphabet.actions)}
    flat: list = [s.atoms[0].bits]
    for act, atom in zip(s.acts, s.atoms[1:]):
        flat.append(act_index[act])
        flat.append(atom.bits)
    return (len(s.acts), tuple(flat))


# ---------------------------------------------------------------------------
# Bounded languages.  Internally a string is a pair (atom indices, action
# names); GuardedString objects are built only at the boundary.

_Raw = tuple[tuple[int, ...], tuple[str, ...]]


def _fuse_sets(left: set[_Raw], right: set[_Raw], max_actions: int) -> set[_Raw]:
    by_first: dict[int, list[_Raw]] = {}
    for s in right:
        by_first.setdefault(s[0][0], []).append(s)
    out: set[_Raw] = set()
    for atoms1, acts1 in left:
        budget = max_actions - len(acts1)
        for atoms2, acts2 in by_first.get(atoms1[-1], ()):
            if len(acts2) <= budget:
                out.add((atoms1 + atoms2[1:], acts1 + acts2))
    return out


def lang_bounded(t: Term, alphabet: Alphabet, max_actions: int,
                 cap: int = ATOM_CAP) -> frozenset[GuardedString]:
    """Exactly the guarded strings of t's language with <= max_actions actions."""
    if contains_top(t):
        raise TopNotAllowedError("term contains T; eliminate it first")
    check_over(t, alphabet)
    if max_actions < 0:
        raise ValueError("max_actions must be >= 0")
    atoms = all_atoms(alphabet, cap=cap)
    memo: dict[Term, frozenset[_Raw]] = {}

    def go(t: Term) -> frozenset[_Raw]:
        cached = memo.get(t)
        if cached is not None:
            return cached
        if is_test_only(t):
            result = frozenset(((i,), ()) for i, a in enumerate(atoms) if satisfies(a, t))
        else:
            match t:
                case Act(name):
                    if max_actions >= 1:
                        result = frozenset(((i, j), (name,))
                                           for i in range(len(atoms))
                                           for j in range(len(atoms)))
                    else:
                        result = frozenset()
                case Plus(left, right):
                    result = go(left) | go(right)
                case Dot(left, right):
                    result = frozenset(_fuse_sets(set(go(left)), set(go(right)), max_actions))
                case Star(arg):
                    body = set(go(arg))
                    acc: set[_Raw] = {((i,), ()) for i in range(len(atoms))}
                    frontier = set(acc)
                    while frontier:
                        fresh = _fuse_sets(frontier, body, max_actions) - acc
                        acc |= fresh
                        frontier = fresh
                    result = frozenset(acc)
                case _:
                    raise SortError(f"cannot interpret {t!r}")
        memo[t] = result
        return result

    return frozenset(GuardedString(tuple(atoms[i] for i in idxs), acts)
                     for idxs, acts in go(t))


def all_strings_bounded(alphabet: Alphabet, max_actions: int,
                        cap: int = ATOM_CAP) -> frozenset[GuardedString]:
    """Every guarded string over the alphabet with <= max_actions actions."""
    atoms = all_atoms(alphabet, cap=cap)
    level: list[GuardedString] = [GuardedString((a,), ()) for a in atoms]
    out: list[GuardedString] = list(level)
    for _ in range(max_actions):
        level = [GuardedString(s.atoms + (a,), s.acts + (act,))
                 for s in level for act in alphabet.actions for a in atoms]
        out.extend(level)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Textual guarded strings: `[b&!c] p [b&c]`, with `[]` for an empty test set.

_GS_TOKEN = re.compile(r"\s*(?:(?P<atom>\[[^\]]*\])|(?P<act>[A-Za-z_][A-Za-z0-9_]*))")


def _parse_atom(text: str, alphabet: Alphabet, pos: int) -> Atom:
    inner = text[1:-1].strip()
    assigned: dict[str, bool] = {}
    if inner:
        for lit in inner.split("&"):
            lit = lit.strip()
            value = not lit.startswith("!")
            name = lit[1:].strip() if not value else lit
            if name not in alphabet.tests:
                raise ParseError(f"undeclared test {name!r} in atom", pos)
            if name in assigned:
                raise ParseError(f"test {name!r} assigned twice in atom", pos)
            assigned[name] = value
    missing = [t for t in alphabet.tests if t not in assigned]
    if missing:
        raise ParseError(f"atom does not assign {missing[0]!r}", pos)
    return Atom(alphabet.tests, tuple(assigned[t] for t in alphabet.tests))


def parse_guarded_string(text: str, alphabet: Alphabet) -> GuardedString:
    """Parse the textual form; atoms must assign every declared test."""
    atoms: list[Atom] = []
    acts: list[str] = []
    pos = 0
    expect_atom = True
    while pos < len(text):
        m = _GS_TOKEN.match(text, pos)
        if m is None:
            if not text[pos:].strip():
                break
            raise ParseError("unexpected character in guarded string", pos)
        if m.lastgroup == "atom":
            if not expect_atom:
                raise ParseError("expected an action, found an atom", m.start("atom"))
            atoms.append(_parse_atom(m.group("atom"), alphabet, m.start("atom")))
        else:
            name = m.group("act")
            if expect_atom:
                raise ParseError(f"expected an atom, found {name!r}", m.start("act"))
            if name not in alphabet.actions:
                raise ParseError(f"undeclared action {name!r}", m.start("act"))
            acts.append(name)
        expect_atom = not expect_atom
        pos = m.end()
    if not atoms or len(atoms) != len(acts) + 1:
        raise ParseError("guarded string must alternate atoms and actions, "
                         "starting and ending with an atom", len(text))
    return GuardedString(tuple(atoms), tuple(acts))
