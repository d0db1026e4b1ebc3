#!/usr/bin/env python3
"""Walk the boundary between provable and relationally-valid inequalities.

The comparison p T p >= p holds in every relational model where T is the
complete relation, yet the equational theory cannot prove it; prefixing
or suffixing both sides with T is exactly where completeness is restored.
This script decides the relevant inequalities, searches for relational
countermodels, and extracts one verified countermodel for a codomain
comparison that genuinely fails.
"""

import argparse

from topkat.decide import Equivalent
from topkat.domain import RelCountermodel, cod_geq
from topkat.reduction import topkat_leq
from topkat.relmodel import SearchBudget, search_countermodel
from topkat.syntax import Alphabet, parse


def show(label: str, outcome: str) -> None:
    print(f"{label:<46} {outcome}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-states", type=int, default=3,
                        help="carrier bound for exhaustive searches (default 3)")
    args = parser.parse_args()

    al = Alphabet(("p",), ())
    al_b = Alphabet(("p",), ("b",))
    exhaustive = SearchBudget(exhaustive=True)

    def provable(t1: str, t2: str, alphabet: Alphabet) -> str:
        verdict = topkat_leq(parse(t1, alphabet), parse(t2, alphabet), alphabet)
        if isinstance(verdict, Equivalent):
            return "provable"
        return f"not provable (witness {verdict.string.render()})"

    def valid_up_to(t1: str, t2: str, alphabet: Alphabet) -> str:
        hit = search_countermodel("leq", parse(t1, alphabet), parse(t2, alphabet),
                                  alphabet, args.max_states, exhaustive)
        if hit is None:
            return f"no countermodel with <= {args.max_states} states"
        return f"countermodel with {hit.interp.n} states"

    print("== the unprovable-but-valid inequality ==")
    show("p <= p T p, equationally:", provable("p", "p T p", al))
    show("p <= p T p, relationally:", valid_up_to("p", "p T p", al))
    print()
    print("== both sides wrapped in T: the provability frontier ==")
    show("p T <= p T p T, equationally:", provable("p T", "p T p T", al))
    show("p T p T <= p T, equationally:", provable("p T p T", "p T", al))
    show("T p <= T p T p, equationally:", provable("T p", "T p T p", al))
    print()
    print("== a codomain comparison that truly fails ==")
    verdict = cod_geq(parse("p b", al_b), parse("p", al_b), al_b)
    assert isinstance(verdict, RelCountermodel)
    print(f"cod(p b) >= cod(p) is refuted by witness {verdict.witness.render()}")
    for i, label in enumerate(verdict.carrier):
        print(f"  state {i} = {label.render()}")
    for name, rel in list(verdict.interp.action_map.items()) + \
            list(verdict.interp.test_map.items()):
        print(f"  {name} -> {list(rel.pairs)}")
    print(f"  violating point: state {verdict.violating_index}")


if __name__ == "__main__":
    main()
