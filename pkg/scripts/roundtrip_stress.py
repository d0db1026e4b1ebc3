#!/usr/bin/env python3
"""Seeded stress run of the reduction pipeline on random TopKAT terms.

For each sampled term t the script decides the round trip
embed_back(reduce(t)) = t, checks that the reduct of T dominates the
term, and reports verdict distribution plus timing.
"""

import argparse
import random
import time

from topkat.decide import Equivalent, leq
from topkat.gen import random_term
from topkat.reduction import ExtendedAlphabet, embed_back, reduce, topkat_equivalent
from topkat.syntax import Alphabet, TOP


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=500)
    parser.add_argument("--depth", type=int, default=5)
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--actions", default="p,q")
    parser.add_argument("--tests", default="b,c")
    args = parser.parse_args()

    alphabet = Alphabet(tuple(n for n in args.actions.split(",") if n),
                        tuple(n for n in args.tests.split(",") if n))
    ext = ExtendedAlphabet(alphabet)
    top_reduct = reduce(TOP, alphabet)
    rng = random.Random(args.seed)

    started = time.monotonic()
    roundtrips = dominated = 0
    for _ in range(args.count):
        t = random_term(rng, alphabet, args.depth, allow_top=True)
        back = embed_back(reduce(t, alphabet))
        if isinstance(topkat_equivalent(back, t, alphabet), Equivalent):
            roundtrips += 1
        if isinstance(leq(reduce(t, alphabet), top_reduct, ext.alphabet), Equivalent):
            dominated += 1
    elapsed = time.monotonic() - started

    print(f"seed {args.seed}, {args.count} terms, depth <= {args.depth}, "
          f"alphabet {alphabet.actions}/{alphabet.tests}")
    print(f"round trips equivalent: {roundtrips}/{args.count}")
    print(f"reducts below reduce(T): {dominated}/{args.count}")
    print(f"elapsed: {elapsed:.2f}s")


if __name__ == "__main__":
    main()
