import hypothesis
import hypothesis.strategies as st

from topkat import syntax

hypothesis.settings.register_profile("suite", deadline=None, max_examples=60)
hypothesis.settings.load_profile("suite")

ALPHABET = syntax.Alphabet(("p", "q"), ("b", "c"))


def boolean_terms(alphabet: syntax.Alphabet = ALPHABET):
    leaves = [st.just(syntax.ZERO), st.just(syntax.ONE)]
    leaves += [st.just(syntax.Test(b)) for b in alphabet.tests]
    return st.recursive(
        st.one_of(*leaves),
        lambda kids: st.one_of(
            st.builds(syntax.Not, kids),
            st.builds(syntax.Plus, kids, kids),
            st.builds(syntax.Dot, kids, kids)),
        max_leaves=6)


def terms(alphabet: syntax.Alphabet = ALPHABET, allow_top: bool = False):
    leaves = [st.just(syntax.ZERO), st.just(syntax.ONE)]
    leaves += [st.just(syntax.Act(a)) for a in alphabet.actions]
    leaves += [st.just(syntax.Test(b)) for b in alphabet.tests]
    if allow_top:
        leaves.append(st.just(syntax.TOP))
    return st.recursive(
        st.one_of(*leaves),
        lambda kids: st.one_of(
            st.builds(syntax.Plus, kids, kids),
            st.builds(syntax.Dot, kids, kids),
            st.builds(syntax.Star, kids),
            st.builds(syntax.Not, boolean_terms(alphabet))),
        max_leaves=10)
