"""
hypothesis strategies for terms, conditions and formulas
"""

from hypothesis import strategies as st

from core.forcing import BOTTOM, Seq
from core.formulas import BOT, TOP, EqHook, ForallInt, Imp, Lit
from core.terms import B, C, CC, I, K, W, App, Const, Var

COMBINATORS = [B, C, I, K, W, CC]


@st.composite
def cterms(draw, variables=(), constants=('a', 'b'), max_leaves=12):
    """Closed-under-application combinator terms over the given atoms"""
    atoms = COMBINATORS + [Const(name) for name in constants] + [Var(name) for name in variables]
    leaves = draw(st.integers(min_value=1, max_value=max_leaves))

    def build(n):
        if n == 1:
            return draw(st.sampled_from(atoms))
        left = draw(st.integers(min_value=1, max_value=n - 1))
        return App(build(left), build(n - left))
    return build(leaves)


@st.composite
def combinator_terms(draw, max_leaves=8):
    """Terms built from the six combinators only"""
    return draw(cterms(constants=(), max_leaves=max_leaves))


@st.composite
def conditions(draw, max_length=3, alphabet=(0, 1, 2)):
    if draw(st.integers(min_value=0, max_value=9)) == 0:
        return BOTTOM
    entries = draw(st.lists(st.sampled_from(alphabet), max_size=max_length))
    return Seq(tuple(entries))


def elementary_formulas(bound=2, max_leaves=6):
    return st.recursive(
        st.sampled_from([TOP, BOT]),
        lambda inner: st.one_of(
            st.builds(Imp, inner, inner),
            st.builds(lambda f: EqHook(Lit(0), Lit(0), f), inner),
            st.builds(lambda f: EqHook(Lit(0), Lit(1), f), inner),
            st.builds(lambda f: ForallInt('n', bound, f), inner),
        ),
        max_leaves=max_leaves,
    )
