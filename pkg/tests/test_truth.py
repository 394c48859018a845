import pytest

from core.combinators import halting, numeral
from core.forcing import BOTTOM, ONE, Seq, all_conditions, star_numeral
from core.formulas import (
    BOT, TOP, Atom, EqHook, Fn, ForallFin, ForallInt, FormulaSyntaxError, Imp, Lit, free_lvars, is_elementary,
    parse_formula,
)
from core.poles import EmptyPole, EverythingPole, ThreadPole, Verdict, thread_constant
from core.terms import I, K, Push, StackConst
from core.truth import (
    Interpretation, b_realizes, correspondence_report, correspondence_sweep, realizes, sub_transform,
    sup_transform, tv, tv_b,
)

P = StackConst('p')
SMALL = all_conditions(1, [0, 1])


def test_truth_values_of_constants():
    assert tv(TOP, [P]) == frozenset()
    assert tv(BOT, [P]) == frozenset({P})


def test_implication_pushes_realizers():
    assert tv(Imp(TOP, BOT), [P]) == frozenset({Push(I, P)})
    assert tv(Imp(TOP, TOP), [P]) == frozenset()


def test_hooks():
    assert tv(parse_formula("[0=0]=> F"), [P]) == frozenset({P})
    assert tv(parse_formula("[0=1]=> F"), [P]) == frozenset()
    assert tv(parse_formula("[n=1]=> F"), [P], env={'n': 1}) == frozenset({P})


def test_finite_quantifier_unions_instances():
    f = parse_formula("forall x in {0, 1}. [x=1]=> F")
    assert tv(f, [P]) == frozenset({P})


@pytest.mark.parametrize("starred", [False, True])
def test_integer_quantifier(starred):
    marker = star_numeral if starred else numeral
    f = ForallInt('n', 2, BOT, starred)
    assert tv(f, [P]) == frozenset(Push(marker(n), P) for n in range(3))


def test_realizes_against_simple_poles():
    assert realizes(I, TOP, EmptyPole(), [P]) is Verdict.YES
    assert realizes(I, BOT, EmptyPole(), [P]) is Verdict.NO
    assert realizes(K, BOT, EverythingPole(), [P]) is Verdict.YES


def test_realizes_against_a_thread_pole():
    pi0 = thread_constant(0)
    pole = ThreadPole(0, 0)
    assert realizes(halting(0), BOT, pole, [pi0]) is Verdict.YES
    assert realizes(halting(1), BOT, pole, [pi0]) is Verdict.NO


def test_non_elementary_formulas_are_rejected():
    with pytest.raises(FormulaSyntaxError):
        tv(Atom('P'), [P])


def test_interpretation_caches_verdicts():
    interpretation = Interpretation(frozenset({P}), EmptyPole(), (I,), tuple(SMALL))
    first = interpretation.realizes(I, BOT)
    assert interpretation.realizes(I, BOT) is first


def test_b_side_truth_values():
    pairs = tv_b(BOT, [P], SMALL)
    assert pairs == frozenset((P, q) for q in SMALL)
    quantified = tv_b(ForallInt('n', 1, BOT), [P], SMALL)
    assert (Push(star_numeral(1), P), ONE) in quantified


def test_b_realizes_at_the_empty_pole():
    assert b_realizes(I, BOTTOM, BOT, EmptyPole(), [P], SMALL) is Verdict.YES
    assert b_realizes(I, ONE, BOT, EmptyPole(), [P], SMALL) is Verdict.NO
    assert b_realizes(I, Seq((0,)), TOP, EmptyPole(), [P], SMALL) is Verdict.YES


def test_sub_transform_shapes():
    assert sub_transform(BOT, ONE, SMALL) == BOT
    starred = sub_transform(ForallInt('n', 2, BOT), ONE, SMALL)
    assert starred == ForallInt('n', 2, BOT, starred=True)

    implication = sub_transform(Imp(TOP, BOT), ONE, SMALL, bound=2)
    assert isinstance(implication, ForallFin) and isinstance(implication.body, ForallFin)
    guard = implication.body.body
    assert isinstance(guard, EqHook) and guard.lhs == Lit(ONE)
    assert isinstance(guard.rhs, Fn) and guard.rhs.name == 'meet'
    assert isinstance(guard.body, Imp) and guard.body.cons == BOT
    assert is_elementary(implication) and not free_lvars(implication)


def test_sup_transform_shape():
    f = sup_transform(TOP, Seq((0,)), SMALL, bound=3)
    assert isinstance(f, ForallFin) and len(f.range) == len(SMALL)
    inner = f.body
    assert isinstance(inner, ForallInt) and inner.bound == 3
    assert isinstance(inner.body, EqHook) and inner.body.rhs == Lit(1)
    assert inner.body.lhs.name == 'lle'
    assert not free_lvars(f)


@pytest.mark.parametrize("text", ["T", "F", "[0=0]=> F", "[0=1]=> T", "forall_int^1 n. F"])
def test_correspondence_holds(text):
    assert correspondence_report(parse_formula(text), conditions=SMALL, bound=2) == []


def test_correspondence_sweep_covers_every_formula():
    wrappers = [lambda f: EqHook(Lit(0), Lit(1), f), lambda f: ForallInt('n', 1, f)]
    sweep = correspondence_sweep(2, wrappers, conditions=SMALL, bound=1)
    assert sweep.failures == []
    # 2 atoms, 2 * 2 + 4 at depth one, 2 * 8 + 10 * 10 - 2 * 2 at depth two
    assert sweep.formulas == 2 + 8 + 112
    assert sweep.classes < sweep.checked < sweep.formulas


def test_transform_is_independent_of_context():
    inner = Imp(TOP, BOT)
    alone = sub_transform(inner, ONE, SMALL, bound=1)
    nested = sub_transform(Imp(inner, inner), ONE, SMALL, bound=1)
    assert nested.body.body.body.cons.body.body.body == alone.body.body.body
