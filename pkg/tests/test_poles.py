import pytest

from config.settings import Settings

from core.combinators import halting, numeral
from core.machine import run
from core.poles import (
    EmptyPole, EverythingPole, GlobalPole, TargetPole, ThreadError, ThreadPole, Verdict, coherence_check,
    gamma_witness_check, global_member, is_coherent, majority, majority_check, make_pole, thread_constant,
    thread_member,
)
from core.terms import I, K, Const, Cont, Process, Push, StackConst, make_stack, parse

D = Const('d')
PI0, PI1 = thread_constant(0), thread_constant(1)
BUSTER = parse("W W W")


def test_thread_constants():
    assert PI0 == StackConst('pi0') and PI1 == StackConst('pi1')


def test_majority():
    assert majority([Verdict.YES, Verdict.UNKNOWN, Verdict.YES]) is Verdict.YES
    assert majority([Verdict.NO, Verdict.NO]) is Verdict.NO
    assert majority([Verdict.YES, Verdict.NO, Verdict.UNKNOWN]) is Verdict.UNKNOWN


def test_generator_membership():
    pole = ThreadPole(0, 0)
    assert pole.member(Process(D, Push(numeral(0), PI0))) is Verdict.YES
    assert pole.member(Process(halting(0), PI0)) is Verdict.YES
    assert pole.member(Process(D, Push(numeral(1), PI0))) is Verdict.NO
    assert thread_member(Process(D, Push(numeral(1), PI0)), 0, 1) is Verdict.YES


def test_terminated_elsewhere_is_not_a_member():
    answer = ThreadPole(0, 0).explain(Process(I, Push(Const('a'), PI0)))
    assert answer.verdict is Verdict.NO
    assert answer.event.startswith("terminated")


def test_budget_exhaustion_is_unknown():
    pole = ThreadPole(0, 0, budget=100)
    assert pole.member(Process(BUSTER, PI0)) is Verdict.UNKNOWN


def test_foreign_stack_constant_is_rejected():
    with pytest.raises(ThreadError):
        ThreadPole(0, 0).member(Process(I, StackConst('p')))
    with pytest.raises(ValueError):
        ThreadPole(2, 0)


def test_majority_rule():
    d0 = halting(0)
    assert majority_check(d0, d0, I, PI0, 0, 0) is Verdict.YES
    assert majority_check(I, I, d0, PI0, 0, 0) is Verdict.NO
    assert majority_check(d0, I, BUSTER, PI0, 0, 0, budget=500) is Verdict.UNKNOWN


def test_majority_through_the_machine():
    d0 = halting(0)
    p = Process(D, make_stack([numeral(2), I, d0, d0], PI0))
    assert ThreadPole(0, 0).member(p) is Verdict.YES
    assert ThreadPole(0, 0, depth=0).member(p) is Verdict.UNKNOWN


def test_global_pole():
    assert global_member(Process(Cont(PI0), PI1)) is Verdict.YES
    assert global_member(Process(I, StackConst('p'))) is Verdict.YES
    assert global_member(Process(D, Push(numeral(0), PI0))) is Verdict.YES
    assert global_member(Process(D, Push(numeral(1), PI1))) is Verdict.YES
    assert global_member(Process(I, Push(Const('a'), PI0))) is Verdict.NO
    assert GlobalPole().member(Process(K, Push(Const('a'), PI1))) is Verdict.NO


def test_membership_is_closed_under_reduction():
    p = Process(parse("I (K (#d {0}) #x)"), PI0)
    pole = ThreadPole(0, 0)
    assert pole.member(p) is Verdict.YES
    assert all(pole.member(state) is Verdict.YES for state in run(p).states)


def test_simple_poles():
    p = Process(I, StackConst('p'))
    assert EmptyPole().member(p) is Verdict.NO
    assert EverythingPole().member(p) is Verdict.YES
    target = Process(Const('a'), StackConst('p'))
    assert TargetPole(frozenset({target})).member(Process(I, Push(Const('a'), StackConst('p')))) is Verdict.YES
    assert TargetPole(frozenset({target})).member(p) is Verdict.NO


def test_make_pole():
    assert make_pole('empty').kind == 'empty'
    assert make_pole('thread', 1, 1).j == 1
    assert make_pole('global').kind == 'global'
    with pytest.raises(ValueError):
        make_pole('nope')


def test_witnesses_and_coherence():
    assert gamma_witness_check() == (Verdict.YES, Verdict.YES)
    assert is_coherent(I)
    assert coherence_check(K) == (Verdict.NO, Verdict.NO)


def test_answers_use_the_given_renderer():
    pole = make_pole('thread', show=lambda p: '<process>')
    answer = pole.explain(parse("#d {0} * %pi0", 'process'))
    assert answer.event == "generator <process> at step 1"
    target = make_pole('target', targets=frozenset({parse("#a * %p", 'process')}), show=lambda p: '<process>')
    assert target.explain(parse("I * #a . %p", 'process')).event == "target <process> at step 1"


def test_thread_pole_memo_is_bounded(monkeypatch):
    monkeypatch.setattr(Settings, 'POLE_MEMO_SIZE', 2)
    pole = ThreadPole(0, 0)
    for n in range(5):
        assert pole.member(Process(I, Push(numeral(n), PI0))) is Verdict.NO
    assert len(pole._memo) <= 2


@pytest.mark.parametrize("realizers", [(0, 2), (1, 2), (0, 1)])
@pytest.mark.parametrize("thread", [0, 1])
def test_majority_realizer_on_one_thread(thread, realizers):
    stack = thread_constant(thread)
    premises = [halting(thread) if index in realizers else I for index in range(3)]
    assert global_member(Process(D, make_stack([numeral(2)] + premises, stack))) is Verdict.YES
    for flipped in realizers:
        weakened = [I if index == flipped else term for index, term in enumerate(premises)]
        assert global_member(Process(D, make_stack([numeral(2)] + weakened, stack))) is Verdict.NO
