"""
Poles: membership oracles for sets of processes closed under anti-reduction

The machine is deterministic, so a process reduces to q exactly when q lies
on its trace. Thread poles of the two-threads model are decided by running
the process to its halting state and applying the generator rules there.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from config.settings import Settings
from core.combinators import halting, numeral
from core.machine import run
from core.terms import Const, Process, Push, Stack, StackConst, Term, render, stack_constants

logger = logging.getLogger(__name__)

HALT = Const(Settings.HALT_CONSTANT)

Show = Callable[[Process], str]


class Verdict(str, Enum):
    YES = 'yes'
    NO = 'no'
    UNKNOWN = 'unknown'


class ThreadError(Exception):
    """Process uses a stack constant outside the requested thread"""


@dataclass(frozen=True)
class MembershipAnswer:
    verdict: Verdict
    event: str
    steps: int = 0


def thread_constant(i: int) -> StackConst:
    return StackConst(Settings.THREAD_CONSTANTS[i])


def majority(verdicts: List[Verdict]) -> Verdict:
    """yes on two yes, no on two no, unknown otherwise"""
    if verdicts.count(Verdict.YES) >= 2:
        return Verdict.YES
    if verdicts.count(Verdict.NO) >= 2:
        return Verdict.NO
    return Verdict.UNKNOWN


class PoleOracle:
    """Membership procedure for a pole"""

    kind = 'abstract'
    # every member query answers yes, so the pole of B may certify a whole window
    uniform = False

    def explain(self, p: Process) -> MembershipAnswer:
        raise NotImplementedError

    def member(self, p: Process) -> Verdict:
        return self.explain(p).verdict


class EmptyPole(PoleOracle):
    kind = 'empty'

    def explain(self, p: Process) -> MembershipAnswer:
        return MembershipAnswer(Verdict.NO, "the empty pole has no members")


class EverythingPole(PoleOracle):
    kind = 'everything'
    uniform = True

    def explain(self, p: Process) -> MembershipAnswer:
        return MembershipAnswer(Verdict.YES, "every process is a member")


class TargetPole(PoleOracle):
    """Processes whose trace hits one of finitely many target processes"""

    kind = 'trace-target'

    def __init__(self, targets: FrozenSet[Process], budget: Optional[int] = None, show: Show = render):
        self.targets = frozenset(targets)
        self.show = show
        self.budget = Settings.MAX_STEPS if budget is None else budget

    def explain(self, p: Process) -> MembershipAnswer:
        trace = run(p, self.budget, keep_states=False, stop=lambda state: state in self.targets)
        if trace.budget_exhausted:
            return MembershipAnswer(Verdict.UNKNOWN, f"budget exhausted after {trace.steps} steps", trace.steps)
        if trace.stuck:
            return MembershipAnswer(Verdict.NO, f"terminated at {self.show(trace.final)}", trace.steps)
        return MembershipAnswer(Verdict.YES, f"target {self.show(trace.final)} at step {trace.steps}", trace.steps)


def _top_items(stack: Stack, count: int) -> Tuple[List[Term], Stack]:
    items = []
    while len(items) < count and isinstance(stack, Push):
        items.append(stack.top)
        stack = stack.rest
    return items, stack


class ThreadPole(PoleOracle):
    """Least set of thread-i processes generated by d * j.pi and the majority rule for d * 2.a.b.c.pi"""

    kind = 'thread'

    def __init__(self, i: int, j: int, depth: Optional[int] = None, budget: Optional[int] = None,
                 show: Show = render):
        if i not in (0, 1) or j not in (0, 1):
            raise ValueError("thread indices are 0 or 1")
        self.i = i
        self.j = j
        self.depth = Settings.POLE_DEPTH if depth is None else depth
        self.budget = Settings.MAX_STEPS if budget is None else budget
        self.show = show
        self._memo: Dict[Tuple[Process, int], MembershipAnswer] = {}
        self._generator = numeral(j)
        self._majority = numeral(2)

    def check_thread(self, p: Process) -> None:
        foreign = stack_constants(p) - {Settings.THREAD_CONSTANTS[self.i]}
        if foreign:
            raise ThreadError(f"Process uses {', '.join(sorted(foreign))} outside thread {self.i}")

    def explain(self, p: Process) -> MembershipAnswer:
        self.check_thread(p)
        return self.decide(p, self.depth)

    def decide(self, p: Process, depth: int) -> MembershipAnswer:
        key = (p, depth)
        if key not in self._memo:
            if len(self._memo) >= Settings.POLE_MEMO_SIZE:
                self._memo.clear()
            self._memo[key] = self._decide(p, depth)
        return self._memo[key]

    def _decide(self, p: Process, depth: int) -> MembershipAnswer:
        trace = run(p, self.budget, keep_states=False)
        if trace.budget_exhausted:
            logger.debug(f"Thread ({self.i},{self.j}) query ran out of budget")
            return MembershipAnswer(Verdict.UNKNOWN, f"budget exhausted after {trace.steps} steps", trace.steps)

        final = trace.final
        if final.head != HALT:
            return MembershipAnswer(Verdict.NO, f"terminated at {self.show(final)}", trace.steps)

        items, rest = _top_items(final.stack, 4)
        if items and items[0] == self._generator:
            return MembershipAnswer(Verdict.YES, f"generator {self.show(final)} at step {trace.steps}", trace.steps)
        if len(items) == 4 and items[0] == self._majority:
            verdict = self.premises(items[1:], rest, depth)
            return MembershipAnswer(verdict, f"majority at {self.show(final)} gives {verdict.value}", trace.steps)
        return MembershipAnswer(Verdict.NO, f"halted outside the generators at {self.show(final)}", trace.steps)

    def premises(self, terms: List[Term], stack: Stack, depth: int) -> Verdict:
        """Rule 3 on the three premises term * stack"""
        if depth <= 0:
            return Verdict.UNKNOWN
        verdicts: List[Verdict] = []
        for term in terms:
            verdicts.append(self.decide(Process(term, stack), depth - 1).verdict)
            if majority(verdicts) is not Verdict.UNKNOWN:
                break
        return majority(verdicts)


class GlobalPole(PoleOracle):
    """Processes in the pole of their own thread, or mixing stack constants of both threads"""

    kind = 'global'

    def __init__(self, depth: Optional[int] = None, budget: Optional[int] = None, show: Show = render):
        self.threads = (ThreadPole(0, 0, depth, budget, show), ThreadPole(1, 1, depth, budget, show))

    def explain(self, p: Process) -> MembershipAnswer:
        used = stack_constants(p)
        pi0, pi1 = Settings.THREAD_CONSTANTS
        if not used <= {pi0} and not used <= {pi1}:
            return MembershipAnswer(Verdict.YES, f"stack constants {', '.join(sorted(used))} span both threads")
        if used:
            index = 0 if used == {pi0} else 1
            return self.threads[index].explain(p)

        answers = [thread.explain(p) for thread in self.threads]
        verdicts = [answer.verdict for answer in answers]
        if all(verdict is Verdict.YES for verdict in verdicts):
            verdict = Verdict.YES
        elif Verdict.NO in verdicts:
            verdict = Verdict.NO
        else:
            verdict = Verdict.UNKNOWN
        return MembershipAnswer(verdict, '; '.join(answer.event for answer in answers),
                                max(answer.steps for answer in answers))


def thread_member(p: Process, i: int, j: int, depth: Optional[int] = None,
                  budget: Optional[int] = None) -> Verdict:
    return ThreadPole(i, j, depth, budget).member(p)


def global_member(p: Process, depth: Optional[int] = None, budget: Optional[int] = None) -> Verdict:
    return GlobalPole(depth, budget).member(p)


def majority_check(xi: Term, eta: Term, zeta: Term, pi: Stack, i: int, j: int,
                   depth: Optional[int] = None, budget: Optional[int] = None) -> Verdict:
    """Rule 3 for d * 2.xi.eta.zeta.pi evaluated on its premises directly"""
    pole = ThreadPole(i, j, depth, budget)
    pole.check_thread(Process(xi, Push(eta, Push(zeta, pi))))
    return pole.premises([xi, eta, zeta], pi, pole.depth)


def make_pole(kind: str, i: int = 0, j: int = 0, depth: Optional[int] = None,
              budget: Optional[int] = None, targets: FrozenSet[Process] = frozenset(),
              show: Show = render) -> PoleOracle:
    """Build an oracle by kind name; show renders the processes named in answers"""
    if kind == 'empty':
        return EmptyPole()
    if kind == 'everything':
        return EverythingPole()
    if kind in ('target', 'trace-target'):
        return TargetPole(targets, budget, show)
    if kind == 'thread':
        return ThreadPole(i, j, depth, budget, show)
    if kind == 'global':
        return GlobalPole(depth, budget, show)
    raise ValueError(f"Unknown pole kind {kind}")


def coherence_check(theta: Term, depth: Optional[int] = None,
                    budget: Optional[int] = None) -> Tuple[Verdict, Verdict]:
    """Membership of theta * pi0 in thread (0,0) and of theta * pi1 in thread (1,1)"""
    first = ThreadPole(0, 0, depth, budget).member(Process(theta, thread_constant(0)))
    second = ThreadPole(1, 1, depth, budget).member(Process(theta, thread_constant(1)))
    return first, second


def is_coherent(theta: Term, depth: Optional[int] = None, budget: Optional[int] = None) -> bool:
    """A proof-like theta never lands in both thread poles"""
    first, second = coherence_check(theta, depth, budget)
    return not (first is Verdict.YES and second is Verdict.YES)


def gamma_witness_check(depth: Optional[int] = None) -> Tuple[Verdict, Verdict]:
    """d 0 * pi0 in thread (0,0) and d 1 * pi1 in thread (1,1)"""
    first = ThreadPole(0, 0, depth).member(Process(halting(0), thread_constant(0)))
    second = ThreadPole(1, 1, depth).member(Process(halting(1), thread_constant(1)))
    return first, second
