"""
Forcing conditions and the extended algebra B = A x P

Conditions are finite sequences of naturals ordered by extension, plus a
least element O. The star transform threads an extra integer argument
through every combinator; B-level terms, stacks and processes pair an
A-level value with a condition and combine conditions through meet.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from lark import Lark, v_args

from core.combinators import SUCC, ZERO, iter_apply, numeral
from core.compiler import compile_lambda
from core.machine import ARITY, Stuck, StuckReason
from core.poles import PoleOracle, Verdict
from core.terms import (
    TERM_GRAMMAR, App, B, C, Comb, Cont, Process, Push, Stack, Term,
    TermTransformer, Var, parse, render, run_parser, substitute,
)

logger = logging.getLogger(__name__)


class StarDomainError(Exception):
    """The star transform is only defined on closed combinator terms"""


# === CONDITIONS === #

@dataclass(frozen=True)
class Bottom:
    """The false condition O"""

    def __str__(self) -> str:
        return 'O'


@dataclass(frozen=True)
class Seq:
    entries: Tuple[int, ...] = ()

    def __str__(self) -> str:
        return '<' + ','.join(str(entry) for entry in self.entries) + '>'


Condition = Union[Bottom, Seq]

BOTTOM = Bottom()
ONE = Seq(())


def meet(p: Condition, q: Condition) -> Condition:
    """Greatest lower bound: the longer sequence when one extends the other, O otherwise"""
    if isinstance(p, Bottom) or isinstance(q, Bottom):
        return BOTTOM
    shorter, longer = (p, q) if len(p.entries) <= len(q.entries) else (q, p)
    if longer.entries[:len(shorter.entries)] == shorter.entries:
        return longer
    return BOTTOM


def meet_all(conditions: Iterable[Condition]) -> Condition:
    result: Condition = ONE
    for condition in conditions:
        result = meet(result, condition)
    return result


def lle(p: Condition, n: int) -> int:
    """(p <= n) = 1 iff p is not O and its domain is at most n"""
    if isinstance(p, Bottom):
        return 0
    return 1 if len(p.entries) <= n else 0


def domain(p: Condition) -> int:
    return 0 if isinstance(p, Bottom) else len(p.entries)


def all_conditions(depth: int, alphabet: Sequence[int]) -> List[Condition]:
    """Every sequence of length <= depth over alphabet, plus O"""
    conditions: List[Condition] = [BOTTOM]
    for length in range(depth + 1):
        conditions.extend(Seq(tuple(entries)) for entries in itertools.product(alphabet, repeat=length))
    return conditions


def default_window(p: Condition, width: int = 5) -> range:
    """dom(p) .. dom(p) + width"""
    start = domain(p)
    return range(start, start + width + 1)


# === STARRED COMBINATORS === #

# printed forms transcribed to workbench syntax
STAR_SOURCES: Dict[str, Dict[str, str]] = {
    'B': {'lambda': "\\n. \\x. \\y. \\z. x n (C y z)",
          'printed': "C (B C (C (B (B B B)))) C"},
    'C': {'lambda': "\\n. \\x. \\y. \\z. x n z y", 'printed': "C (B C)"},
    'I': {'lambda': "\\n. \\x. x n", 'printed': "C I"},
    'K': {'lambda': "\\n. \\x. \\y. x n", 'printed': "C (B K)"},
    'W': {'lambda': "\\n. \\x. \\y. x n y y", 'printed': "C (B W)"},
    'cc': {'lambda': "\\n. \\x. cc (\\k. x n (\\n. \\x. k (x n)))",
           'printed': "C (C (B (B (B C) C) (C (B (B (B (B (B cc) B)) B)))) C) B"},
}

KSTAR_SOURCE = "\\n. \\x. k (x n)"


@lru_cache(maxsize=None)
def star_forms(name: str) -> Dict[str, Term]:
    """Compiled lambda form and printed combinator form of name*"""
    sources = STAR_SOURCES[name]
    return {
        'lambda': compile_lambda(parse(sources['lambda'], 'lambda')),
        'printed': parse(sources['printed'], 'cterm'),
    }


def starred(name: str) -> Term:
    """Canonical name*: the compiled lambda form"""
    return star_forms(name)['lambda']


@lru_cache(maxsize=1)
def _kstar_template() -> Term:
    return compile_lambda(parse(KSTAR_SOURCE, 'lambda'))


def kstar(stack: Stack, form: str = 'lambda') -> Term:
    """k*_pi in either form"""
    if form == 'printed':
        return App(C, App(B, Cont(stack)))
    return substitute(_kstar_template(), {'k': Cont(stack)})


def _match_kstar(t: Term) -> Optional[Stack]:
    """The stack pi when t is k*_pi in either form"""
    if isinstance(t, App) and t.fun == C and isinstance(t.arg, App) and t.arg.fun == B \
            and isinstance(t.arg.arg, Cont):
        return t.arg.arg.stack
    found: List[Stack] = []

    def walk(template: Term, candidate: Term) -> bool:
        if template == Var('k'):
            if not isinstance(candidate, Cont):
                return False
            found.append(candidate.stack)
            return True
        if isinstance(template, App):
            return isinstance(candidate, App) and walk(template.fun, candidate.fun) \
                and walk(template.arg, candidate.arg)
        return template == candidate

    if walk(_kstar_template(), t) and all(stack == found[0] for stack in found):
        return found[0] if found else None
    return None


def star(t: Term) -> Term:
    """(tu)* = C t* u*; combinators map to their starred table entries"""
    if isinstance(t, Comb):
        return starred(t.name)
    if isinstance(t, App):
        return App(App(C, star(t.fun)), star(t.arg))
    raise StarDomainError(f"star is undefined on {type(t).__name__} nodes")


def star_numeral(n: int) -> Term:
    """(C sigma*)^n 0*"""
    return iter_apply(App(C, star(SUCC)), n, star(ZERO))


@lru_cache(maxsize=1)
def alias_table() -> Dict[str, Term]:
    """Display names of starred terms"""
    table = {f"{name}*": starred(name) for name in STAR_SOURCES}
    table['s*'] = star(SUCC)
    return table


@lru_cache(maxsize=1)
def _star_lookup() -> Dict[Term, str]:
    lookup = {}
    for name in STAR_SOURCES:
        for term in star_forms(name).values():
            lookup[term] = name
    return lookup


# === ALGEBRA B === #

@dataclass(frozen=True)
class BTerm:
    term: Term
    condition: Condition


@dataclass(frozen=True)
class BStack:
    stack: Stack
    condition: Condition


@dataclass(frozen=True)
class BProcess:
    process: Process
    condition: Condition

    def __str__(self) -> str:
        return f"({render(self.process)} , {self.condition})"


def b_push(top: BTerm, rest: BStack) -> BStack:
    """(xi,p).(pi,q) = (xi.pi, pq)"""
    return BStack(Push(top.term, rest.stack), meet(top.condition, rest.condition))


def b_apply(fun: BTerm, arg: BTerm) -> BTerm:
    """(xi,p)(eta,q) = (C xi eta, pq)"""
    return BTerm(App(App(C, fun.term), arg.term), meet(fun.condition, arg.condition))


def b_process(head: BTerm, stack: BStack) -> BProcess:
    """(xi,p) * (pi,q) = (xi * pi, pq)"""
    return BProcess(Process(head.term, stack.stack), meet(head.condition, stack.condition))


def b_lift(name: str) -> BTerm:
    """The combinator name of B is (name*, 1)"""
    return BTerm(starred(name), ONE)


def b_cont(stack: BStack) -> BTerm:
    """k_(pi,p) = (k*_pi, p)"""
    return BTerm(kstar(stack.stack), stack.condition)


def b_push_all(items: List[BTerm], base: BStack) -> BStack:
    stack = base
    for item in reversed(items):
        stack = b_push(item, stack)
    return stack


def _pop(stack: Stack, count: int) -> Tuple[List[Term], Stack]:
    items = []
    while len(items) < count and isinstance(stack, Push):
        items.append(stack.top)
        stack = stack.rest
    return items, stack


def b_step(bp: BProcess) -> Union[BProcess, Stuck]:
    """One B-level execution rule on the first component; the condition is carried unchanged"""
    head, stack = bp.process.head, bp.process.stack

    name = _star_lookup().get(head)
    if name is not None:
        arity = ARITY[name]
    elif _match_kstar(head) is not None:
        arity = 1
    elif isinstance(head, App) and isinstance(head.fun, App) and head.fun.fun == C:
        # B-level application (C xi eta)
        return BProcess(Process(head.fun.arg, Push(head.arg, stack)), bp.condition)
    else:
        return Stuck(StuckReason.INERT_CONSTANT)

    args, rest = _pop(stack, arity)
    if len(args) < arity:
        return Stuck(StuckReason.UNDERFLOW if args else StuckReason.BARE_STACK_CONSTANT)

    if name is None:
        target = Process(args[0], _match_kstar(head))
    elif name in ('I', 'K'):
        target = Process(args[0], rest)
    elif name == 'W':
        target = Process(args[0], Push(args[1], Push(args[1], rest)))
    elif name == 'C':
        target = Process(args[0], Push(args[2], Push(args[1], rest)))
    elif name == 'B':
        target = Process(args[0], Push(App(App(C, args[1]), args[2]), rest))
    else:
        target = Process(args[0], Push(kstar(rest), rest))
    return BProcess(target, bp.condition)


def b_run(bp: BProcess, budget: int = 1000) -> Tuple[List[BProcess], Optional[Stuck]]:
    """Iterate b_step; the second component is None when the budget ran out"""
    states = [bp]
    for _ in range(budget):
        result = b_step(states[-1])
        if isinstance(result, Stuck):
            return states, result
        states.append(result)
    return states, None


# === POLE OF B === #

class BBotStatus(str, Enum):
    IN = 'in'
    NOT_IN = 'not-in'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class BBotResult:
    status: BBotStatus
    witness: Optional[int] = None
    verdicts: Tuple[Tuple[int, Verdict], ...] = ()


def a_instance(bp: BProcess, n: int) -> Process:
    """xi * n.pi, the A-process tested for window point n"""
    return Process(bp.process.head, Push(numeral(n), bp.process.stack))


def bbot_member(bp: BProcess, pole: PoleOracle, n_window: Iterable[int]) -> BBotResult:
    """(xi * pi, p) in the pole of B iff xi * n.pi is in the pole for every n with (p <= n) = 1"""
    if isinstance(bp.condition, Bottom):
        return BBotResult(BBotStatus.IN)

    verdicts = []
    for n in n_window:
        if lle(bp.condition, n) != 1:
            continue
        verdict = pole.member(a_instance(bp, n))
        verdicts.append((n, verdict))
        if verdict is Verdict.NO:
            return BBotResult(BBotStatus.NOT_IN, n, tuple(verdicts))

    if pole.uniform and all(verdict is Verdict.YES for _, verdict in verdicts):
        return BBotResult(BBotStatus.IN, None, tuple(verdicts))
    return BBotResult(BBotStatus.UNKNOWN, None, tuple(verdicts))


# === VERIFICATION CLAUSES === #

@dataclass(frozen=True)
class ClauseSample:
    xi: Term
    eta: Term
    zeta: Term
    pi: Stack
    varpi: Stack
    p: Condition
    q: Condition
    r: Condition
    s: Condition


ClauseBuilder = Callable[[ClauseSample], Tuple[BProcess, BProcess]]


def _application(c: ClauseSample) -> Tuple[BProcess, BProcess]:
    x, y, st = BTerm(c.xi, c.p), BTerm(c.eta, c.q), BStack(c.pi, c.r)
    return b_process(b_apply(x, y), st), b_process(x, b_push(y, st))


def _b_star(c: ClauseSample) -> Tuple[BProcess, BProcess]:
    x, y, z, st = BTerm(c.xi, c.p), BTerm(c.eta, c.q), BTerm(c.zeta, c.r), BStack(c.pi, c.s)
    return (b_process(b_lift('B'), b_push_all([x, y, z], st)),
            b_process(x, b_push(b_apply(y, z), st)))


def _c_star(c: ClauseSample) -> Tuple[BProcess, BProcess]:
    x, y, z, st = BTerm(c.xi, c.p), BTerm(c.eta, c.q), BTerm(c.zeta, c.r), BStack(c.pi, c.s)
    return (b_process(b_lift('C'), b_push_all([x, y, z], st)),
            b_process(x, b_push_all([z, y], st)))


def _i_star(c: ClauseSample) -> Tuple[BProcess, BProcess]:
    x, st = BTerm(c.xi, c.p), BStack(c.pi, c.q)
    return b_process(b_lift('I'), b_push(x, st)), b_process(x, st)


def _k_star(c: ClauseSample) -> Tuple[BProcess, BProcess]:
    x, y, st = BTerm(c.xi, c.p), BTerm(c.eta, c.q), BStack(c.pi, c.r)
    return b_process(b_lift('K'), b_push_all([x, y], st)), b_process(x, st)


def _w_star(c: ClauseSample) -> Tuple[BProcess, BProcess]:
    x, y, st = BTerm(c.xi, c.p), BTerm(c.eta, c.q), BStack(c.pi, c.r)
    return b_process(b_lift('W'), b_push_all([x, y], st)), b_process(x, b_push_all([y, y], st))


def _cc_star(c: ClauseSample) -> Tuple[BProcess, BProcess]:
    x, st = BTerm(c.xi, c.p), BStack(c.pi, c.q)
    return b_process(b_lift('cc'), b_push(x, st)), b_process(x, b_push(b_cont(st), st))


def _k_pi(c: ClauseSample) -> Tuple[BProcess, BProcess]:
    st, x, rest = BStack(c.pi, c.p), BTerm(c.xi, c.q), BStack(c.varpi, c.r)
    return b_process(b_cont(st), b_push(x, rest)), b_process(x, st)


# lhs not in the pole of B implies rhs not in it
BBOT_CLAUSES: Dict[str, ClauseBuilder] = {
    'application': _application,
    'B*': _b_star,
    'C*': _c_star,
    'I*': _i_star,
    'K*': _k_star,
    'W*': _w_star,
    'cc*': _cc_star,
    'k*': _k_pi,
}


# === LITERALS === #

FORCING_GRAMMAR = TERM_GRAMMAR + r'''
condition: BOTTOM                       -> bottom
         | "<" ">"                      -> one
         | "<" INT ("," INT)* ">"       -> seq
bprocess: "(" term "," condition ")" _STAR "(" stack "," condition ")"

BOTTOM: "O"
INT: /[0-9]+/
'''


@v_args(inline=True)
class ForcingTransformer(TermTransformer):
    """Term transformer extended with conditions and B-process literals"""

    def bottom(self, _token):
        return BOTTOM

    def one(self):
        return ONE

    def seq(self, *entries):
        return Seq(tuple(int(entry) for entry in entries))

    def bprocess(self, head, head_condition, stack, stack_condition):
        return b_process(BTerm(head, head_condition), BStack(stack, stack_condition))


_FORCING_PARSER = Lark(FORCING_GRAMMAR, start=['condition', 'bprocess'], parser='lalr')


def parse_condition(text: str) -> Condition:
    """O, <> or <3,5>"""
    return run_parser(_FORCING_PARSER, text, 'condition', ForcingTransformer('term'))


def parse_bprocess(text: str) -> BProcess:
    """(t , <..>) * (s , <..>)"""
    return run_parser(_FORCING_PARSER, text, 'bprocess', ForcingTransformer('term'))

