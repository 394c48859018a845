"""
Weak head execution machine for processes term * stack
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple, Union

from config.settings import Settings
from core.terms import (
    App, Comb, Const, Cont, Process, Push, Stack, StackConst, Term,
    fresh_name, instruction_constants, make_stack, stack_constants,
)

logger = logging.getLogger(__name__)

ARITY = {'I': 1, 'K': 2, 'W': 2, 'C': 3, 'B': 3, 'cc': 1}


class StuckReason(str, Enum):
    INERT_CONSTANT = 'inert-constant'
    UNDERFLOW = 'underflow'
    BARE_STACK_CONSTANT = 'bare-stack-constant'


@dataclass(frozen=True)
class Next:
    process: Process


@dataclass(frozen=True)
class Stuck:
    reason: StuckReason


@dataclass(frozen=True)
class BudgetExhausted:
    steps: int


@dataclass(frozen=True)
class Reached:
    """The run was stopped by a caller-supplied target predicate"""


StepResult = Union[Next, Stuck]
Terminal = Union[Stuck, BudgetExhausted, Reached]


@dataclass
class Trace:
    states: List[Process]
    terminal: Terminal
    steps: int
    final: Process = field(default=None)

    def __post_init__(self):
        if self.final is None:
            self.final = self.states[-1]

    @property
    def budget_exhausted(self) -> bool:
        return isinstance(self.terminal, BudgetExhausted)

    @property
    def stuck(self) -> bool:
        return isinstance(self.terminal, Stuck)

    def passes_through(self, target: Process) -> bool:
        return any(state == target for state in self.states)

    def elided(self, keep: int) -> List[Tuple[int, Optional[Process]]]:
        """First and last keep states with their indices; None marks the gap"""
        indexed = list(enumerate(self.states))
        if keep <= 0 or len(indexed) <= 2 * keep:
            return indexed
        return indexed[:keep] + [(-1, None)] + indexed[-keep:]


def _pop(stack: Stack, count: int) -> Tuple[List[Term], Stack]:
    items = []
    while len(items) < count and isinstance(stack, Push):
        items.append(stack.top)
        stack = stack.rest
    return items, stack


def step(p: Process) -> StepResult:
    """One execution rule; the head constructor selects it"""
    head, stack = p.head, p.stack

    if isinstance(head, App):
        return Next(Process(head.fun, Push(head.arg, stack)))

    if isinstance(head, Comb):
        arity = ARITY[head.name]
    elif isinstance(head, Cont):
        arity = 1
    else:
        return Stuck(StuckReason.INERT_CONSTANT)

    args, rest = _pop(stack, arity)
    if len(args) < arity:
        return Stuck(StuckReason.UNDERFLOW if args else StuckReason.BARE_STACK_CONSTANT)

    if isinstance(head, Cont):
        return Next(Process(args[0], head.stack))

    name = head.name
    if name in ('I', 'K'):
        return Next(Process(args[0], rest))
    if name == 'W':
        return Next(Process(args[0], Push(args[1], Push(args[1], rest))))
    if name == 'C':
        return Next(Process(args[0], Push(args[2], Push(args[1], rest))))
    if name == 'B':
        return Next(Process(args[0], Push(App(args[1], args[2]), rest)))
    # cc
    return Next(Process(args[0], Push(Cont(rest), rest)))


def applicable_clauses(p: Process) -> List[str]:
    """Every execution rule whose left-hand side matches p, tested independently"""
    depth = len(_pop(p.stack, 3)[0])
    clauses = []
    if isinstance(p.head, App):
        clauses.append('push')
    for name, arity in ARITY.items():
        if p.head == Comb(name) and depth >= arity:
            clauses.append(name)
    if isinstance(p.head, Cont) and depth >= 1:
        clauses.append('k')
    return clauses


def run(p: Process, budget: Optional[int] = None, keep_states: bool = True,
        stop: Optional[Callable[[Process], bool]] = None) -> Trace:
    """Iterate step until stuck, out of budget, or stop(state) holds"""
    if budget is None:
        budget = Settings.MAX_STEPS
    if budget < 0:
        raise ValueError("budget must be non-negative")

    state = p
    states = [p]
    steps = 0
    while True:
        if stop is not None and stop(state):
            terminal: Terminal = Reached()
            break
        result = step(state)
        if isinstance(result, Stuck):
            terminal = result
            break
        if steps >= budget:
            terminal = BudgetExhausted(steps)
            logger.debug(f"Budget of {budget} steps exhausted")
            break
        steps += 1
        state = result.process
        if keep_states:
            states.append(state)

    return Trace(states=states, terminal=terminal, steps=steps, final=state)


def behavioral_numeral(nu: Term, budget: Optional[int] = None) -> Optional[int]:
    """Count phi unwraps of nu * phi . alpha . rho; None when nu is not observably a numeral"""
    remaining = Settings.MAX_STEPS if budget is None else budget
    taken = set(instruction_constants(nu))
    phi = Const(fresh_name('phi', taken))
    alpha = Const(fresh_name('alpha', taken | {phi.name}))
    rho = StackConst(fresh_name('rho', set(stack_constants(nu))))

    count = 0
    state = Process(nu, make_stack([phi, alpha], rho))
    while True:
        trace = run(state, remaining, keep_states=False)
        remaining -= trace.steps
        if not trace.stuck:
            return None
        final = trace.final
        if final.head == alpha and final.stack == rho:
            return count
        if final.head == phi and isinstance(final.stack, Push) and final.stack.rest == rho:
            count += 1
            state = Process(final.stack.top, rho)
            continue
        return None
