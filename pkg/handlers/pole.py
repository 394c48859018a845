"""
Pole commands: process membership, membership in the pole of B, coherence
"""

import logging
from typing import Optional, Sequence

from config.settings import Settings
from core.forcing import bbot_member, default_window, parse_bprocess
from core.poles import coherence_check, make_pole
from core.terms import parse
from utils.helpers import Output, Validators, handle_errors, require
from utils.messages import Messages

logger = logging.getLogger(__name__)


class PoleHandler:
    """Handler for pole queries"""

    def __init__(self, output: Output):
        self.output = output

    def _pole(self, kind: str, i: int, j: int, depth: Optional[int], budget: Optional[int],
              targets: Sequence[str]):
        require(Validators.validate_thread(i, j), "thread indices are 0 or 1")
        require(Validators.validate_budget(budget), "budget must be non-negative")
        parsed = frozenset(parse(target, 'process') for target in targets)
        if kind in ('target', 'trace-target'):
            require(bool(parsed), "a target pole needs at least one --target process")
        return make_pole(kind, i, j, depth, budget, parsed, show=self.output.show)

    @handle_errors
    def member(self, text: str, kind: str = 'thread', i: int = 0, j: int = 0,
               depth: Optional[int] = None, budget: Optional[int] = None,
               targets: Sequence[str] = ()) -> int:
        pole = self._pole(kind, i, j, depth, budget, targets)
        answer = pole.explain(parse(text, 'process'))
        logger.debug(f"{pole.kind} pole answered {answer.verdict.value} after {answer.steps} steps")
        self.output.line(Messages.POLE_ANSWER.format(verdict=answer.verdict.value))
        self.output.line(Messages.POLE_EVENT.format(event=answer.event))
        self.output.record('member', text, {'verdict': answer.verdict.value, 'event': answer.event},
                           answer.steps)
        return Settings.EXIT_OK

    @handle_errors
    def bbot(self, text: str, kind: str = 'thread', i: int = 0, j: int = 0,
             depth: Optional[int] = None, budget: Optional[int] = None,
             targets: Sequence[str] = (), width: int = 5) -> int:
        require(width >= 0, "window width must be non-negative")
        pole = self._pole(kind, i, j, depth, budget, targets)
        bp = parse_bprocess(text)
        window = default_window(bp.condition, width)
        result = bbot_member(bp, pole, window)

        self.output.line(Messages.BBOT_ANSWER.format(status=result.status.value))
        if result.witness is not None:
            self.output.line(Messages.BBOT_WITNESS.format(witness=result.witness))
        self.output.record('bbot', text, {
            'status': result.status.value,
            'witness': result.witness,
            'verdicts': {str(n): verdict.value for n, verdict in result.verdicts},
        })
        return Settings.EXIT_OK

    @handle_errors
    def coherence(self, text: str, depth: Optional[int] = None, budget: Optional[int] = None) -> int:
        first, second = coherence_check(parse(text, 'cterm'), depth, budget)
        self.output.line(Messages.COHERENCE_ANSWER.format(first=first.value, second=second.value))
        self.output.record('coherence', text, {'(0,0)': first.value, '(1,1)': second.value})
        return Settings.EXIT_OK
