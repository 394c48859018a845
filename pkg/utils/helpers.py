"""
Helper functions, decorators, validators and output formatting
Shared by every handler
"""

import logging
from functools import wraps
from typing import Any, List, Optional

import click
import orjson
from pydantic import BaseModel, ValidationError

from config.settings import Settings
from core.combinators import UnknownFixtureError
from core.compiler import StrictCompileError
from core.derivations import DerivationSyntaxError
from core.forcing import StarDomainError
from core.formulas import FormulaSyntaxError
from core.machine import BudgetExhausted, Reached, Stuck, Terminal, Trace
from core.poles import ThreadError
from core.realizers import ExtractionError
from core.terms import CATEGORIES, PLAIN, SUGAR, PrintOptions, TermSyntaxError, render
from utils.messages import Messages

logger = logging.getLogger(__name__)

SYNTAX_ERRORS = (TermSyntaxError, FormulaSyntaxError, DerivationSyntaxError)
INPUT_ERRORS = (StrictCompileError, StarDomainError, UnknownFixtureError, ThreadError,
                ExtractionError, ValidationError, ValueError)


# === OUTPUT === #

class OutputRecord(BaseModel):
    """One line of --json output"""
    kind: str
    input: str
    result: Any
    steps: Optional[int] = None


class Output:
    """Where a command writes its results: plain lines or JSON records"""

    def __init__(self, json_mode: bool = False, prefix_style: bool = False):
        self.json_mode = json_mode
        self.prefix_style = prefix_style

    def options(self, sugar: bool = True) -> PrintOptions:
        base = SUGAR if sugar else PLAIN
        return PrintOptions(base.numerals, base.aliases, self.prefix_style)

    def show(self, value, sugar: bool = True) -> str:
        return render(value, self.options(sugar))

    def line(self, text: str) -> None:
        """Plain text output; suppressed in JSON mode"""
        if not self.json_mode:
            click.echo(text)

    def record(self, kind: str, source: str, result: Any, steps: Optional[int] = None) -> None:
        """JSON record; suppressed in text mode"""
        if self.json_mode:
            record = OutputRecord(kind=kind, input=source, result=result, steps=steps)
            click.echo(orjson.dumps(record.model_dump()).decode())


# === DECORATORS === #

def handle_errors(func):
    """Turn domain errors raised by a command into a diagnostic and exit code 1"""
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except SYNTAX_ERRORS as e:
            logger.error(f"Rejected input in {func.__name__}: {e}")
            click.echo(Messages.ERROR_SYNTAX.format(error=e), err=True)
        except INPUT_ERRORS as e:
            logger.error(f"Rejected input in {func.__name__}: {e}")
            click.echo(Messages.ERROR_INPUT.format(error=e), err=True)
        except Exception as e:
            logger.error(f"Error in {func.__name__}: {e}", exc_info=True)
            click.echo(Messages.ERROR_GENERIC.format(error=e), err=True)
        return Settings.EXIT_USAGE
    return wrapper


# === VALIDATORS === #

class Validators:
    """Argument checks shared by the handlers"""

    @staticmethod
    def validate_category(category: str) -> bool:
        return category in CATEGORIES

    @staticmethod
    def validate_budget(budget: Optional[int]) -> bool:
        return budget is None or budget >= 0

    @staticmethod
    def validate_thread(i: int, j: int) -> bool:
        return i in (0, 1) and j in (0, 1)


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


# === FORMATTERS === #

def format_terminal(terminal: Terminal) -> str:
    if isinstance(terminal, Stuck):
        return Messages.TRACE_STUCK.format(reason=terminal.reason.value)
    if isinstance(terminal, BudgetExhausted):
        return Messages.TRACE_BUDGET
    if isinstance(terminal, Reached):
        return Messages.TRACE_REACHED
    return str(terminal)


def format_trace(trace: Trace, output: Output, keep: int = 0) -> List[str]:
    """STEP lines for every kept state, '...' over an elided middle, then the terminal line"""
    lines = []
    for index, state in trace.elided(keep):
        if state is None:
            lines.append(Messages.TRACE_GAP)
        else:
            lines.append(Messages.TRACE_STEP.format(index=index, process=output.show(state)))
    lines.append(format_terminal(trace.terminal))
    return lines


def exit_code_for(trace: Trace) -> int:
    if trace.budget_exhausted:
        logger.warning(Messages.BUDGET_WARNING.format(budget=trace.steps))
        return Settings.EXIT_BUDGET
    return Settings.EXIT_OK
