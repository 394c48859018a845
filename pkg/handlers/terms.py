"""
Term commands: parse, compile, run, star, numeral, fixture
"""

import logging
from typing import Optional

from config.settings import Settings
from core.combinators import FIXTURES, fixture, fixture_forms, fixture_names, numeral
from core.compiler import RuleLog, compile_lambda
from core.forcing import star, star_numeral
from core.machine import behavioral_numeral, run
from core.terms import parse, render
from utils.helpers import Output, Validators, exit_code_for, format_terminal, format_trace, handle_errors, require
from utils.messages import Messages

logger = logging.getLogger(__name__)


class TermHandler:
    """Handler for the term-level commands"""

    def __init__(self, output: Output):
        self.output = output

    @handle_errors
    def parse(self, text: str, category: str = 'term') -> int:
        require(Validators.validate_category(category), f"Unknown category {category}")
        value = parse(text, category)
        printed = self.output.show(value)
        self.output.line(printed)
        self.output.record('parse', text, printed)
        return Settings.EXIT_OK

    @handle_errors
    def compile(self, text: str, strict: bool = False, show_rules: bool = False) -> int:
        fired: RuleLog = []
        result = compile_lambda(parse(text, 'lambda'), strict=strict, fired=fired)
        printed = self.output.show(result, sugar=False)
        logger.debug(f"Compiled with {len(fired)} rule firings")
        self.output.line(printed)
        if show_rules:
            self.output.line(Messages.COMPILE_RULES.format(rules=' '.join(str(rule) for rule, _ in fired)))
        self.output.record('compile', text, printed, len(fired))
        return Settings.EXIT_OK

    @handle_errors
    def run(self, text: str, budget: Optional[int] = None, trace: bool = False,
            elide: Optional[int] = None) -> int:
        require(Validators.validate_budget(budget), "budget must be non-negative")
        keep = Settings.TRACE_ELIDE if elide is None else elide
        result = run(parse(text, 'process'), budget, keep_states=trace)

        if trace:
            for line in format_trace(result, self.output, keep):
                self.output.line(line)
        else:
            self.output.line(self.output.show(result.final))
            self.output.line(format_terminal(result.terminal))
        self.output.record('run', text, {'final': self.output.show(result.final),
                                         'terminal': format_terminal(result.terminal)}, result.steps)
        return exit_code_for(result)

    @handle_errors
    def star(self, text: str) -> int:
        result = star(parse(text, 'cterm'))
        printed = self.output.show(result)
        self.output.line(printed)
        self.output.record('star', text, printed)
        return Settings.EXIT_OK

    @handle_errors
    def numeral(self, n: int, starred: bool = False, check: bool = False) -> int:
        require(n >= 0, "n must be non-negative")
        term = star_numeral(n) if starred else numeral(n)
        # {n} sugar would hide the plain numeral
        printed = self.output.show(term, sugar=starred)
        self.output.line(printed)
        behaves: Optional[int] = None
        if check:
            behaves = behavioral_numeral(term)
            self.output.line(Messages.NOT_A_NUMERAL if behaves is None
                             else Messages.BEHAVIORAL_NUMERAL.format(value=behaves))
        self.output.record('numeral', str(n), {'term': printed, 'behaves': behaves})
        return Settings.EXIT_OK

    @handle_errors
    def fixture(self, name: Optional[str] = None, form: Optional[str] = None) -> int:
        if name is None:
            for entry in fixture_names():
                self.output.line(Messages.FIXTURE_LINE.format(name=entry, description=FIXTURES[entry].description))
            self.output.record('fixture', '', fixture_names())
            return Settings.EXIT_OK

        if form is None:
            forms = fixture_forms(name)
            self.output.line(Messages.FIXTURE_LINE.format(name=name, description=FIXTURES[name].description))
            for key, term in forms.items():
                self.output.line(Messages.FIXTURE_FORM.format(form=key, term=self.output.show(term, sugar=False)))
            self.output.record('fixture', name, {key: render(term) for key, term in forms.items()})
            return Settings.EXIT_OK

        printed = self.output.show(fixture(name, form), sugar=False)
        self.output.line(printed)
        self.output.record('fixture', name, printed)
        return Settings.EXIT_OK
