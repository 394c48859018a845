"""
Realizer commands: theta/tau generation, guarded statements, program extraction,
derivation checking
"""

import logging
from typing import Optional

from config.settings import Settings
from core.derivations import check_derivation, extract_program, parse_derivation
from core.formulas import is_elementary, parse_formula, show
from core.realizers import PipelineInputs, extract, generate, guarded_statements, pipeline_parts
from core.terms import I, parse
from utils.helpers import Output, handle_errors, require
from utils.messages import Messages

logger = logging.getLogger(__name__)


class RealizerHandler:
    """Handler for generator, extraction and proof commands"""

    def __init__(self, output: Output):
        self.output = output

    def _elementary(self, text: str):
        formula = parse_formula(text)
        require(is_elementary(formula), f"{show(formula)} is not an elementary formula")
        return formula

    @handle_errors
    def gen(self, name: str, formula_text: str) -> int:
        term = generate(name, self._elementary(formula_text))
        printed = self.output.show(term)
        self.output.line(printed)
        self.output.record('gen', f"{name} {formula_text}", printed)
        return Settings.EXIT_OK

    @handle_errors
    def statements(self, formula_text: str, bound: Optional[int] = None) -> int:
        require(bound is None or bound >= 0, "bound must be non-negative")
        formula = self._elementary(formula_text)
        records = []
        for label, realizer, statement in guarded_statements(formula, bound=bound):
            printed = self.output.show(realizer)
            self.output.line(Messages.STATEMENT.format(label=label, realizer=printed, formula=show(statement)))
            records.append({'label': label, 'realizer': printed, 'formula': show(statement)})
        self.output.record('statements', formula_text, records)
        return Settings.EXIT_OK

    @handle_errors
    def extract(self, phi0_text: str, formula_text: str, h_text: Optional[str] = None,
                delta_text: Optional[str] = None, show_parts: bool = False) -> int:
        inputs = PipelineInputs(
            phi0=parse(phi0_text, 'cterm'),
            formula=self._elementary(formula_text),
            h=parse(h_text, 'cterm') if h_text else I,
            delta=parse(delta_text, 'cterm') if delta_text else I,
        )
        if show_parts:
            parts = pipeline_parts(inputs)
            for name, term in parts.items():
                self.output.line(Messages.PIPELINE_PART.format(name=name, term=self.output.show(term)))
            self.output.record('extract', phi0_text, {name: self.output.show(term) for name, term in parts.items()})
            return Settings.EXIT_OK

        printed = self.output.show(extract(inputs))
        self.output.line(printed)
        self.output.record('extract', phi0_text, printed)
        return Settings.EXIT_OK

    @handle_errors
    def check_proof(self, text: str, source: str = '-', show_program: bool = False) -> int:
        derivation = parse_derivation(text)
        accepted, node, reason = check_derivation(derivation)
        if not accepted:
            logger.info(f"Derivation {source} rejected at {node}: {reason}")
            self.output.line(Messages.PROOF_REJECTED.format(node=node, reason=reason))
            self.output.record('check-proof', source, {'accepted': False, 'node': node, 'reason': reason})
            return Settings.EXIT_OK

        self.output.line(Messages.PROOF_ACCEPTED)
        program = None
        if show_program:
            program = self.output.show(extract_program(derivation))
            self.output.line(Messages.PROOF_PROGRAM.format(term=program))
        self.output.record('check-proof', source, {'accepted': True, 'program': program})
        return Settings.EXIT_OK
