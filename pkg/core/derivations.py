"""
Natural deduction derivations over lambda terms, and their checker

One judgment per line:

    <id> <rule> [premise ids] [x:=tau] | x : A; y : B |- <term> : <formula>

Rules are ax, app, lam, gen, inst, peirce and efq (or their numbers 1..7).
Blank lines and lines starting with '#' are ignored.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from core.compiler import compile_lambda
from core.formulas import (
    Bot, Forall, Formula, FormulaSyntaxError, Imp, LTerm, free_lvars, parse_formula,
    parse_lterm, show, subst_formula,
)
from core.terms import CC, Abs, App, Term, TermSyntaxError, Var, parse, render

logger = logging.getLogger(__name__)

RULES = {'ax': 1, 'app': 2, 'lam': 3, 'gen': 4, 'inst': 5, 'peirce': 6, 'efq': 7}
RULE_NAMES = {number: name for name, number in RULES.items()}
PREMISE_COUNT = {'ax': 0, 'app': 2, 'lam': 1, 'gen': 1, 'inst': 1, 'peirce': 0, 'efq': 1}

LINE = re.compile(r"^(?P<header>[^|]*)\|(?P<context>.*?)\|-(?P<judgment>.*)$")
HEADER = re.compile(r'^(\w+)\s+(\w+)((?:\s+\w+)*)\s*(?:\[\s*(\w+)\s*:=\s*(.+?)\s*\])?\s*$')


class DerivationSyntaxError(Exception):
    """Raised for a derivation file line that cannot be read"""


@dataclass(frozen=True)
class Judgment:
    id: str
    rule: str
    premises: Tuple[str, ...]
    context: Tuple[Tuple[str, Formula], ...]
    term: Term
    formula: Formula
    instance: Optional[Tuple[str, LTerm]] = None

    def context_map(self) -> Dict[str, Formula]:
        return dict(self.context)

    def __str__(self) -> str:
        context = '; '.join(f"{name} : {show(f)}" for name, f in self.context)
        return f"{context} |- {render(self.term)} : {show(self.formula)}"


@dataclass(frozen=True)
class Derivation:
    judgments: Tuple[Judgment, ...]

    @property
    def conclusion(self) -> Judgment:
        return self.judgments[-1]


# === PARSING === #

def _parse_line(line: str, number: int) -> Judgment:
    parts = LINE.match(line)
    if not parts:
        raise DerivationSyntaxError(f"Line {number}: expected '<id> <rule> ... | context |- term : formula'")
    header, context_text, judgment_text = parts.group("header", "context", "judgment")

    match = HEADER.match(header.strip())
    if not match:
        raise DerivationSyntaxError(f"Line {number}: malformed header {header.strip()!r}")
    node_id, rule, premises, inst_var, inst_term = match.groups()
    if rule.isdigit():
        rule = RULE_NAMES.get(int(rule), rule)
    if rule not in RULES:
        raise DerivationSyntaxError(f"Line {number}: unknown rule {rule}")

    try:
        context = []
        for entry in filter(None, (part.strip() for part in context_text.split(';'))):
            name, _, formula = entry.partition(':')
            context.append((name.strip(), parse_formula(formula)))
        term_text, _, formula_text = judgment_text.partition(':')
        term = parse(term_text, 'lambda')
        formula = parse_formula(formula_text)
        instance = (inst_var, parse_lterm(inst_term)) if inst_var else None
    except (TermSyntaxError, FormulaSyntaxError) as e:
        raise DerivationSyntaxError(f"Line {number}: {e}")

    return Judgment(node_id, rule, tuple(premises.split()), tuple(context), term, formula, instance)


def parse_derivation(text: str) -> Derivation:
    judgments = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        judgments.append(_parse_line(stripped, number))
    if not judgments:
        raise DerivationSyntaxError("Empty derivation")
    return Derivation(tuple(judgments))


# === CHECKING === #

def _is_peirce(f: Formula) -> bool:
    """((A -> B) -> A) -> A"""
    return isinstance(f, Imp) and isinstance(f.ante, Imp) and isinstance(f.ante.ante, Imp) \
        and f.ante.ante.ante == f.cons and f.ante.cons == f.cons


def _check_node(node: Judgment, premises: List[Judgment]) -> Optional[str]:
    """None when node follows from premises by its rule, else the reason it does not"""
    context = node.context_map()
    if len(context) != len(node.context):
        return "context declares a variable twice"
    if len(premises) != PREMISE_COUNT[node.rule]:
        return f"rule {node.rule} takes {PREMISE_COUNT[node.rule]} premises, got {len(premises)}"
    same_context = all(premise.context_map() == context for premise in premises)

    if node.rule == 'ax':
        if not isinstance(node.term, Var) or node.term.name not in context:
            return "axiom term must be a variable declared in the context"
        if context[node.term.name] != node.formula:
            return f"{node.term.name} is declared with {show(context[node.term.name])}"
        return None

    if node.rule == 'peirce':
        if node.term != CC:
            return "Peirce's law is realized by cc"
        if not _is_peirce(node.formula):
            return "formula is not of the shape ((A -> B) -> A) -> A"
        return None

    if node.rule == 'app':
        fun, arg = premises
        if not same_context:
            return "premises and conclusion have different contexts"
        if node.term != App(fun.term, arg.term):
            return "term is not the application of the premise terms"
        if fun.formula != Imp(arg.formula, node.formula):
            return "first premise is not an implication from the second premise to the conclusion"
        return None

    if node.rule == 'lam':
        (body,) = premises
        if not isinstance(node.term, Abs) or node.term.body != body.term:
            return "term is not an abstraction of the premise term"
        name = node.term.var
        inner = body.context_map()
        if name in context or name not in inner:
            return f"{name} must be declared in the premise context only"
        if {k: v for k, v in inner.items() if k != name} != context:
            return "premise context is not the conclusion context extended by the bound variable"
        if node.formula != Imp(inner[name], body.formula):
            return "formula is not an implication from the bound variable's formula"
        return None

    (premise,) = premises
    if not same_context:
        return "premise and conclusion have different contexts"
    if node.term != premise.term:
        return "rule does not change the term"

    if node.rule == 'gen':
        if not isinstance(node.formula, Forall) or node.formula.body != premise.formula:
            return "formula is not the generalization of the premise"
        variable = node.formula.var
        if any(variable in free_lvars(f) for f in context.values()):
            return f"{variable} appears in a hypothesis"
        return None

    if node.rule == 'inst':
        if not isinstance(premise.formula, Forall):
            return "premise is not universally quantified"
        if node.instance is None:
            return "instantiation needs an [x:=tau] annotation"
        variable, value = node.instance
        if variable != premise.formula.var:
            return f"premise quantifies {premise.formula.var}, not {variable}"
        try:
            expected = subst_formula(premise.formula.body, variable, value)
        except FormulaSyntaxError as e:
            return str(e)
        if node.formula != expected:
            return f"expected {show(expected)}"
        return None

    # efq
    if not isinstance(premise.formula, Bot):
        return "premise must prove F"
    return None


def check_derivation(derivation: Derivation) -> Tuple[bool, Optional[str], str]:
    """(accepted, failing node id, reason); judgments may only cite earlier ones"""
    seen: Dict[str, Judgment] = {}
    for node in derivation.judgments:
        if node.id in seen:
            return False, node.id, "duplicate judgment id"
        missing = [ref for ref in node.premises if ref not in seen]
        if missing:
            return False, node.id, f"unknown premise {missing[0]}"
        reason = _check_node(node, [seen[ref] for ref in node.premises])
        if reason is not None:
            logger.debug(f"Rejected node {node.id}: {reason}")
            return False, node.id, reason
        seen[node.id] = node
    return True, None, "accepted"


def extract_program(derivation: Derivation) -> Term:
    """Compiled conclusion term of a derivation"""
    return compile_lambda(derivation.conclusion.term)
