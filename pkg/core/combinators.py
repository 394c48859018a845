"""
Named closed terms: numerals, successor, iterators, fixed point
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional

from core.compiler import compile_lambda
from core.terms import B, C, I, K, W, App, Const, Term, app, parse

logger = logging.getLogger(__name__)

ZERO: Term = App(K, I)
SUCC: Term = app(B, W, App(B, B))

NUMERAL_SUGAR_LIMIT = 64


class UnknownFixtureError(Exception):
    """Raised for a fixture name outside the table"""


def iter_apply(phi: Term, n: int, alpha: Term) -> Term:
    """(phi)^n alpha"""
    if n < 0:
        raise ValueError("n must be non-negative")
    result = alpha
    for _ in range(n):
        result = App(phi, result)
    return result


def numeral(n: int) -> Term:
    """(sigma)^n 0"""
    return iter_apply(SUCC, n, ZERO)


@lru_cache(maxsize=1)
def numeral_table() -> Dict[Term, int]:
    """Numerals recognised by the printer's {n} sugar"""
    return {numeral(n): n for n in range(NUMERAL_SUGAR_LIMIT + 1)}


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    description: str
    printed: Optional[str] = None
    lambda_form: Optional[str] = None
    canonical: str = 'printed'


# printed forms are written in workbench syntax
FIXTURES: Dict[str, FixtureEntry] = {
    entry.name: entry for entry in [
        FixtureEntry('zero', "0 = KI", printed="K I"),
        FixtureEntry('succ', "sigma = (BW)(B)B", printed="(B W)(B B)"),
        FixtureEntry('A', "A = lambda a lambda f (f)(a)af",
                     printed="W (B (B W (C B)))", lambda_form="\\a. \\f. f (a a f)",
                     canonical='lambda'),
        FixtureEntry('Y', "Y = AA", canonical='lambda'),
        FixtureEntry('Omega', "Omega = (K)(K)I", printed="(K)(K I)",
                     lambda_form="\\d. \\f. \\a. a"),
        FixtureEntry('Sigma', "Sigma = (B)(BW)(B)B", printed="B ((B W)(B B))",
                     lambda_form="\\n. \\d. \\f. \\a. n d f (f a)"),
        FixtureEntry('Sigma2', "Sigma2 = (C)(C)Sigma"),
        FixtureEntry('notAtoB', "theta = lambda x lambda y (cc) lambda k (y)(x)k",
                     lambda_form="\\x. \\y. cc (\\k. y (x k))", canonical='lambda'),
        FixtureEntry('d0', "halting instruction applied to 0", printed="#d {0}"),
        FixtureEntry('d1', "halting instruction applied to 1", printed="#d {1}"),
        FixtureEntry('d2', "majority instruction d applied to 2", printed="#d {2}"),
    ]
}


def fixture_names() -> List[str]:
    return list(FIXTURES)


@lru_cache(maxsize=None)
def fixture_forms(name: str) -> Dict[str, Term]:
    """Every stored form of a fixture, keyed 'printed' / 'lambda'"""
    if name not in FIXTURES:
        raise UnknownFixtureError(f"Unknown fixture {name}; known: {', '.join(FIXTURES)}")
    entry = FIXTURES[name]

    if name == 'Y':
        return {form: App(term, term) for form, term in fixture_forms('A').items()}
    if name == 'Sigma2':
        return {form: App(C, App(C, term)) for form, term in fixture_forms('Sigma').items()}

    forms: Dict[str, Term] = {}
    if entry.printed is not None:
        forms['printed'] = parse(entry.printed, 'cterm')
    if entry.lambda_form is not None:
        forms['lambda'] = compile_lambda(parse(entry.lambda_form, 'lambda'), strict=True)
    return forms


def fixture(name: str, form: Optional[str] = None) -> Term:
    """The closed term stored under name, canonical form unless form is given"""
    forms = fixture_forms(name)
    chosen = form or FIXTURES[name].canonical
    if chosen not in forms:
        raise UnknownFixtureError(f"Fixture {name} has no {chosen} form")
    return forms[chosen]


def halting(j: int) -> Term:
    """d applied to the numeral j"""
    return App(Const('d'), numeral(j))
