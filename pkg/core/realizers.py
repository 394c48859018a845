"""
Realizer generators: the theta/tau recursion over elementary formulas, the
integer conversions T0/T1, the collapsing realizers and the extraction pipeline
"""

import logging
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from config.settings import Settings
from core.combinators import ZERO, fixture
from core.compiler import compile_lambda
from core.forcing import StarDomainError, all_conditions, star
from core.formulas import (
    Bot, EqHook, Fn, ForallFin, ForallInt, Formula, Imp, Lit, Ref, Top, is_elementary, show,
)
from core.terms import C, I, App, Term, is_closed, is_proof_like, is_term, parse, render, substitute
from core.truth import sub_transform, sup_transform

logger = logging.getLogger(__name__)


class ExtractionError(Exception):
    """Raised for pipeline inputs outside the extraction's domain"""


def _compile(source: str, **placeholders: Term) -> Term:
    """Compile a lambda literal after plugging closed terms into its free placeholders"""
    template = parse(source, 'lambda')
    return compile_lambda(substitute(template, placeholders), strict=True)


# === CONVERSIONS === #

# n * (C B (C s*)) . f . 0* . pi reduces to f * n* . pi
T0_SOURCE = "\\f. \\n. n (C B (C s*)) f (C K* I*)"
T1_SOURCE = "\\f. \\n. n {0} (C big_sigma) omega (C B succ) f {0}"
THETA0_SOURCE = "\\n. \\k. \\x. x n"
THETA1_SOURCE = "\\n. \\x. n (C B (C s*)) (C x) (C K* I*) (succ n)"


@lru_cache(maxsize=None)
def t_conversion(which: str) -> Term:
    """T0 turns n into n*; T1 turns n* back into a term behaving as n"""
    if which == 'T0':
        return _compile(T0_SOURCE)
    if which == 'T1':
        return _compile(T1_SOURCE, big_sigma=fixture('Sigma'), omega=fixture('Omega'),
                        succ=fixture('succ'))
    raise ValueError(f"Unknown conversion {which}; expected T0 or T1")


@lru_cache(maxsize=1)
def collapse_realizers() -> Tuple[Term, Term]:
    """theta_0 and theta_1 of the collapsing function"""
    return _compile(THETA0_SOURCE), _compile(THETA1_SOURCE, succ=fixture('succ'))


# === THETA / TAU === #

IDENTITY_SOURCE = "\\n. \\x. x"

THETA_IMP_SOURCE = "\\n. \\x. \\y. th n (x (ta n y))"
THETA_INT = {
    0: "\\n. \\x. t1 (\\m. th n (x m))",
    1: "\\n. \\x. \\m. th n (t0 x m)",
}
TAU = {
    0: "\\n. \\x. \\m. th m x",
    1: "\\n. \\x. th n (x n)",
}


def _check_kind(kind: int) -> None:
    if kind not in (0, 1):
        raise ValueError("kind must be 0 or 1")


@lru_cache(maxsize=None)
def theta(kind: int, u: Formula) -> Term:
    """theta^kind_U, mutually recursive with tau"""
    _check_kind(kind)
    if isinstance(u, (Top, Bot)):
        return _compile(IDENTITY_SOURCE)
    if isinstance(u, (EqHook, ForallFin)):
        return theta(kind, u.body)
    if isinstance(u, Imp):
        # theta^0 uses tau^1 of the antecedent and theta^1 uses tau^0
        return _compile(THETA_IMP_SOURCE, th=theta(kind, u.cons), ta=tau(1 - kind, u.ante))
    if isinstance(u, ForallInt):
        if kind == 0:
            return _compile(THETA_INT[0], th=theta(0, u.body), t1=t_conversion('T1'))
        return _compile(THETA_INT[1], th=theta(1, u.body), t0=t_conversion('T0'))
    raise ExtractionError(f"{type(u).__name__} is not an elementary formula")


@lru_cache(maxsize=None)
def tau(kind: int, u: Formula) -> Term:
    _check_kind(kind)
    return _compile(TAU[kind], th=theta(kind, u))


def generate(name: str, u: Formula) -> Term:
    """theta0, theta1, tau0 or tau1 by name"""
    table = {'theta0': (theta, 0), 'theta1': (theta, 1), 'tau0': (tau, 0), 'tau1': (tau, 1)}
    if name not in table:
        raise ValueError(f"Unknown generator {name}; expected one of {', '.join(table)}")
    function, kind = table[name]
    logger.debug(f"Generating {name} for {show(u)}")
    return function(kind, u)


# === GUARDED STATEMENTS === #

def guarded_statements(u: Formula, conditions: Optional[List] = None,
                       bound: Optional[int] = None) -> List[Tuple[str, Term, Formula]]:
    """The four guarded transfer statements for U, each paired with its realizer"""
    bound = Settings.INT_BOUND if bound is None else bound
    chosen = conditions if conditions is not None else all_conditions(Settings.COND_DEPTH,
                                                                       Settings.condition_alphabet())
    q_range = tuple(Lit(q) for q in chosen)
    p, n = Ref('p'), Ref('n')

    def guarded(body: Formula) -> Formula:
        hook = EqHook(Fn('lle', (p, n)), Lit(1), body)
        return ForallFin(p.name, q_range, ForallInt(n.name, bound, hook))

    lower = sub_transform(u, p, chosen, bound)
    upper = sup_transform(u, p, chosen, bound)
    return [
        ('(i)', theta(0, u), guarded(Imp(u, lower))),
        ('(ii)', theta(1, u), guarded(Imp(lower, u))),
        ('(iii)', tau(0, u), guarded(Imp(u, upper))),
        ('(iv)', tau(1, u), guarded(Imp(upper, u))),
    ]


def transfer_to_forcing(u: Formula, theta_term: Term) -> Term:
    """(tau^0_U) 0 theta: from a realizer of U to one of U^1"""
    return App(App(tau(0, u), ZERO), theta_term)


def transfer_from_forcing(u: Formula, theta_term: Term) -> Term:
    """(tau^1_U) 0 theta: from a realizer of U^1 back to one of U"""
    return App(App(tau(1, u), ZERO), theta_term)


# === EXTRACTION === #

class PipelineInputs(BaseModel):
    """Closed proof-like inputs of the extraction pipeline"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    # terms and formulas are checked by the validators below, not coerced
    phi0: Any
    formula: Any
    h: Any = I
    delta: Any = I

    @field_validator('phi0', 'h', 'delta')
    @classmethod
    def closed_proof_like(cls, value: Any) -> Term:
        if not is_term(value):
            raise ValueError(f"expected a term, got {type(value).__name__}")
        if not is_closed(value):
            raise ValueError(f"{render(value)} has free variables")
        if not is_proof_like(value):
            raise ValueError(f"{render(value)} is not proof-like")
        return value

    @field_validator('formula')
    @classmethod
    def elementary(cls, value: Any) -> Formula:
        if not is_elementary(value):
            raise ValueError(f"{value!r} is not an elementary formula")
        return value


PHI1_SOURCE = "\\x. phi0 (h x)"


def extract(inputs: PipelineInputs) -> Term:
    """Phi = (tau^1_F) 0 (C Phi1* Delta) with Phi1 = lambda x (Phi0)(H)x"""
    phi1 = _compile(PHI1_SOURCE, phi0=inputs.phi0, h=inputs.h)
    try:
        psi = App(App(C, star(phi1)), inputs.delta)
    except StarDomainError as e:
        raise ExtractionError(f"Cannot star {render(phi1)}: {e}")
    result = App(App(tau(1, inputs.formula), ZERO), psi)
    logger.info(f"Extracted program for {show(inputs.formula)}")
    return result


def pipeline_parts(inputs: PipelineInputs) -> Dict[str, Term]:
    """Intermediate terms of the pipeline, for display"""
    phi1 = _compile(PHI1_SOURCE, phi0=inputs.phi0, h=inputs.h)
    return {
        'Phi1': phi1,
        'Psi': App(App(C, star(phi1)), inputs.delta),
        'tau1': tau(1, inputs.formula),
        'Phi': extract(inputs),
    }
