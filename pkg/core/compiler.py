"""
Bracket abstraction: lambda terms to closed combinatory terms
Rules are tried in order 1..6 and the first one that applies fires
"""

import logging
from functools import lru_cache
from typing import List, Optional, Tuple

from core.terms import Abs, App, B, C, I, K, W, Term, Var, app, free_vars, size

logger = logging.getLogger(__name__)

RuleLog = List[Tuple[int, Term]]


class StrictCompileError(Exception):
    """A strict compilation left free variables behind"""


@lru_cache(maxsize=65536)
def occurs(name: str, t: Term) -> bool:
    """Whether Var(name) occurs in the binder-free term t"""
    if isinstance(t, Var):
        return t.name == name
    if isinstance(t, App):
        return occurs(name, t.fun) or occurs(name, t.arg)
    return False


def mlbd(x: str, t: Term, fired: Optional[RuleLog] = None) -> Term:
    """Eliminate x from t; fired, when given, receives (rule, subterm) per firing"""
    log = fired if fired is not None else []
    while True:
        if not occurs(x, t):
            log.append((1, t))
            return App(K, t)
        if t == Var(x):
            log.append((2, t))
            return I
        fun, arg = t.fun, t.arg
        if not occurs(x, arg):
            log.append((3, t))
            return app(C, mlbd(x, fun, log), arg)
        if arg == Var(x):
            if not occurs(x, fun):
                log.append((4, t))
                return fun
            log.append((5, t))
            return App(W, mlbd(x, fun, log))
        log.append((6, t))
        t = app(B, fun, arg.fun, arg.arg)


def lam(x: str, t: Term, fired: Optional[RuleLog] = None) -> Term:
    """lambda x t, defined as mlbd x (I)t"""
    return mlbd(x, App(I, t), fired)


def firing_bound(t: Term) -> int:
    """Upper bound on rule firings for one abstraction over t"""
    n = size(t) + 1
    return 4 * n * n + 16


def compile_lambda(t: Term, strict: bool = False, fired: Optional[RuleLog] = None) -> Term:
    """Innermost binders first, so mlbd only sees binder-free terms"""
    result = _compile(t, fired)
    if strict:
        remaining = free_vars(result)
        if remaining:
            raise StrictCompileError(f"Free variables after compilation: {', '.join(sorted(remaining))}")
    return result


def _compile(t: Term, fired: Optional[RuleLog]) -> Term:
    if isinstance(t, Abs):
        return lam(t.var, _compile(t.body, fired), fired)
    if isinstance(t, App):
        return App(_compile(t.fun, fired), _compile(t.arg, fired))
    return t


def lambda_closure(variables: List[str], t: Term) -> Term:
    """The compiled form of lambda x1 ... lambda xn t"""
    body = t
    for name in reversed(variables):
        body = Abs(name, body)
    return compile_lambda(body)
