"""
Elementary formulas and the ground terms that appear in their hooks

Ground terms evaluate to naturals or conditions under an environment of
bound variables. Atoms and the plain first-order quantifier are only used
by the derivation checker; the evaluator rejects them.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Mapping, Set, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import LarkError, UnexpectedInput, VisitError

from core.forcing import BOTTOM, ONE, Bottom, Condition, Seq, lle, meet

logger = logging.getLogger(__name__)

Ground = Union[int, Bottom, Seq]


class FormulaSyntaxError(Exception):
    """Raised for malformed formula literals or ill-typed ground terms"""


# === GROUND TERMS === #

@dataclass(frozen=True)
class Lit:
    value: Ground


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Fn:
    name: str
    args: Tuple['LTerm', ...]


LTerm = Union[Lit, Ref, Fn]


def _nat(value: Ground) -> int:
    if not isinstance(value, int):
        raise FormulaSyntaxError(f"Expected a natural, got {value}")
    return value


def _cond(value: Ground) -> Condition:
    if isinstance(value, int):
        raise FormulaSyntaxError(f"Expected a condition, got {value}")
    return value


FUNCTIONALS: Dict[str, Tuple[int, Callable[..., Ground]]] = {
    'meet': (2, lambda p, q: meet(_cond(p), _cond(q))),
    'lle': (2, lambda p, n: lle(_cond(p), _nat(n))),
    'succ': (1, lambda n: _nat(n) + 1),
    'add': (2, lambda m, n: _nat(m) + _nat(n)),
    'mul': (2, lambda m, n: _nat(m) * _nat(n)),
}


def evaluate(t: LTerm, env: Mapping[str, Ground]) -> Ground:
    if isinstance(t, Lit):
        return t.value
    if isinstance(t, Ref):
        if t.name not in env:
            raise FormulaSyntaxError(f"Unbound variable {t.name}")
        return env[t.name]
    arity, function = FUNCTIONALS[t.name]
    return function(*(evaluate(arg, env) for arg in t.args))


def lterm_vars(t: LTerm) -> FrozenSet[str]:
    if isinstance(t, Ref):
        return frozenset([t.name])
    if isinstance(t, Fn):
        return frozenset().union(*(lterm_vars(arg) for arg in t.args))
    return frozenset()


def subst_lterm(t: LTerm, name: str, value: LTerm) -> LTerm:
    if isinstance(t, Ref):
        return value if t.name == name else t
    if isinstance(t, Fn):
        return Fn(t.name, tuple(subst_lterm(arg, name, value) for arg in t.args))
    return t


# === FORMULAS === #

@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class EqHook:
    """lhs = rhs hooks body"""
    lhs: LTerm
    rhs: LTerm
    body: 'Formula'
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash(('EqHook', self.lhs, self.rhs, self.body)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class ForallFin:
    var: str
    range: Tuple[LTerm, ...]
    body: 'Formula'
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash(('ForallFin', self.var, self.range, self.body)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Imp:
    ante: 'Formula'
    cons: 'Formula'
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash(('Imp', self.ante, self.cons)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class ForallInt:
    """Integer quantifier up to bound; starred instances push n* instead of n"""
    var: str
    bound: int
    body: 'Formula'
    starred: bool = False
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash(('ForallInt', self.var, self.bound, self.body, self.starred)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Atom:
    name: str
    args: Tuple[LTerm, ...] = ()


@dataclass(frozen=True)
class Forall:
    var: str
    body: 'Formula'


Formula = Union[Top, Bot, EqHook, ForallFin, Imp, ForallInt, Atom, Forall]
ELEMENTARY_TYPES = (Top, Bot, EqHook, ForallFin, Imp, ForallInt)

TOP = Top()
BOT = Bot()


def is_elementary(f: Formula) -> bool:
    if isinstance(f, (Top, Bot)):
        return True
    if isinstance(f, (EqHook, ForallFin, ForallInt)):
        return is_elementary(f.body)
    if isinstance(f, Imp):
        return is_elementary(f.ante) and is_elementary(f.cons)
    return False


def depth(f: Formula) -> int:
    if isinstance(f, (EqHook, ForallFin, ForallInt, Forall)):
        return 1 + depth(f.body)
    if isinstance(f, Imp):
        return 1 + max(depth(f.ante), depth(f.cons))
    return 0


def free_lvars(f: Formula) -> FrozenSet[str]:
    """Variables of ground terms not bound by a quantifier"""
    if isinstance(f, EqHook):
        return lterm_vars(f.lhs) | lterm_vars(f.rhs) | free_lvars(f.body)
    if isinstance(f, ForallFin):
        in_range = frozenset().union(*(lterm_vars(t) for t in f.range))
        return in_range | (free_lvars(f.body) - {f.var})
    if isinstance(f, (ForallInt, Forall)):
        return free_lvars(f.body) - {f.var}
    if isinstance(f, Imp):
        return free_lvars(f.ante) | free_lvars(f.cons)
    if isinstance(f, Atom):
        return frozenset().union(*(lterm_vars(t) for t in f.args))
    return frozenset()


def bound_lvars(f: Formula) -> Set[str]:
    names: Set[str] = set()
    if isinstance(f, (ForallFin, ForallInt, Forall)):
        names.add(f.var)
    if isinstance(f, (EqHook, ForallFin, ForallInt, Forall)):
        names |= bound_lvars(f.body)
    if isinstance(f, Imp):
        names |= bound_lvars(f.ante) | bound_lvars(f.cons)
    return names


def subst_formula(f: Formula, name: str, value: LTerm) -> Formula:
    """Replace free occurrences of name; raises when value would be captured"""
    if isinstance(f, EqHook):
        return EqHook(subst_lterm(f.lhs, name, value), subst_lterm(f.rhs, name, value),
                      subst_formula(f.body, name, value))
    if isinstance(f, Imp):
        return Imp(subst_formula(f.ante, name, value), subst_formula(f.cons, name, value))
    if isinstance(f, Atom):
        return Atom(f.name, tuple(subst_lterm(arg, name, value) for arg in f.args))
    if isinstance(f, (ForallFin, ForallInt, Forall)):
        if isinstance(f, ForallFin):
            f = ForallFin(f.var, tuple(subst_lterm(t, name, value) for t in f.range), f.body)
        if f.var == name or name not in free_lvars(f.body):
            return f
        if f.var in lterm_vars(value):
            raise FormulaSyntaxError(f"Substituting for {name} would capture {f.var}")
        if isinstance(f, ForallFin):
            return ForallFin(f.var, f.range, subst_formula(f.body, name, value))
        if isinstance(f, ForallInt):
            return ForallInt(f.var, f.bound, subst_formula(f.body, name, value), f.starred)
        return Forall(f.var, subst_formula(f.body, name, value))
    return f


# === PRINTER === #

def show_lterm(t: LTerm) -> str:
    if isinstance(t, Lit):
        return str(t.value)
    if isinstance(t, Ref):
        return t.name
    return f"{t.name}({', '.join(show_lterm(arg) for arg in t.args)})"


def show(f: Formula) -> str:
    """Literal syntax; show(parse_formula(s)) reparses to the same formula"""
    if isinstance(f, Top):
        return 'T'
    if isinstance(f, Bot):
        return 'F'
    if isinstance(f, Atom):
        if not f.args:
            return f.name
        return f"{f.name}({', '.join(show_lterm(arg) for arg in f.args)})"
    if isinstance(f, EqHook):
        return f"[{show_lterm(f.lhs)}={show_lterm(f.rhs)}]=> {show(f.body)}"
    if isinstance(f, ForallFin):
        return f"forall {f.var} in {{{', '.join(show_lterm(t) for t in f.range)}}}. {show(f.body)}"
    if isinstance(f, ForallInt):
        star = '*' if f.starred else ''
        return f"forall_int{star}^{f.bound} {f.var}. {show(f.body)}"
    if isinstance(f, Forall):
        return f"forall {f.var}. {show(f.body)}"
    ante = show(f.ante)
    if not isinstance(f.ante, (Top, Bot, Atom)):
        ante = f"({ante})"
    return f"{ante} -> {show(f.cons)}"


# === PARSER === #

FORMULA_GRAMMAR = r'''
?formula: binder
        | atomic "->" formula          -> imp
        | atomic
?binder: "forall" NAME "in" "{" lterm ("," lterm)* "}" "." formula   -> forall_fin
       | "forall_int" STAR? "^" INT NAME "." formula                 -> forall_int
       | "forall" NAME "." formula                                    -> forall
       | "[" lterm "=" lterm "]" "=>" formula                         -> hook
?atomic: "T"                                   -> top
       | "F"                                   -> bot
       | PRED "(" lterm ("," lterm)* ")"       -> atom
       | PRED                                  -> atom
       | "(" formula ")"
?lterm: INT                                    -> nat
      | "O"                                    -> bottom
      | "<" ">"                                -> one
      | "<" INT ("," INT)* ">"                 -> seq
      | NAME "(" lterm ("," lterm)* ")"        -> fn
      | NAME                                   -> ref

STAR: "*"
PRED: /[A-Z][A-Za-z0-9_']*/
NAME: /[a-z_][A-Za-z0-9_']*/
INT: /[0-9]+/

%import common.WS
%ignore WS
'''


@v_args(inline=True)
class FormulaTransformer(Transformer):

    def imp(self, ante, cons):
        return Imp(ante, cons)

    def forall_fin(self, name, *rest):
        *values, body = rest
        return ForallFin(str(name), tuple(values), body)

    def forall_int(self, *parts):
        starred = len(parts) == 4
        bound, name, body = parts[-3:]
        return ForallInt(str(name), int(bound), body, starred)

    def forall(self, name, body):
        return Forall(str(name), body)

    def hook(self, lhs, rhs, body):
        return EqHook(lhs, rhs, body)

    def top(self):
        return TOP

    def bot(self):
        return BOT

    def atom(self, name, *args):
        return Atom(str(name), tuple(args))

    def nat(self, token):
        return Lit(int(token))

    def bottom(self):
        return Lit(BOTTOM)

    def one(self):
        return Lit(ONE)

    def seq(self, *entries):
        return Lit(Seq(tuple(int(entry) for entry in entries)))

    def fn(self, name, *args):
        name = str(name)
        if name not in FUNCTIONALS:
            raise FormulaSyntaxError(f"Unknown functional {name}; known: {', '.join(FUNCTIONALS)}")
        if len(args) != FUNCTIONALS[name][0]:
            raise FormulaSyntaxError(f"{name} takes {FUNCTIONALS[name][0]} arguments")
        return Fn(name, tuple(args))

    def ref(self, token):
        return Ref(str(token))


_PARSER = Lark(FORMULA_GRAMMAR, start=['formula', 'lterm'], parser='lalr')


def _parse(text: str, start: str):
    try:
        return FormulaTransformer().transform(_PARSER.parse(text, start=start))
    except VisitError as e:
        if isinstance(e.orig_exc, FormulaSyntaxError):
            raise e.orig_exc
        raise FormulaSyntaxError(str(e.orig_exc))
    except UnexpectedInput as e:
        snippet = text[e.pos_in_stream:e.pos_in_stream + 8]
        raise FormulaSyntaxError(f"Unexpected input at column {e.column}: {snippet!r}")
    except LarkError as e:
        raise FormulaSyntaxError(str(e))


def parse_formula(text: str) -> Formula:
    """T, F, [a=b]=> U, forall x in {..}. U, U -> V, forall_int^k n. U, forall x. A, P(t, ..)"""
    if not text.strip():
        raise FormulaSyntaxError("Empty formula")
    return _parse(text, 'formula')


def parse_lterm(text: str) -> LTerm:
    return _parse(text, 'lterm')
