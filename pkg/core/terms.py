"""
Terms, stacks and processes of the standard realizability algebra
Parsing (lark), printing, spine decomposition and substitution
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Set, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import LarkError, UnexpectedInput, VisitError

logger = logging.getLogger(__name__)

ELEMENTARY = ('B', 'C', 'I', 'K', 'W', 'cc')
CATEGORIES = ('cterm', 'term', 'stack', 'process', 'lambda')


class TermSyntaxError(Exception):
    """Raised when a literal does not conform to the term grammar"""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at column {position})")
        self.position = position


# === DOMAIN TYPES === #

@dataclass(frozen=True)
class Comb:
    """Elementary combinator B, C, I, K, W or cc"""
    name: str

    def __post_init__(self):
        if self.name not in ELEMENTARY:
            raise ValueError(f"Unknown combinator {self.name}")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    """Instruction constant, printed #name"""
    name: str


@dataclass(frozen=True)
class StackConst:
    """Stack constant, printed %name"""
    name: str


@dataclass(frozen=True)
class App:
    fun: 'Term'
    arg: 'Term'
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash(('App', self.fun, self.arg)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Abs:
    """Lambda abstraction; only ever fed to the compiler"""
    var: str
    body: 'Term'


@dataclass(frozen=True)
class Push:
    top: 'Term'
    rest: 'Stack'
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash(('Push', self.top, self.rest)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Cont:
    """Continuation k[stack]"""
    stack: 'Stack'


@dataclass(frozen=True)
class Process:
    head: 'Term'
    stack: 'Stack'


Term = Union[Comb, Var, Const, Cont, App, Abs]
TERM_TYPES = (Comb, Var, Const, Cont, App, Abs)
Stack = Union[StackConst, Push]
Value = Union[Term, Stack, Process]

B, C, I, K, W, CC = (Comb(name) for name in ELEMENTARY)


# === CONSTRUCTION HELPERS === #

def app(head: Term, *args: Term) -> Term:
    """Left-folded application (head)args1...argsk"""
    result = head
    for arg in args:
        result = App(result, arg)
    return result


def make_stack(items: List[Term], base: StackConst) -> Stack:
    """items[0] is the top of the resulting stack"""
    stack: Stack = base
    for item in reversed(items):
        stack = Push(item, stack)
    return stack


def stack_items(stack: Stack) -> Tuple[List[Term], StackConst]:
    """Unfold a stack into its pushed terms and bottom constant"""
    items = []
    while isinstance(stack, Push):
        items.append(stack.top)
        stack = stack.rest
    return items, stack


def process(head: Term, *items: Term, base: str = 'p') -> Process:
    """Shorthand for head * items . %base"""
    return Process(head, make_stack(list(items), StackConst(base)))


def decompose_head(t: Term) -> Tuple[Term, List[Term]]:
    """Unique spine: t = (atom)args1...argsk with atom not an application"""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def substitute(t: Value, binding: Mapping[str, Term]) -> Value:
    """Replace variables per binding; homomorphic on every other node"""
    if isinstance(t, Var):
        return binding.get(t.name, t)
    if isinstance(t, App):
        fun = substitute(t.fun, binding)
        arg = substitute(t.arg, binding)
        if fun is t.fun and arg is t.arg:
            return t
        return App(fun, arg)
    if isinstance(t, Abs):
        inner = {name: value for name, value in binding.items() if name != t.var}
        return Abs(t.var, substitute(t.body, inner))
    if isinstance(t, Cont):
        return Cont(substitute(t.stack, binding))
    if isinstance(t, Push):
        return Push(substitute(t.top, binding), substitute(t.rest, binding))
    if isinstance(t, Process):
        return Process(substitute(t.head, binding), substitute(t.stack, binding))
    return t


# === PREDICATES === #

def _children(value) -> List:
    if isinstance(value, App):
        return [value.fun, value.arg]
    if isinstance(value, Abs):
        return [value.body]
    if isinstance(value, Cont):
        return [value.stack]
    if isinstance(value, Push):
        return [value.top, value.rest]
    if isinstance(value, Process):
        return [value.head, value.stack]
    return []


def _walk(value):
    todo = [value]
    while todo:
        node = todo.pop()
        yield node
        todo.extend(_children(node))


def is_term(value) -> bool:
    return isinstance(value, TERM_TYPES)


def is_proof_like(t: Value) -> bool:
    """No continuation and no stack constant anywhere"""
    return not any(isinstance(node, (Cont, StackConst)) for node in _walk(t))


def free_vars(t: Value) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.var}
    result: Set[str] = set()
    for child in _children(t):
        result |= free_vars(child)
    return frozenset(result)


def is_closed(t: Value) -> bool:
    return not free_vars(t)


def stack_constants(value: Value) -> FrozenSet[str]:
    """Names of every stack constant, continuations included"""
    return frozenset(node.name for node in _walk(value) if isinstance(node, StackConst))


def instruction_constants(value: Value) -> FrozenSet[str]:
    return frozenset(node.name for node in _walk(value) if isinstance(node, Const))


def size(t: Term) -> int:
    """Number of atoms; a continuation counts as one"""
    count = 0
    todo = [t]
    while todo:
        node = todo.pop()
        if isinstance(node, App):
            todo.extend((node.fun, node.arg))
        elif isinstance(node, Abs):
            todo.append(node.body)
        else:
            count += 1
    return count


def fresh_name(base: str, taken: Set[str]) -> str:
    """base, base_1, base_2 ... whichever is first absent from taken"""
    if base not in taken:
        return base
    index = 1
    while f"{base}_{index}" in taken:
        index += 1
    return f"{base}_{index}"


# === PARSER === #

TERM_GRAMMAR = r'''
?term: chain
     | term _SP chain           -> app
?chain: factor
      | factor chain            -> app
?factor: COMB                   -> comb
       | ALIAS                  -> alias
       | NUMERAL                -> numeral
       | CONST                  -> const
       | NAME                   -> var
       | CONT_OPEN stack "]"    -> cont
       | LAMBDA NAME "." term   -> lam
       | "(" term ")"
?stack: term "." stack          -> push
      | STACK_CONST             -> stack_const
process: term _STAR stack

_SP: " "
_STAR: " * "
COMB.2: /(?:cc|[BCIKW])(?![A-Za-z0-9_'*])/
ALIAS.3: /(?:cc|[sBCIKW])\*/
NUMERAL: /\{[0-9]+\}/
CONST: /#[A-Za-z0-9_']+/
STACK_CONST: /%[A-Za-z0-9_']+/
NAME: /[a-z_][A-Za-z0-9_']*/
CONT_OPEN.2: "k["
LAMBDA: "\\"
'''

_START = {'cterm': 'term', 'term': 'term', 'lambda': 'term', 'stack': 'stack', 'process': 'process'}


def normalize(text: str) -> str:
    """Collapse whitespace; adjacency is significant, so spacing around punctuation is dropped"""
    text = ' '.join(text.split())
    text = re.sub(r'\s*([.,\])}>])', r'\1', text)
    text = re.sub(r'([.,\[({<\\])\s*', r'\1', text)
    text = re.sub(r'\s+\*\s*', ' * ', text)
    text = re.sub(r'(?<=[)\]}])\*\s*', ' * ', text)
    return text


@v_args(inline=True)
class TermTransformer(Transformer):
    """Builds domain values; rejects constructs outside the requested category"""

    def __init__(self, category: str = 'term'):
        super().__init__()
        self.category = category

    def app(self, fun, arg):
        return App(fun, arg)

    def comb(self, token):
        return Comb(str(token))

    def alias(self, token):
        from core.forcing import alias_table
        name = str(token)
        if name not in alias_table():
            raise TermSyntaxError(f"Unknown alias {name}", token.column - 1)
        return alias_table()[name]

    def numeral(self, token):
        from core.combinators import numeral
        return numeral(int(str(token)[1:-1]))

    def const(self, token):
        return Const(str(token)[1:])

    def var(self, token):
        return Var(str(token))

    def cont(self, opener, stack):
        if self.category in ('cterm', 'lambda'):
            raise TermSyntaxError(f"Continuation not allowed in category {self.category}", opener.column - 1)
        return Cont(stack)

    def lam(self, opener, name, body):
        if self.category != 'lambda':
            raise TermSyntaxError(f"Lambda not allowed in category {self.category}", opener.column - 1)
        return Abs(str(name), body)

    def push(self, top, rest):
        return Push(top, rest)

    def stack_const(self, token):
        return StackConst(str(token)[1:])

    def process(self, head, stack):
        return Process(head, stack)


_PARSER = Lark(TERM_GRAMMAR, start=['term', 'stack', 'process'], parser='lalr')


def run_parser(parser: Lark, text: str, start: str, transformer: Transformer):
    """Parse and transform, converting lark failures to TermSyntaxError"""
    source = normalize(text)
    if not source:
        raise TermSyntaxError("Empty input", 0)
    try:
        tree = parser.parse(source, start=start)
        return transformer.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, TermSyntaxError):
            raise e.orig_exc
        raise TermSyntaxError(str(e.orig_exc), 0)
    except UnexpectedInput as e:
        raise TermSyntaxError(f"Unexpected input {source[e.pos_in_stream:e.pos_in_stream + 8]!r}",
                              e.pos_in_stream)
    except LarkError as e:
        raise TermSyntaxError(str(e), 0)


def parse(text: str, category: str = 'term') -> Value:
    """Parse a literal of the given category"""
    if category not in CATEGORIES:
        raise TermSyntaxError(f"Unknown category {category}", 0)
    return run_parser(_PARSER, text, _START[category], TermTransformer(category))


# === PRINTER === #

@dataclass(frozen=True)
class PrintOptions:
    numerals: bool = False
    aliases: bool = False
    prefix_style: bool = False


PLAIN = PrintOptions()
SUGAR = PrintOptions(numerals=True, aliases=True)


class Printer:
    """Renders values; canonical form reparses to an equal value"""

    def __init__(self, options: PrintOptions = PLAIN):
        self.options = options
        self._numerals: Dict[Term, int] = {}
        self._aliases: Dict[Term, str] = {}
        if options.numerals:
            from core.combinators import numeral_table
            self._numerals = numeral_table()
        if options.aliases:
            from core.forcing import alias_table
            self._aliases = {term: name for name, term in alias_table().items()}

    def _sugar(self, t: Term) -> Optional[str]:
        if t in self._numerals:
            return f"{{{self._numerals[t]}}}"
        if t in self._aliases:
            return self._aliases[t]
        return None

    def _token(self, t: Term) -> Optional[str]:
        """Atomic rendering, or None when t needs application syntax"""
        sugar = self._sugar(t)
        if sugar is not None:
            return sugar
        if isinstance(t, Comb):
            return t.name
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Const):
            return f"#{t.name}"
        if isinstance(t, Cont):
            return f"k[{self.stack(t.stack)}]"
        return None

    def term(self, t: Term) -> str:
        token = self._token(t)
        if token is not None:
            return token
        if isinstance(t, Abs):
            return f"\\{t.var}. {self.term(t.body)}"
        if self.options.prefix_style:
            return self._prefix(t)
        return self._canonical(t)

    def _argument(self, t: Term) -> str:
        token = self._token(t)
        return token if token is not None else f"({self.term(t)})"

    def _canonical(self, t: App) -> str:
        fun = f"({self.term(t.fun)})" if isinstance(t.fun, Abs) else self.term(t.fun)
        if self._token(t.arg) is not None:
            return f"{fun} {self._token(t.arg)}"
        if isinstance(t.arg, Abs):
            return f"{fun} ({self.term(t.arg)})"
        return f"({self.term(t.fun)}){self._chain(t.arg)}"

    def _chain(self, t: Term) -> str:
        # adjacent factors nest to the right
        if isinstance(t, App) and self._token(t) is None and isinstance(t.arg, App) \
                and self._token(t.arg) is None:
            return f"({self.term(t.fun)}){self._chain(t.arg)}"
        return f"({self.term(t)})"

    def _prefix(self, t: App) -> str:
        # a sugared prefix of the spine stays one unit
        head, args = t, []
        while isinstance(head, App) and self._token(head) is None:
            args.append(head.arg)
            head = head.fun
        args.reverse()
        parts = [f"({self.term(head)})"]
        for index, arg in enumerate(args):
            rendered = self._prefix_argument(arg)
            parts.append(rendered if index == 0 else f" {rendered}")
        return ''.join(parts)

    def _prefix_argument(self, arg: Term) -> str:
        token = self._token(arg)
        if token is not None:
            return token
        if isinstance(arg, Abs):
            return f"({self.term(arg)})"
        rendered = self._prefix(arg)
        # several arguments are separated by spaces, so the group needs parentheses
        return f"({rendered})" if isinstance(arg.fun, App) and self._token(arg.fun) is None else rendered

    def stack(self, s: Stack) -> str:
        items, base = stack_items(s)
        return ' . '.join([self._argument(item) for item in items] + [f"%{base.name}"])

    def process(self, p: Process) -> str:
        return f"{self.term(p.head)} * {self.stack(p.stack)}"

    def render(self, value: Value) -> str:
        if isinstance(value, Process):
            return self.process(value)
        if isinstance(value, (Push, StackConst)):
            return self.stack(value)
        return self.term(value)


def render(value: Value, options: PrintOptions = PLAIN) -> str:
    """Print a term, stack or process"""
    return Printer(options).render(value)
