"""
Truth values of elementary formulas over finite interpretations

An interpretation fixes a finite set of base stacks standing in for the
falsity value of F, a pole, a finite list of candidate realizers for the
antecedents of implications, a finite condition set and the integer bound.
Truth values are exact relative to these choices.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from config.settings import Settings
from core.combinators import numeral
from core.forcing import (
    BBotStatus, BProcess, BStack, BTerm, Condition, all_conditions, b_process, bbot_member,
    default_window, meet, star_numeral,
)
from core.formulas import (
    BOT, TOP, Bot, EqHook, Fn, ForallFin, ForallInt, Formula, FormulaSyntaxError,
    Ground, Imp, Lit, LTerm, Ref, Top, bound_lvars, depth, evaluate, free_lvars, lterm_vars,
)
from core.poles import EmptyPole, PoleOracle, Verdict
from core.terms import I, Process, Push, Stack, StackConst, Term, fresh_name

logger = logging.getLogger(__name__)

Env = Tuple[Tuple[str, Ground], ...]
BPair = Tuple[Stack, Condition]


def default_conditions() -> List[Condition]:
    return all_conditions(Settings.COND_DEPTH, Settings.condition_alphabet())


def _bind(env: Env, name: str, value: Ground) -> Env:
    return tuple(sorted(dict(env, **{name: value}).items(), key=lambda item: item[0]))


def _freeze(env: Optional[Mapping[str, Ground]]) -> Env:
    return tuple(sorted((env or {}).items(), key=lambda item: item[0]))


@lru_cache(maxsize=None)
def _free(f: Formula) -> FrozenSet[str]:
    return free_lvars(f)


def _key(f: Formula, env: Env) -> Tuple[Formula, Env]:
    """Memo key: the formula and only the bindings it can see"""
    free = _free(f)
    return f, tuple(item for item in env if item[0] in free)


def _not_elementary(f: Formula) -> FormulaSyntaxError:
    return FormulaSyntaxError(f"{type(f).__name__} is not an elementary formula")


@dataclass
class Interpretation:
    """A finite interpretation: base stacks, pole, candidate realizers, conditions"""
    base_stacks: FrozenSet[Stack] = frozenset({StackConst('p')})
    pole: PoleOracle = field(default_factory=EmptyPole)
    candidates: Tuple[Term, ...] = (I,)
    conditions: Tuple[Condition, ...] = field(default_factory=lambda: tuple(default_conditions()))

    def __post_init__(self):
        self.base_stacks = frozenset(self.base_stacks)
        self.candidates = tuple(self.candidates)
        self.conditions = tuple(self.conditions)
        self._tv: Dict[Tuple[Formula, Env], FrozenSet[Stack]] = {}
        self._tv_b: Dict[Tuple[Formula, Env], FrozenSet[BPair]] = {}
        self._verdicts: Dict[Tuple[Term, Formula, Env], Verdict] = {}
        self._b_verdicts: Dict[Tuple[Term, Condition, Formula, Env], Verdict] = {}
        self._bbot: Dict[BProcess, BBotStatus] = {}

    # === A-SIDE === #

    def tv(self, f: Formula, env: Env = ()) -> FrozenSet[Stack]:
        key = _key(f, env)
        if key not in self._tv:
            self._tv[key] = self._compute_tv(f, env)
        return self._tv[key]

    def _compute_tv(self, f: Formula, env: Env) -> FrozenSet[Stack]:
        if isinstance(f, Top):
            return frozenset()
        if isinstance(f, Bot):
            return self.base_stacks
        if isinstance(f, EqHook):
            lookup = dict(env)
            if evaluate(f.lhs, lookup) == evaluate(f.rhs, lookup):
                return self.tv(f.body, env)
            return frozenset()
        if isinstance(f, ForallFin):
            lookup = dict(env)
            values = [evaluate(t, lookup) for t in f.range]
            return frozenset().union(*(self.tv(f.body, _bind(env, f.var, value)) for value in values))
        if isinstance(f, Imp):
            consequent = self.tv(f.cons, env)
            if not consequent:
                return frozenset()
            realizers = [xi for xi in self.candidates if self.realizes(xi, f.ante, env) is Verdict.YES]
            return frozenset(Push(xi, pi) for xi in realizers for pi in consequent)
        if isinstance(f, ForallInt):
            stacks = set()
            for n in range(f.bound + 1):
                marker = star_numeral(n) if f.starred else numeral(n)
                stacks.update(Push(marker, pi) for pi in self.tv(f.body, _bind(env, f.var, n)))
            return frozenset(stacks)
        raise _not_elementary(f)

    def realizes(self, xi: Term, f: Formula, env: Env = ()) -> Verdict:
        """yes iff xi * pi is in the pole for every pi in tv(f)"""
        key = (xi,) + _key(f, env)
        if key not in self._verdicts:
            self._verdicts[key] = self._compute_realizes(xi, f, env)
        return self._verdicts[key]

    def _compute_realizes(self, xi: Term, f: Formula, env: Env) -> Verdict:
        undecided = False
        for pi in self.tv(f, env):
            verdict = self.pole.member(Process(xi, pi))
            if verdict is Verdict.NO:
                return Verdict.NO
            undecided = undecided or verdict is Verdict.UNKNOWN
        return Verdict.UNKNOWN if undecided else Verdict.YES

    # === B-SIDE === #

    def tv_b(self, f: Formula, env: Env = ()) -> FrozenSet[BPair]:
        key = _key(f, env)
        if key not in self._tv_b:
            self._tv_b[key] = self._compute_tv_b(f, env)
        return self._tv_b[key]

    def _compute_tv_b(self, f: Formula, env: Env) -> FrozenSet[BPair]:
        if isinstance(f, Top):
            return frozenset()
        if isinstance(f, Bot):
            return frozenset((pi, q) for pi in self.base_stacks for q in self.conditions)
        if isinstance(f, EqHook):
            lookup = dict(env)
            if evaluate(f.lhs, lookup) == evaluate(f.rhs, lookup):
                return self.tv_b(f.body, env)
            return frozenset()
        if isinstance(f, ForallFin):
            lookup = dict(env)
            values = [evaluate(t, lookup) for t in f.range]
            return frozenset().union(*(self.tv_b(f.body, _bind(env, f.var, value)) for value in values))
        if isinstance(f, Imp):
            consequent = self.tv_b(f.cons, env)
            pairs = set()
            for xi in self.candidates:
                for p in self.conditions:
                    if self.b_realizes(xi, p, f.ante, env) is not Verdict.YES:
                        continue
                    for pi, q in consequent:
                        pairs.add((Push(xi, pi), meet(p, q)))
            return frozenset(pairs)
        if isinstance(f, ForallInt):
            # the integers of B are (n*, 1)
            pairs = set()
            for n in range(f.bound + 1):
                pairs.update((Push(star_numeral(n), pi), q)
                             for pi, q in self.tv_b(f.body, _bind(env, f.var, n)))
            return frozenset(pairs)
        raise _not_elementary(f)

    def b_realizes(self, xi: Term, p: Condition, f: Formula, env: Env = ()) -> Verdict:
        """(xi, p) realizes f in B: every (xi, p) * (pi, q) with (pi, q) in tv_b(f) lies in the pole of B"""
        key = (xi, p) + _key(f, env)
        if key not in self._b_verdicts:
            self._b_verdicts[key] = self._compute_b_realizes(xi, p, f, env)
        return self._b_verdicts[key]

    def _compute_b_realizes(self, xi: Term, p: Condition, f: Formula, env: Env) -> Verdict:
        undecided = False
        for pi, q in self.tv_b(f, env):
            status = self.bbot(b_process(BTerm(xi, p), BStack(pi, q)))
            if status is BBotStatus.NOT_IN:
                return Verdict.NO
            undecided = undecided or status is BBotStatus.UNKNOWN
        return Verdict.UNKNOWN if undecided else Verdict.YES

    def bbot(self, bp: BProcess) -> BBotStatus:
        if bp not in self._bbot:
            self._bbot[bp] = bbot_member(bp, self.pole, default_window(bp.condition)).status
        return self._bbot[bp]


# === MODULE API === #

def tv(f: Formula, base_stacks: Iterable[Stack], pole: Optional[PoleOracle] = None,
       candidates: Iterable[Term] = (I,), env: Optional[Mapping[str, Ground]] = None) -> FrozenSet[Stack]:
    """Truth value of f relative to the finite interpretation"""
    interpretation = Interpretation(frozenset(base_stacks), pole or EmptyPole(), tuple(candidates))
    return interpretation.tv(f, _freeze(env))


def realizes(xi: Term, f: Formula, pole: PoleOracle, base_stacks: Iterable[Stack],
             candidates: Iterable[Term] = (I,), env: Optional[Mapping[str, Ground]] = None) -> Verdict:
    interpretation = Interpretation(frozenset(base_stacks), pole, tuple(candidates))
    return interpretation.realizes(xi, f, _freeze(env))


def tv_b(f: Formula, base_stacks: Iterable[Stack], conditions: Optional[Iterable[Condition]] = None,
         candidates: Iterable[Term] = (I,)) -> FrozenSet[BPair]:
    interpretation = Interpretation(frozenset(base_stacks), EmptyPole(), tuple(candidates),
                                    tuple(conditions) if conditions is not None else tuple(default_conditions()))
    return interpretation.tv_b(f)


def b_realizes(xi: Term, p: Condition, f: Formula, pole: PoleOracle, base_stacks: Iterable[Stack],
               conditions: Optional[Iterable[Condition]] = None, candidates: Iterable[Term] = (I,)) -> Verdict:
    interpretation = Interpretation(frozenset(base_stacks), pole, tuple(candidates),
                                    tuple(conditions) if conditions is not None else tuple(default_conditions()))
    return interpretation.b_realizes(xi, p, f)


# === TRANSFORMS === #

class _Names:
    """Binder names indexed by the height of the formula being transformed

    Binders nested inside one another always sit at different heights, so the
    same subformula transforms to the same formula wherever it occurs. Names
    already in play in the input are avoided.
    """

    def __init__(self, *formulas: Formula, extra: Iterable[str] = ()):
        self.taken = set(extra)
        for f in formulas:
            self.taken |= bound_lvars(f) | free_lvars(f)

    def at(self, base: str, u: Formula) -> str:
        return fresh_name(f"{base}{_height(u)}", self.taken)


@lru_cache(maxsize=None)
def _height(u: Formula) -> int:
    return depth(u)


def _as_lterm(p) -> LTerm:
    return p if isinstance(p, (Lit, Ref, Fn)) else Lit(p)


def _condition_range(conditions: Optional[Iterable[Condition]]) -> Tuple[LTerm, ...]:
    chosen = conditions if conditions is not None else default_conditions()
    return tuple(Lit(q) for q in chosen)


def sub_transform(u: Formula, p, conditions: Optional[Iterable[Condition]] = None,
                  bound: Optional[int] = None) -> Formula:
    """U_p; p is a condition or a ground term over conditions"""
    p = _as_lterm(p)
    names = _Names(u, extra=lterm_vars(p))
    return _sub(u, p, _condition_range(conditions), Settings.INT_BOUND if bound is None else bound, names)


def sup_transform(u: Formula, p, conditions: Optional[Iterable[Condition]] = None,
                  bound: Optional[int] = None) -> Formula:
    """U^p = forall q in Q. forall_int n. [lle(meet(p, q), n) = 1]=> U_q"""
    p = _as_lterm(p)
    names = _Names(u, extra=lterm_vars(p))
    return _sup(u, p, _condition_range(conditions), Settings.INT_BOUND if bound is None else bound, names)


def _sub(u: Formula, p: LTerm, q_range: Tuple[LTerm, ...], bound: int, names: _Names) -> Formula:
    if isinstance(u, (Top, Bot)):
        return u
    if isinstance(u, EqHook):
        return EqHook(u.lhs, u.rhs, _sub(u.body, p, q_range, bound, names))
    if isinstance(u, ForallFin):
        return ForallFin(u.var, u.range, _sub(u.body, p, q_range, bound, names))
    if isinstance(u, ForallInt):
        return ForallInt(u.var, u.bound, _sub(u.body, p, q_range, bound, names), starred=True)
    if isinstance(u, Imp):
        q, r = Ref(names.at('q', u)), Ref(names.at('r', u))
        body = Imp(_sup(u.ante, q, q_range, bound, names), _sub(u.cons, r, q_range, bound, names))
        guarded = EqHook(p, Fn('meet', (q, r)), body)
        return ForallFin(q.name, q_range, ForallFin(r.name, q_range, guarded))
    raise _not_elementary(u)


def _sup(u: Formula, p: LTerm, q_range: Tuple[LTerm, ...], bound: int, names: _Names) -> Formula:
    q, n = Ref(names.at('c', u)), names.at('n', u)
    guard = Fn('lle', (Fn('meet', (p, q)), Ref(n)))
    inner = EqHook(guard, Lit(1), _sub(u, q, q_range, bound, names))
    return ForallFin(q.name, q_range, ForallInt(n, bound, inner))


# === CORRESPONDENCE === #

@dataclass(frozen=True)
class CorrespondenceFailure:
    half: str
    condition: Condition
    detail: str


def correspondence_report(u: Formula, base_stacks: Iterable[Stack] = (StackConst('p'),),
                          conditions: Optional[Iterable[Condition]] = None,
                          bound: Optional[int] = None,
                          candidates: Iterable[Term] = (I,),
                          interpretation: Optional[Interpretation] = None) -> List[CorrespondenceFailure]:
    """Compare the B-side clauses with the U_p / U^p transforms at the empty pole; empty when they agree

    A shared interpretation keeps its truth values between calls; its pole must be empty.
    """
    if interpretation is None:
        chosen = tuple(conditions) if conditions is not None else tuple(default_conditions())
        interpretation = Interpretation(frozenset(base_stacks), EmptyPole(), tuple(candidates), chosen)
    chosen = interpretation.conditions
    b_side = interpretation.tv_b(u)

    failures = []
    for p in chosen:
        expected = frozenset(pi for pi, q in b_side if q == p)
        actual = interpretation.tv(sub_transform(u, p, chosen, bound))
        if expected != actual:
            failures.append(CorrespondenceFailure(
                'stacks', p, f"{len(expected)} B-side stacks against {len(actual)} for U_p"))
        for xi in interpretation.candidates:
            left = interpretation.b_realizes(xi, p, u)
            right = interpretation.realizes(xi, sup_transform(u, p, chosen, bound))
            if left is not right:
                failures.append(CorrespondenceFailure(
                    'realizers', p, f"B-side {left.value} against {right.value} for U^p"))

    if failures:
        logger.debug(f"{len(failures)} correspondence failures")
    return failures


Signature = Tuple[FrozenSet[BPair], Tuple[FrozenSet[Stack], ...]]


@dataclass
class _Class:
    representative: Formula
    total: int = 0
    earlier: int = 0

    @property
    def latest(self) -> int:
        return self.total - self.earlier


@dataclass
class CorrespondenceSweep:
    formulas: int = 0
    checked: int = 0
    classes: int = 0
    failures: List[Tuple[Formula, CorrespondenceFailure]] = field(default_factory=list)


def correspondence_sweep(max_depth: int, wrappers: Iterable[Callable[[Formula], Formula]],
                         base_stacks: Iterable[Stack] = (StackConst('p'),),
                         conditions: Optional[Iterable[Condition]] = None,
                         bound: Optional[int] = None,
                         candidates: Iterable[Term] = (I,)) -> CorrespondenceSweep:
    """
    Check every formula of depth <= max_depth built from T and F by the wrappers and implication

    Both sides follow the clauses, so a formula's truth values (B-side, and U_p for
    every p) depend only on those of its immediate subformulas. Formulas are grouped
    by these values; each layer is built from one representative per group, and the
    multiplicities count the formulas every representative stands for.
    """
    chosen = tuple(conditions) if conditions is not None else tuple(default_conditions())
    bound = Settings.INT_BOUND if bound is None else bound
    wrappers = list(wrappers)
    interpretation = Interpretation(frozenset(base_stacks), EmptyPole(), tuple(candidates), chosen)
    sweep = CorrespondenceSweep()

    def signature(u: Formula) -> Signature:
        return interpretation.tv_b(u), tuple(interpretation.tv(sub_transform(u, p, chosen, bound)) for p in chosen)

    classes: Dict[Signature, _Class] = {}
    layer: List[Tuple[Formula, int]] = [(TOP, 1), (BOT, 1)]
    for level in range(max_depth + 1):
        if level:
            members = list(classes.values())
            layer = [(wrap(c.representative), c.latest) for c in members if c.latest for wrap in wrappers]
            # pairs whose deeper side reached the previous level
            layer += [(Imp(a.representative, b.representative), a.total * b.total - a.earlier * b.earlier)
                      for a in members for b in members]
        for c in classes.values():
            c.earlier = c.total

        for u, count in layer:
            if count <= 0:
                continue
            sweep.formulas += count
            sweep.checked += 1
            failures = correspondence_report(u, bound=bound, interpretation=interpretation)
            sweep.failures.extend((u, failure) for failure in failures)
            classes.setdefault(signature(u), _Class(u)).total += count

    sweep.classes = len(classes)
    logger.info(f"Correspondence sweep: {sweep.formulas} formulas, {sweep.checked} checked, "
                f"{sweep.classes} classes, {len(sweep.failures)} failures")
    return sweep
