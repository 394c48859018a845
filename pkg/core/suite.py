"""
Acceptance suite: the reduction laws and bounded checks, grouped by subject

Every group returns CaseResult records in a fixed order; randomized groups
draw from random.Random(seed) so a seed reproduces the whole report.
"""

import dataclasses
import logging
import random
import time
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel

from config.settings import Settings
from core.combinators import SUCC, ZERO, fixture_forms, halting, iter_apply, numeral
from core.compiler import compile_lambda, lambda_closure, mlbd, occurs, firing_bound
from core.derivations import Derivation, check_derivation, parse_derivation
from core.forcing import (
    BBOT_CLAUSES, BOTTOM, BBotStatus, BStack, BTerm, ClauseSample, Seq, b_process, bbot_member,
    default_window, kstar, star, star_forms, star_numeral,
)
from core.formulas import (
    BOT, TOP, Atom, EqHook, ForallFin, ForallInt, Formula, Imp, Lit, show,
)
from core.machine import Next, applicable_clauses, behavioral_numeral, run, step
from core.poles import (
    EmptyPole, EverythingPole, ThreadPole, Verdict, gamma_witness_check, global_member,
    majority_check, thread_constant,
)
from core.realizers import (
    PipelineInputs, collapse_realizers, extract, guarded_statements, t_conversion, tau, theta,
)
from core.terms import (
    B, C, CC, I, K, W, App, Const, Cont, Process, Push, StackConst, Term, Var, app,
    is_closed, is_proof_like, make_stack, parse, render, substitute,
)
from core.truth import correspondence_sweep, realizes, tv

logger = logging.getLogger(__name__)


class CaseResult(BaseModel):
    suite: str
    index: int
    name: str
    passed: bool
    detail: str = ''


class SuiteReport(BaseModel):
    suite: str
    seed: int
    cases: List[CaseResult]
    undecided: Optional[float] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)

    @property
    def failures(self) -> List[CaseResult]:
        return [case for case in self.cases if not case.passed]


# fresh inert constants used throughout
XI, ETA, ZETA = Const('xi'), Const('eta'), Const('zeta')
PHI, ALPHA, DELTA, NU, KAPPA = Const('phi'), Const('alpha'), Const('delta'), Const('nu'), Const('kappa')
RHO, VARPI = StackConst('rho'), StackConst('varpi')
BUSTER = parse('W W W', 'cterm')

VALID_DERIVATIONS = [
    """
    1 ax | x : A |- x : A
    2 lam 1 | |- \\x. x : A -> A
    """,
    """
    1 peirce | |- cc : ((A -> B) -> A) -> A
    """,
    """
    1 ax | f : A -> B; x : A |- f : A -> B
    2 ax | f : A -> B; x : A |- x : A
    3 app 1 2 | f : A -> B; x : A |- f x : B
    4 lam 3 | f : A -> B |- \\x. f x : A -> B
    """,
    """
    1 ax | h : forall x. P(x) |- h : forall x. P(x)
    2 inst 1 [x:=y] | h : forall x. P(x) |- h : P(y)
    3 gen 2 | h : forall x. P(x) |- h : forall y. P(y)
    4 inst 3 [y:=succ(0)] | h : forall x. P(x) |- h : P(succ(0))
    """,
    """
    1 ax | z : F |- z : F
    2 efq 1 | z : F |- z : A -> B
    """,
]


def mutate_derivation(derivation: Derivation, rng: random.Random) -> Derivation:
    """Break the last judgment in one of several ways that no rule accepts"""
    last = derivation.judgments[-1]
    choices: List[Callable] = [
        lambda j: dataclasses.replace(j, term=Var('zz')),
        lambda j: dataclasses.replace(j, premises=j.premises + ('nope',)),
    ]
    if last.rule != 'efq':
        choices.append(lambda j: dataclasses.replace(j, formula=Atom('Zq')))
    if last.premises:
        choices.append(lambda j: dataclasses.replace(j, premises=()))
    if last.context:
        choices.append(lambda j: dataclasses.replace(j, context=j.context + j.context[:1]))
    mutated = rng.choice(choices)(last)
    return Derivation(derivation.judgments[:-1] + (mutated,))


def unary_wrappers(bound: int) -> List[Callable[[Formula], Formula]]:
    """True hook, false hook, finite quantifier and integer quantifier"""
    return [
        lambda f: EqHook(Lit(0), Lit(0), f),
        lambda f: EqHook(Lit(0), Lit(1), f),
        lambda f: ForallFin('x', (Lit(0), Lit(1)), f),
        lambda f: ForallInt('n', bound, f),
    ]


def formula_count(max_depth: int, unary: int) -> int:
    """Number of formulas of depth <= max_depth over T, F, implication and unary wrappers"""
    earlier, total = 0, 2
    for _ in range(max_depth):
        earlier, total = total, total + unary * (total - earlier) + total * total - earlier * earlier
    return total


def widen(f: Formula, extra: int) -> Formula:
    """Raise every integer bound outside implication antecedents by extra"""
    if isinstance(f, ForallInt):
        return ForallInt(f.var, f.bound + extra, widen(f.body, extra), f.starred)
    if isinstance(f, ForallFin):
        return ForallFin(f.var, f.range, widen(f.body, extra))
    if isinstance(f, EqHook):
        return EqHook(f.lhs, f.rhs, widen(f.body, extra))
    if isinstance(f, Imp):
        return Imp(f.ante, widen(f.cons, extra))
    return f


def formula_corpus(max_depth: int, rng: Optional[random.Random] = None, sample: int = 0,
                   bound: int = 5) -> List[Formula]:
    """Every elementary formula up to depth two, plus sampled deeper ones"""
    unary = unary_wrappers(bound)
    layers = [[TOP, BOT]]
    for _ in range(min(max_depth, 2)):
        below = [f for layer in layers for f in layer]
        layer = [wrap(f) for wrap in unary for f in below]
        layer += [Imp(a, b) for a in below for b in below]
        layers.append(layer)
    corpus = list(dict.fromkeys(f for layer in layers for f in layer))

    if rng is not None and max_depth > 2:
        def grow(d: int) -> Formula:
            if d == 0:
                return rng.choice([TOP, BOT])
            if rng.random() < 0.4:
                return Imp(grow(d - 1), grow(d - 1))
            return rng.choice(unary)(grow(d - 1))
        corpus += [grow(max_depth) for _ in range(sample)]
    return corpus


def random_cterm(rng: random.Random, atoms: List[Term], max_atoms: int) -> Term:
    count = rng.randint(1, max_atoms)

    def build(n: int) -> Term:
        if n == 1:
            return rng.choice(atoms)
        left = rng.randint(1, n - 1)
        return App(build(left), build(n - left))
    return build(count)


class AcceptanceSuite:
    """Runs one named group, or all of them, with a fixed seed"""

    def __init__(self, seed: Optional[int] = None, budget: Optional[int] = None):
        self.seed = Settings.SEED if seed is None else seed
        self.budget = Settings.MAX_STEPS if budget is None else budget
        self.groups: Dict[str, Callable[[random.Random], List]] = {
            'machine': self.machine,
            'bracket': self.bracket,
            'numerals': self.numerals,
            'starred': self.starred,
            'bbot': self.bbot,
            'collapse': self.collapse,
            'threads': self.threads,
            'truth': self.truth,
            'generators': self.generators,
        }
        self._undecided: Optional[float] = None

    def names(self) -> List[str]:
        return list(self.groups)

    def run(self, name: str) -> List[SuiteReport]:
        if name == 'all':
            return [self.run_group(group) for group in self.groups]
        if name not in self.groups:
            raise ValueError(f"Unknown suite {name}; known: {', '.join(self.groups)}, all")
        return [self.run_group(name)]

    def run_group(self, name: str) -> SuiteReport:
        started = time.monotonic()
        self._undecided = None
        rng = random.Random(f"{self.seed}:{name}")
        checks = self.groups[name](rng)
        cases = [CaseResult(suite=name, index=index, name=label, passed=passed, detail=detail)
                 for index, (label, passed, detail) in enumerate(checks)]
        report = SuiteReport(suite=name, seed=self.seed, cases=cases, undecided=self._undecided,
                             elapsed=round(time.monotonic() - started, 3))
        logger.info(f"Suite {name}: {len(report.cases) - len(report.failures)}/{len(report.cases)} passed")
        return report

    def _reaches(self, start: Process, target: Process, budget: Optional[int] = None) -> bool:
        trace = run(start, budget or self.budget, keep_states=False, stop=lambda state: state == target)
        return not trace.stuck and not trace.budget_exhausted

    def _final(self, start: Process) -> Process:
        return run(start, self.budget, keep_states=False).final

    # === MACHINE === #

    def machine(self, rng: random.Random) -> List:
        rules = [
            ('push', "(#x #y) * %p", "#x * #y . %p"),
            ('I', "I * #x . %p", "#x * %p"),
            ('K', "K * #x . #y . %p", "#x * %p"),
            ('W', "W * #x . #y . %p", "#x * #y . #y . %p"),
            ('C', "C * #x . #y . #z . %p", "#x * #z . #y . %p"),
            ('B', "B * #x . #y . #z . %p", "#x * (#y #z) . %p"),
            ('cc', "cc * #x . %p", "#x * k[%p] . %p"),
            ('k', "k[%p] * #x . %q", "#x * %p"),
        ]
        checks = []
        for label, source, expected in rules:
            result = step(parse(source, 'process'))
            ok = isinstance(result, Next) and result.process == parse(expected, 'process')
            checks.append((f"rule {label}", ok, render(result.process) if isinstance(result, Next) else str(result)))

        atoms = [B, C, I, K, W, CC, Const('a'), Cont(StackConst('q'))]
        overlapping = 0
        for _ in range(200):
            head = random_cterm(rng, atoms, 4)
            depth = rng.randint(0, 3)
            p = Process(head, make_stack([rng.choice(atoms) for _ in range(depth)], StackConst('p')))
            overlapping += len(applicable_clauses(p)) > 1
        checks.append(("at most one clause applies", overlapping == 0, f"{overlapping} overlaps"))
        return checks

    # === BRACKET ABSTRACTION === #

    def bracket(self, rng: random.Random) -> List:
        failures, unfree, over_bound = 0, 0, 0
        cases = 500
        for _ in range(cases):
            variables = [f"x{index}" for index in range(rng.randint(1, 3))]
            atoms = [B, C, I, K, W, CC, Const('a')] + [Var(name) for name in variables] * 2
            body = random_cterm(rng, atoms, 25)
            closure = lambda_closure(variables, body)
            constants = [Const(f"arg{index}") for index in range(len(variables))]
            start = Process(closure, make_stack(constants, RHO))
            target = Process(substitute(body, dict(zip(variables, constants))), RHO)
            failures += not self._reaches(start, target, 20000)

            fired: List = []
            eliminated = mlbd(variables[0], body, fired)
            unfree += occurs(variables[0], eliminated)
            over_bound += len(fired) > firing_bound(body)
        return [
            ("compiled closure reaches the substituted body", failures == 0, f"{failures}/{cases} failures"),
            ("mlbd eliminates its variable", unfree == 0, f"{unfree}/{cases} still contain it"),
            ("rule firings within bound", over_bound == 0, f"{over_bound}/{cases} over bound"),
        ]

    # === NUMERALS === #

    def numerals(self, rng: random.Random) -> List:
        checks = []
        first = all(self._reaches(Process(numeral(n), make_stack([PHI, ALPHA], RHO)),
                                  Process(iter_apply(PHI, n, ALPHA), RHO)) for n in range(21))
        checks.append(("n * phi . alpha reaches (phi)^n alpha", first, "n in 0..20"))

        cbphi = app(C, B, PHI)
        second = all(self._final(Process(numeral(n), make_stack([cbphi, ZETA, ALPHA], RHO)))
                     == Process(ZETA, Push(iter_apply(PHI, n, ALPHA), RHO)) for n in range(21))
        checks.append(("n * CB phi . zeta . alpha ends at zeta * (phi)^n alpha", second, "n in 0..20"))

        for form_sigma, sigma in fixture_forms('Sigma').items():
            for form_omega, omega in fixture_forms('Omega').items():
                label = f"Sigma {form_sigma} / Omega {form_omega}"
                ok_first = all(self._reaches(Process(iter_apply(sigma, n, omega), make_stack([DELTA, PHI, ALPHA], RHO)),
                                             Process(iter_apply(PHI, n, ALPHA), RHO)) for n in range(21))
                ok_second = all(self._final(Process(iter_apply(sigma, n, omega),
                                                    make_stack([DELTA, cbphi, ZETA, ALPHA], RHO)))
                                == Process(ZETA, Push(iter_apply(PHI, n, ALPHA), RHO)) for n in range(21))
                checks.append((f"{label} iterates phi", ok_first, "n in 0..20"))
                checks.append((f"{label} with CB phi", ok_second, "n in 0..20"))

        wrong = [n for n in range(51) if behavioral_numeral(numeral(n)) != n]
        checks.append(("behavioral numeral of n is n", not wrong, f"mismatches at {wrong}"))
        checks.append(("K is not a numeral", behavioral_numeral(K) is None, ""))

        sigma_end = self._final(Process(SUCC, make_stack([NU, PHI, ALPHA], RHO)))
        checks.append(("sigma * nu . phi . alpha ends at nu * phi . (phi)alpha",
                       sigma_end == Process(NU, make_stack([PHI, App(PHI, ALPHA)], RHO)), render(sigma_end)))

        for form, y in fixture_forms('Y').items():
            ok = self._reaches(Process(y, Push(XI, RHO)), Process(XI, Push(App(y, XI), RHO)))
            checks.append((f"Y ({form}) * xi passes through xi * (Y)xi", ok, ""))

        forms = fixture_forms('A')
        agree = all(self._reaches(Process(forms[form], make_stack([ALPHA, PHI], RHO)),
                                  Process(PHI, Push(app(ALPHA, ALPHA, PHI), RHO))) for form in forms)
        checks.append(("both forms of A agree", agree, ""))
        return checks

    # === STARRED COMBINATORS === #

    def starred(self, rng: random.Random) -> List:
        pi = RHO
        laws = {
            'B': ([XI, ETA, ZETA], lambda n: Process(XI, make_stack([n, app(C, ETA, ZETA)], pi))),
            'C': ([XI, ETA, ZETA], lambda n: Process(XI, make_stack([n, ZETA, ETA], pi))),
            'I': ([XI], lambda n: Process(XI, make_stack([n], pi))),
            'K': ([XI, ETA], lambda n: Process(XI, make_stack([n], pi))),
            'W': ([XI, ETA], lambda n: Process(XI, make_stack([n, ETA, ETA], pi))),
        }
        checks = []
        for form in ('lambda', 'printed'):
            for name, (args, expected) in laws.items():
                term = star_forms(name)[form]
                ok = all(self._final(Process(term, make_stack([numeral(n)] + args, pi))) == expected(numeral(n))
                         for n in range(11))
                checks.append((f"{name}* ({form})", ok, "n in 0..10"))

            cc_ok = all(self._final(Process(star_forms('cc')[form], make_stack([numeral(n), XI], pi)))
                        == Process(XI, make_stack([numeral(n), kstar(pi, form)], pi)) for n in range(11))
            checks.append((f"cc* ({form})", cc_ok, "n in 0..10"))

            k_ok = all(self._final(Process(kstar(pi, form), make_stack([numeral(n), XI], VARPI)))
                       == Process(XI, make_stack([numeral(n)], pi)) for n in range(11))
            checks.append((f"k*_pi ({form})", k_ok, "n in 0..10"))

        identity = all(star(numeral(n)) == star_numeral(n) for n in range(11))
        checks.append(("star of n is (C sigma*)^n 0*", identity, "n in 0..10"))
        checks.append(("0* is C K* I*", star(ZERO) == app(C, star(K), star(I)), ""))
        proof_like = all(is_proof_like(star_forms(name)[form]) for name in ('B', 'C', 'I', 'K', 'W', 'cc')
                         for form in ('lambda', 'printed'))
        checks.append(("starred combinators are proof-like", proof_like, ""))
        return checks

    # === POLE OF B === #

    def bbot(self, rng: random.Random) -> List:
        pool = [halting(0), Const('d'), numeral(0), numeral(1), numeral(2), I, K, C, B]
        pi0 = thread_constant(0)

        def term() -> Term:
            return rng.choice(pool) if rng.random() < 0.7 else App(rng.choice(pool), rng.choice(pool))

        def stack():
            return make_stack([term() for _ in range(rng.randint(0, 2))], pi0)

        def condition():
            if rng.random() < 0.1:
                return BOTTOM
            return Seq(tuple(rng.randint(0, 2) for _ in range(rng.randint(0, 3))))

        poles = {'thread': ThreadPole(0, 0, budget=2000), 'everything': EverythingPole()}
        violations = {name: 0 for name in BBOT_CLAUSES}
        queries, undecided = 0, 0
        samples = 120
        for _ in range(samples):
            sample = ClauseSample(term(), term(), term(), stack(), stack(),
                                  condition(), condition(), condition(), condition())
            for name, builder in BBOT_CLAUSES.items():
                lhs, rhs = builder(sample)
                for pole in poles.values():
                    left = bbot_member(lhs, pole, default_window(lhs.condition))
                    right = bbot_member(rhs, pole, default_window(rhs.condition))
                    if right.status is BBotStatus.IN and left.status is BBotStatus.NOT_IN:
                        violations[name] += 1
                    left_n, right_n = dict(left.verdicts), dict(right.verdicts)
                    for n in set(left_n) & set(right_n):
                        if right_n[n] is Verdict.YES and left_n[n] is Verdict.NO:
                            violations[name] += 1
                    if pole is poles['thread']:
                        everything = list(left.verdicts) + list(right.verdicts)
                        queries += len(everything)
                        undecided += sum(verdict is Verdict.UNKNOWN for _, verdict in everything)

        fraction = undecided / queries if queries else 0.0
        self._undecided = round(fraction, 4)
        checks = [(f"clause {name}", count == 0, f"{count} violations over {samples} samples")
                  for name, count in violations.items()]
        checks.append(("undecided fraction below 20%", fraction < 0.2, f"{fraction:.2%} of {queries} queries"))
        absurd = b_process(BTerm(I, BOTTOM), BStack(pi0, Seq(())))
        checks.append(("O condition is in the pole of B",
                       bbot_member(absurd, EmptyPole(), range(6)).status is BBotStatus.IN, ""))
        return checks

    # === COLLAPSING REALIZERS === #

    def collapse(self, rng: random.Random) -> List:
        theta0, theta1 = collapse_realizers()
        t0, t1 = t_conversion('T0'), t_conversion('T1')
        checks = [("theta_0 * nu . kappa . xi ends at xi * nu",
                   self._final(Process(theta0, make_stack([NU, KAPPA, XI], RHO))) == Process(XI, Push(NU, RHO)), "")]

        theta1_ok = True
        for n in range(11):
            final = self._final(Process(theta1, make_stack([numeral(n), ETA], RHO)))
            items = final.stack
            theta1_ok &= final.head == ETA and isinstance(items, Push) and isinstance(items.rest, Push) \
                and behavioral_numeral(items.top) == n + 1 and items.rest.top == star_numeral(n) \
                and items.rest.rest == RHO
        checks.append(("theta_1 * n . eta ends at eta * n+1 . n*", theta1_ok, "n in 0..10"))

        t0_ok = all(self._final(Process(t0, make_stack([ZETA, numeral(n)], RHO)))
                    == Process(ZETA, Push(star_numeral(n), RHO)) for n in range(11))
        checks.append(("T0 * zeta . n ends at zeta * n*", t0_ok, "n in 0..10"))

        t1_ok = True
        for n in range(11):
            final = self._final(Process(t1, make_stack([ZETA, star_numeral(n)], RHO)))
            t1_ok &= final.head == ZETA and isinstance(final.stack, Push) and final.stack.rest == RHO \
                and behavioral_numeral(final.stack.top) == n
        checks.append(("T1 * zeta . n* ends at zeta * n", t1_ok, "n in 0..10"))
        checks.append(("collapsing realizers are proof-like",
                       is_proof_like(theta0) and is_proof_like(theta1), ""))
        return checks

    # === TWO THREADS === #

    def threads(self, rng: random.Random) -> List:
        pi0, pi1 = thread_constant(0), thread_constant(1)
        d = Const(Settings.HALT_CONSTANT)
        d0 = halting(0)
        pole00, pole01 = ThreadPole(0, 0, budget=2000), ThreadPole(0, 1, budget=2000)
        checks = [
            ("d * 0 . pi0 in (0,0)", pole00.member(Process(d, Push(numeral(0), pi0))) is Verdict.YES, ""),
            ("(d)0 * pi0 in (0,0)", pole00.member(Process(d0, pi0)) is Verdict.YES, ""),
            ("d * 1 . pi0 not in (0,0)", pole00.member(Process(d, Push(numeral(1), pi0))) is Verdict.NO, ""),
            ("majority of two members", majority_check(d0, d0, I, pi0, 0, 0) is Verdict.YES, ""),
            ("majority of two non-members", majority_check(I, I, d0, pi0, 0, 0) is Verdict.NO, ""),
            ("undecided majority", majority_check(d0, I, BUSTER, pi0, 0, 0, budget=500) is Verdict.UNKNOWN, ""),
            ("mixed constants are in the global pole",
             global_member(Process(Cont(pi0), pi1)) is Verdict.YES, ""),
            ("global pole delegates to thread 0", global_member(Process(d, Push(numeral(0), pi0))) is Verdict.YES, ""),
            ("I * a . pi0 not in the global pole",
             global_member(Process(I, Push(Const('a'), pi0))) is Verdict.NO, ""),
            ("d0 and d1 witnesses", gamma_witness_check() == (Verdict.YES, Verdict.YES), ""),
        ]

        pool = [d, numeral(0), numeral(1), numeral(2), numeral(3), B, C, I, K, W, CC]
        d2 = numeral(2)

        def disguise(t: Term) -> Term:
            """A few redexes in front of t; each reduces back to t against any stack"""
            for _ in range(rng.randint(0, 3)):
                junk = rng.choice(pool)
                t = rng.choice([App(I, t), app(K, t, junk), app(C, K, junk, t), app(B, I, I, t)])
            return t

        def sample() -> Process:
            roll = rng.random()
            if roll < 0.3:
                head = random_cterm(rng, pool, 8)
                return Process(head, make_stack([rng.choice(pool) for _ in range(rng.randint(0, 3))], pi0))
            if roll < 0.8:
                extra = [rng.choice(pool) for _ in range(rng.randint(0, 2))]
                return Process(disguise(App(d, numeral(rng.choice([0, 1, 2])))), make_stack(extra, pi0))
            premises = [rng.choice([halting(0), halting(1), I]) for _ in range(3)]
            return Process(disguise(d), make_stack([d2] + premises, pi0))

        both, closure_breaks, members = 0, 0, 0
        corpus = 500
        for _ in range(corpus):
            p = sample()
            verdicts = {pole: pole.member(p) for pole in (pole00, pole01)}
            both += all(verdict is Verdict.YES for verdict in verdicts.values())
            for pole, verdict in verdicts.items():
                if verdict is Verdict.YES:
                    members += 1
                    trace = run(p, 2000)
                    closure_breaks += any(pole.member(state) is not Verdict.YES for state in trace.states)
        checks.append(("thread poles (0,0) and (0,1) are disjoint", both == 0, f"{both}/{corpus} in both"))
        checks.append(("membership is closed under reduction", closure_breaks == 0,
                       f"{closure_breaks} breaks over {members} members"))
        checks.append(("at least 100 members checked", members >= 100, f"{members} members"))

        # positions of the two premises that realize F in each case; the stack stays on one thread
        configurations = {'(0,0)': (0, 2), '(1,1)': (1, 2), '(0,1)': (0, 1)}
        for label, realizers in configurations.items():
            ok = True
            for thread in (0, 1):
                stack = thread_constant(thread)
                premises = [halting(thread) if index in realizers else I for index in range(3)]
                ok &= global_member(Process(d, make_stack([d2] + premises, stack))) is Verdict.YES
                for flipped in realizers:
                    weakened = [I if index == flipped else term for index, term in enumerate(premises)]
                    ok &= global_member(Process(d, make_stack([d2] + weakened, stack))) is Verdict.NO
            checks.append((f"d 2 majority realizer {label}", ok, "on both threads, and out with one premise flipped"))
        return checks

    # === TRUTH VALUES === #

    def truth(self, rng: random.Random) -> List:
        wrappers = unary_wrappers(Settings.INT_BOUND)
        sweep = correspondence_sweep(3, wrappers, bound=Settings.INT_BOUND)
        first = f", first {show(sweep.failures[0][0])} at {sweep.failures[0][1].condition}" if sweep.failures else ''
        expected = formula_count(3, len(wrappers))
        shrunk = [f for f in formula_corpus(2, bound=1) if not tv(f, [RHO]) <= tv(widen(f, 1), [RHO])]
        return [
            ("U_p and U^p match the B-side clauses", not sweep.failures,
             f"{len(sweep.failures)} disagreements over {sweep.formulas} formulas"
             f" ({sweep.checked} checked in {sweep.classes} classes){first}"),
            ("every formula up to depth 3 is covered", sweep.formulas == expected,
             f"{sweep.formulas} of {expected}"),
            ("widening integer bounds never shrinks tv", not shrunk,
             show(shrunk[0]) if shrunk else f"{formula_count(2, len(wrappers))} formulas"),
        ]

    # === GENERATORS === #

    def generators(self, rng: random.Random) -> List:
        corpus = formula_corpus(4, rng, sample=30)
        bad = [show(f) for f in corpus
               for term in (theta(0, f), theta(1, f), tau(0, f), tau(1, f))
               if not (is_closed(term) and is_proof_like(term))]
        checks = [("theta and tau are closed and proof-like", not bad, f"{len(bad)} bad outputs")]

        for u in (TOP, EqHook(Lit(0), Lit(1), TOP), EqHook(Lit(0), Lit(0), TOP)):
            verdicts = [realizes(realizer, statement, EmptyPole(), [RHO]) for _, realizer, statement
                        in guarded_statements(u)]
            checks.append((f"guarded statements for {show(u)}", all(v is Verdict.YES for v in verdicts),
                           ', '.join(v.value for v in verdicts)))

        inputs = PipelineInputs(phi0=I, formula=BOT)
        program = extract(inputs)
        phi1 = compile_lambda(parse("\\x. I (I x)", 'lambda'))
        expected = app(tau(1, BOT), ZERO, app(C, star(phi1), I))
        checks.append(("extraction is the pipeline composition", program == expected, render(program)))
        checks.append(("extracted program is proof-like", is_proof_like(program) and is_closed(program), ""))
        trace = run(Process(program, RHO), 10000, keep_states=False)
        checks.append(("extracted program runs", trace.steps >= 0, f"{trace.steps} steps"))

        peirce = parse_derivation("1 peirce | |- cc : ((A -> B) -> A) -> A")
        checks.append(("Peirce's law is accepted", check_derivation(peirce)[0], ""))
        valid = [parse_derivation(text) for text in VALID_DERIVATIONS]
        checks.append(("valid derivations are accepted", all(check_derivation(d)[0] for d in valid), ""))
        accepted = sum(check_derivation(mutate_derivation(rng.choice(valid), rng))[0] for _ in range(100))
        checks.append(("malformed derivations are rejected", accepted == 0, f"{accepted}/100 accepted"))
        return checks
