import random

import pytest

from core.derivations import check_derivation, parse_derivation
from core.formulas import BOT, TOP, ForallInt, Imp, is_elementary
from core.suite import (
    VALID_DERIVATIONS, AcceptanceSuite, formula_corpus, formula_count, mutate_derivation, unary_wrappers,
    widen,
)
from core.terms import StackConst
from core.truth import tv

FAST = ['machine', 'starred', 'collapse', 'generators']
SLOW = ['bracket', 'numerals', 'bbot', 'threads']


def describe(report):
    return '; '.join(f"{case.name}: {case.detail}" for case in report.failures)


@pytest.mark.parametrize("name", FAST)
def test_fast_groups_pass(name):
    (report,) = AcceptanceSuite(seed=0).run(name)
    assert report.passed, describe(report)
    assert report.cases


@pytest.mark.slow
@pytest.mark.parametrize("name", SLOW)
def test_slow_groups_pass(name):
    (report,) = AcceptanceSuite(seed=0).run(name)
    assert report.passed, describe(report)


@pytest.mark.slow
def test_thread_checks_see_enough_members():
    (report,) = AcceptanceSuite(seed=0).run('threads')
    cases = {case.name: case for case in report.cases}
    assert cases["at least 100 members checked"].passed, cases["at least 100 members checked"].detail
    assert cases["membership is closed under reduction"].passed
    assert all(cases[f"d 2 majority realizer {label}"].passed for label in ('(0,0)', '(1,1)', '(0,1)'))
    assert report.elapsed < 30


@pytest.mark.slow
def test_truth_group_is_exhaustive_and_quick():
    (report,) = AcceptanceSuite(seed=0).run('truth')
    assert report.passed, describe(report)
    assert report.cases[1].detail == f"{formula_count(3, 4)} of {formula_count(3, 4)}"
    assert report.elapsed < 30


def test_unknown_group():
    with pytest.raises(ValueError):
        AcceptanceSuite().run('nope')


def test_group_names():
    assert AcceptanceSuite().names() == [
        'machine', 'bracket', 'numerals', 'starred', 'bbot', 'collapse', 'threads', 'truth', 'generators',
    ]


def test_reports_are_deterministic_for_a_seed():
    first = AcceptanceSuite(seed=7).run('machine')[0]
    second = AcceptanceSuite(seed=7).run('machine')[0]
    assert first.model_dump(exclude={'elapsed'}) == second.model_dump(exclude={'elapsed'})


def test_formula_corpus():
    corpus = formula_corpus(2)
    assert TOP in corpus and BOT in corpus
    assert all(is_elementary(f) for f in corpus)
    assert len(corpus) == len(set(corpus))
    sampled = formula_corpus(3, random.Random(0), sample=5)
    assert len(sampled) == len(corpus) + 5


def test_formula_count():
    assert [formula_count(depth, 4) for depth in range(4)] == [2, 14, 254, 65534]
    assert len(unary_wrappers(5)) == 4
    assert len(formula_corpus(1)) == formula_count(1, 4)


def test_widen_leaves_antecedents_alone():
    f = Imp(ForallInt('n', 1, TOP), ForallInt('m', 1, BOT))
    assert widen(f, 2) == Imp(ForallInt('n', 1, TOP), ForallInt('m', 3, BOT))
    base = [StackConst('p')]
    assert tv(f, base) < tv(widen(f, 2), base)


@pytest.mark.parametrize("seed", range(20))
def test_mutated_derivations_are_rejected(seed):
    rng = random.Random(seed)
    derivation = parse_derivation(rng.choice(VALID_DERIVATIONS))
    assert not check_derivation(mutate_derivation(derivation, rng))[0]
