import pytest

from core.combinators import (
    SUCC, ZERO, UnknownFixtureError, fixture, fixture_forms, fixture_names, halting, iter_apply, numeral,
)
from core.machine import behavioral_numeral, run
from core.terms import C, I, K, App, Const, Process, Push, StackConst, make_stack, parse

PHI, ALPHA, DELTA, ZETA, XI = (Const(name) for name in ('phi', 'alpha', 'delta', 'zeta', 'xi'))
RHO = StackConst('rho')


def final(p):
    return run(p, keep_states=False).final


def test_numerals():
    assert numeral(0) == ZERO == App(K, I)
    assert numeral(2) == App(SUCC, App(SUCC, ZERO))
    assert iter_apply(PHI, 3, ALPHA) == App(PHI, App(PHI, App(PHI, ALPHA)))
    with pytest.raises(ValueError):
        iter_apply(PHI, -1, ALPHA)


@pytest.mark.parametrize("n", range(0, 21, 4))
def test_numeral_iterates(n):
    trace = run(Process(numeral(n), make_stack([PHI, ALPHA], RHO)),
                stop=lambda state: state == Process(iter_apply(PHI, n, ALPHA), RHO))
    assert not trace.stuck


@pytest.mark.parametrize("n", range(0, 21, 5))
def test_numeral_with_composed_function(n):
    start = Process(numeral(n), make_stack([App(App(C, parse("B")), PHI), ZETA, ALPHA], RHO))
    assert final(start) == Process(ZETA, Push(iter_apply(PHI, n, ALPHA), RHO))


def test_successor_law():
    nu = Const('nu')
    assert final(Process(SUCC, make_stack([nu, PHI, ALPHA], RHO))) == \
        Process(nu, make_stack([PHI, App(PHI, ALPHA)], RHO))


@pytest.mark.parametrize("form", ['printed', 'lambda'])
def test_sigma_omega_iteration(form):
    sigma, omega = fixture('Sigma', form), fixture('Omega', form)
    for n in range(6):
        start = Process(iter_apply(sigma, n, omega), make_stack([DELTA, PHI, ALPHA], RHO))
        trace = run(start, stop=lambda state: state == Process(iter_apply(PHI, n, ALPHA), RHO))
        assert not trace.stuck


def test_fixed_point():
    y = fixture('Y')
    trace = run(Process(y, Push(XI, RHO)), stop=lambda state: state == Process(XI, Push(App(y, XI), RHO)))
    assert not trace.stuck and not trace.budget_exhausted


def test_both_forms_of_A_agree():
    for term in fixture_forms('A').values():
        trace = run(Process(term, make_stack([ALPHA, PHI], RHO)),
                    stop=lambda state: state == Process(PHI, Push(App(App(ALPHA, ALPHA), PHI), RHO)))
        assert not trace.stuck


def test_fixture_table():
    assert 'Sigma2' in fixture_names()
    assert fixture('succ') == SUCC
    assert fixture('zero') == ZERO
    assert fixture('Sigma', 'printed') == parse("B ((B W)(B B))")
    assert fixture('Sigma2') == App(C, App(C, fixture('Sigma')))
    assert fixture('d0') == halting(0) == App(Const('d'), ZERO)
    assert set(fixture_forms('Omega')) == {'printed', 'lambda'}


def test_unknown_fixtures():
    with pytest.raises(UnknownFixtureError):
        fixture('nope')
    with pytest.raises(UnknownFixtureError):
        fixture('succ', 'lambda')


def test_halting_arguments_are_numerals():
    assert behavioral_numeral(halting(1).arg) == 1
