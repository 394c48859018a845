import pytest
from hypothesis import given, settings, strategies as st

from core.compiler import StrictCompileError, compile_lambda, firing_bound, lam, lambda_closure, mlbd, occurs
from core.machine import run
from core.terms import B, C, I, K, W, App, Const, Process, StackConst, Var, is_closed, make_stack, parse, substitute
from tests.strategies import cterms

x, y, f = Var('x'), Var('y'), Var('f')


def test_identity_compiles_to_I():
    assert compile_lambda(parse("\\x. x", 'lambda')) == I


@pytest.mark.parametrize("body, expected, rule", [
    (y, App(K, y), 1),
    (x, I, 2),
    (App(x, y), App(App(C, I), y), 3),
    (App(f, x), f, 4),
    (App(x, x), App(W, I), 5),
])
def test_mlbd_rules(body, expected, rule):
    fired = []
    assert mlbd('x', body, fired) == expected
    assert fired[0][0] == rule


def test_rule_six_composes():
    # f (g x) becomes B f g
    assert mlbd('x', App(f, App(Var('g'), x))) == App(App(B, f), Var('g'))


def test_lam_goes_through_identity():
    assert lam('x', y) == App(K, App(I, y))
    assert lam('x', x) == I


def test_strict_compilation_rejects_free_variables():
    with pytest.raises(StrictCompileError):
        compile_lambda(parse("\\x. y", 'lambda'), strict=True)
    assert compile_lambda(parse("\\x. \\y. y x", 'lambda'), strict=True)


def test_nested_binders_compile_closed():
    assert is_closed(compile_lambda(parse("\\f. \\a. f (f a)", 'lambda')))


@settings(max_examples=300, deadline=None)
@given(cterms(variables=('x0', 'x1')), st.sampled_from(['x0', 'x1']))
def test_mlbd_eliminates_its_variable(body, name):
    fired = []
    result = mlbd(name, body, fired)
    assert not occurs(name, result)
    assert len(fired) <= firing_bound(body)


@settings(max_examples=150, deadline=None)
@given(cterms(variables=('x0', 'x1', 'x2'), max_leaves=15))
def test_compiled_closure_reaches_substituted_body(body):
    variables = ['x0', 'x1', 'x2']
    constants = [Const(f"arg{index}") for index in range(3)]
    rho = StackConst('rho')
    start = Process(lambda_closure(variables, body), make_stack(constants, rho))
    target = Process(substitute(body, dict(zip(variables, constants))), rho)
    trace = run(start, 20000, keep_states=False, stop=lambda state: state == target)
    assert not trace.stuck and not trace.budget_exhausted
