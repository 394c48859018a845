import pytest
from hypothesis import given, settings
from pydantic import ValidationError

from core.combinators import ZERO, numeral
from core.compiler import compile_lambda
from core.forcing import all_conditions, star, star_numeral
from core.formulas import BOT, TOP, Atom, ForallInt, Imp, parse_formula
from core.machine import behavioral_numeral, run
from core.poles import EmptyPole, Verdict
from core.realizers import (
    ExtractionError, PipelineInputs, collapse_realizers, extract, generate, guarded_statements, pipeline_parts,
    t_conversion, tau, theta, transfer_from_forcing, transfer_to_forcing,
)
from core.terms import (
    C, I, K, App, Const, Cont, Process, Push, StackConst, Var, app, is_closed, is_proof_like, make_stack, parse,
)
from core.truth import realizes
from tests.strategies import elementary_formulas

NU, KAPPA, XI, ETA, ZETA = (Const(name) for name in ('nu', 'kappa', 'xi', 'eta', 'zeta'))
RHO = StackConst('rho')


def final(p):
    return run(p, keep_states=False).final


def test_theta_of_atomic_formulas_is_the_identity_realizer():
    assert theta(0, TOP) == App(K, App(I, I))
    assert theta(1, BOT) == theta(0, TOP)


def test_theta_ignores_hooks_and_finite_quantifiers():
    assert theta(0, parse_formula("[0=1]=> forall x in {0}. T -> F")) == theta(0, Imp(TOP, BOT))


@pytest.mark.parametrize("name", ['theta0', 'theta1', 'tau0', 'tau1'])
@pytest.mark.parametrize("text", ["T", "F -> F", "forall_int^2 n. F", "(T -> F) -> forall_int^1 n. T"])
def test_generators_are_closed_and_proof_like(name, text):
    term = generate(name, parse_formula(text))
    assert is_closed(term) and is_proof_like(term)


@settings(max_examples=40, deadline=None)
@given(elementary_formulas(max_leaves=4))
def test_generated_terms_are_proof_like(f):
    for kind in (0, 1):
        assert is_proof_like(theta(kind, f)) and is_proof_like(tau(kind, f))


def test_bad_generator_arguments():
    with pytest.raises(ValueError):
        theta(2, TOP)
    with pytest.raises(ValueError):
        generate('theta2', TOP)
    with pytest.raises(ExtractionError):
        theta(0, Atom('P'))
    with pytest.raises(ValueError):
        t_conversion('T2')


def test_collapsing_realizers():
    theta0, theta1 = collapse_realizers()
    assert final(Process(theta0, make_stack([NU, KAPPA, XI], RHO))) == Process(XI, Push(NU, RHO))
    for n in (0, 2, 5):
        end = final(Process(theta1, make_stack([numeral(n), ETA], RHO)))
        assert end.head == ETA
        assert behavioral_numeral(end.stack.top) == n + 1
        assert end.stack.rest == Push(star_numeral(n), RHO)


@pytest.mark.parametrize("n", [0, 1, 4, 9])
def test_integer_conversions(n):
    assert final(Process(t_conversion('T0'), make_stack([ZETA, numeral(n)], RHO))) == \
        Process(ZETA, Push(star_numeral(n), RHO))
    end = final(Process(t_conversion('T1'), make_stack([ZETA, star_numeral(n)], RHO)))
    assert end.head == ZETA and end.stack.rest == RHO
    assert behavioral_numeral(end.stack.top) == n


def test_transfers_apply_tau_to_zero():
    f = ForallInt('n', 1, BOT)
    assert transfer_to_forcing(f, I) == App(App(tau(0, f), ZERO), I)
    assert transfer_from_forcing(f, I) == App(App(tau(1, f), ZERO), I)


def test_guarded_statements_for_true():
    conditions = all_conditions(1, [0, 1])
    statements = guarded_statements(TOP, conditions, bound=2)
    assert [label for label, _, _ in statements] == ['(i)', '(ii)', '(iii)', '(iv)']
    for _, realizer, statement in statements:
        assert realizes(realizer, statement, EmptyPole(), [RHO]) is Verdict.YES


def test_extraction_composes_the_pipeline():
    program = extract(PipelineInputs(phi0=I, formula=BOT))
    phi1 = compile_lambda(parse("\\x. I (I x)", 'lambda'))
    assert program == app(tau(1, BOT), ZERO, app(C, star(phi1), I))
    assert is_closed(program) and is_proof_like(program)


def test_pipeline_parts():
    parts = pipeline_parts(PipelineInputs(phi0=K, formula=TOP, h=I, delta=I))
    assert list(parts) == ['Phi1', 'Psi', 'tau1', 'Phi']
    assert parts['Phi'] == extract(PipelineInputs(phi0=K, formula=TOP))


@pytest.mark.parametrize("fields", [
    {'phi0': Cont(RHO), 'formula': TOP},
    {'phi0': Var('x'), 'formula': TOP},
    {'phi0': I, 'formula': Atom('P')},
    {'phi0': I, 'formula': TOP, 'delta': "I"},
])
def test_pipeline_rejects_bad_inputs(fields):
    with pytest.raises(ValidationError):
        PipelineInputs(**fields)
