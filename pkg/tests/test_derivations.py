import pytest

from core.derivations import (
    DerivationSyntaxError, check_derivation, extract_program, parse_derivation,
)
from core.formulas import Atom, Imp
from core.terms import CC, I

IDENTITY = r"""
# identity
1 ax | x : A |- x : A
2 lam 1 | |- \x. x : A -> A
"""

MODUS_PONENS = r"""
1 ax | f : A -> B; x : A |- f : A -> B
2 ax | f : A -> B; x : A |- x : A
3 app 1 2 | f : A -> B; x : A |- f x : B
"""

INSTANCES = r"""
1 ax | h : forall x. P(x) |- h : forall x. P(x)
2 inst 1 [x:=y] | h : forall x. P(x) |- h : P(y)
3 gen 2 | h : forall x. P(x) |- h : forall y. P(y)
"""


def test_parse_derivation():
    derivation = parse_derivation(IDENTITY)
    assert len(derivation.judgments) == 2
    conclusion = derivation.conclusion
    assert conclusion.rule == 'lam' and conclusion.premises == ('1',)
    assert conclusion.formula == Imp(Atom('A'), Atom('A'))
    assert conclusion.context == ()


def test_numeric_rule_names():
    derivation = parse_derivation("1 6 | |- cc : ((A -> B) -> A) -> A")
    assert derivation.conclusion.rule == 'peirce'
    assert derivation.conclusion.term == CC


@pytest.mark.parametrize("text", [IDENTITY, MODUS_PONENS, INSTANCES,
                                  "1 peirce | |- cc : ((A -> B) -> A) -> A",
                                  "1 ax | z : F |- z : F\n2 efq 1 | z : F |- z : A"])
def test_valid_derivations(text):
    assert check_derivation(parse_derivation(text)) == (True, None, "accepted")


@pytest.mark.parametrize("text, node, reason", [
    ("1 ax | x : A |- x : B", '1', "x is declared with A"),
    ("1 ax | |- x : A", '1', "axiom term must be a variable declared in the context"),
    ("1 peirce | |- cc : (A -> B) -> A", '1', "formula is not of the shape ((A -> B) -> A) -> A"),
    ("1 peirce | |- I : ((A -> B) -> A) -> A", '1', "Peirce's law is realized by cc"),
    ("1 ax | x : A |- x : A\n1 ax | x : A |- x : A", '1', "duplicate judgment id"),
    ("1 lam 2 | |- \\x. x : A -> A", '1', "unknown premise 2"),
    ("1 ax | x : A |- x : A\n2 efq 1 | x : A |- x : B", '2', "premise must prove F"),
    ("1 ax | x : A |- x : A\n2 app 1 | x : A |- x x : A", '2', "rule app takes 2 premises, got 1"),
    ("1 ax | x : A; x : A |- x : A", '1', "context declares a variable twice"),
])
def test_rejections(text, node, reason):
    assert check_derivation(parse_derivation(text)) == (False, node, reason)


def test_generalizing_a_hypothesis_variable_is_rejected():
    text = "1 ax | h : P(y) |- h : P(y)\n2 gen 1 | h : P(y) |- h : forall y. P(y)"
    accepted, node, reason = check_derivation(parse_derivation(text))
    assert not accepted and node == '2'
    assert reason == "y appears in a hypothesis"


def test_wrong_instance_is_rejected():
    text = INSTANCES.replace("h : P(y)", "h : P(z)", 1)
    accepted, node, reason = check_derivation(parse_derivation(text))
    assert not accepted and node == '2'
    assert reason.startswith("expected")


@pytest.mark.parametrize("text", [
    "",
    "# only a comment",
    "1 ax x : A |- x : A",
    "1 nope | x : A |- x : A",
    "1 ax | x : A |- x : A ->",
    "1 ax | x : A |- ( : A",
])
def test_syntax_errors(text):
    with pytest.raises(DerivationSyntaxError):
        parse_derivation(text)


def test_extract_program():
    assert extract_program(parse_derivation(IDENTITY)) == I
    assert extract_program(parse_derivation("1 peirce | |- cc : ((A -> B) -> A) -> A")) == CC
