from pathlib import Path

import orjson
import pytest

from core.formulas import BOT, TOP
from core.realizers import PipelineInputs, extract, theta
from core.terms import I
from main import cli
from utils.helpers import Output

GOLDEN = Path(__file__).parent / 'golden'


@pytest.mark.parametrize("args, expected", [
    (["compile", "\\x. x"], "I\n"),
    (["parse", "(B W)(B B)", "--category", "cterm"], "(B W)(B B)\n"),
    (["parse", "K I"], "{0}\n"),
    (["fixture", "succ", "--form", "printed"], "(B W)(B B)\n"),
    (["numeral", "2"], "((B W)(B B))((B W)(B B))(K I)\n"),
    (["run", "I * #a . %p"], "#a * %p\nSTUCK inert-constant\n"),
    (["pole", "coherence", "I"], "(0,0): no\n(1,1): no\n"),
    (["pole", "bbot", "(I , <>) * (%p , <>)", "--kind", "empty"], "not-in\nwitness: 0\n"),
    (["pole", "bbot", "(I , <0>) * (%p , <1>)", "--kind", "empty"], "in\n"),
])
def test_command_output(runner, args, expected):
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert result.stdout == expected


@pytest.mark.parametrize("args, name", [
    (["run", "{2} * #f . #a . %p", "--trace"], 'run_trace.out'),
    (["numeral", "3", "--star"], 'numeral_star.out'),
    (["pole", "member", "#d {0} * %pi0"], 'pole_member.out'),
])
def test_golden_output(runner, golden, args, name):
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert result.stdout == golden(name)


def test_elided_trace(runner):
    result = runner.invoke(cli, ["run", "{2} * #f . #a . %p", "--trace", "--elide", "2"])
    lines = result.stdout.splitlines()
    assert lines == ["STEP 0: {2} * #f . #a . %p", "STEP 1: (B W)(B B) * {1} . #f . #a . %p", "...",
                     "STEP 23: (#f)(#f #a) * %p", "STEP 24: #f * (#f #a) . %p", "STUCK inert-constant"]


def test_check_proof(runner):
    accepted = runner.invoke(cli, ["check-proof", str(GOLDEN / 'peirce.proof')])
    assert (accepted.exit_code, accepted.stdout) == (0, "accepted\n")
    program = runner.invoke(cli, ["check-proof", str(GOLDEN / 'identity.proof'), "--program"])
    assert program.stdout == "accepted\nprogram: I\n"
    rejected = runner.invoke(cli, ["check-proof", str(GOLDEN / 'broken.proof')])
    assert (rejected.exit_code, rejected.stdout) == (0, "rejected at 1: x is declared with A\n")


def test_check_proof_from_stdin(runner):
    result = runner.invoke(cli, ["check-proof", "-"], input=(GOLDEN / 'peirce.proof').read_text())
    assert result.stdout == "accepted\n"


def test_json_records(runner):
    result = runner.invoke(cli, ["--json", "compile", "\\x. x"])
    assert result.exit_code == 0
    assert orjson.loads(result.stdout) == {"kind": "compile", "input": "\\x. x", "result": "I", "steps": 1}


def test_json_run_record(runner):
    result = runner.invoke(cli, ["--json", "run", "I * #a . %p"])
    record = orjson.loads(result.stdout)
    assert record["result"] == {"final": "#a * %p", "terminal": "STUCK inert-constant"}
    assert record["steps"] == 1


def write(directory, name, text):
    path = directory / name
    path.write_text(text + "\n")
    return str(path)


def test_gen_reads_the_formula_file(runner, tmp_path):
    result = runner.invoke(cli, ["gen", "--kind", "theta0", "--formula", write(tmp_path, 'top.formula', "T")])
    assert result.exit_code == 0, result.output
    assert result.stdout == Output().show(theta(0, TOP)) + "\n"
    piped = runner.invoke(cli, ["gen", "--kind", "theta0", "--formula", "-"], input="T\n")
    assert piped.stdout == result.stdout


def test_extract_reads_its_inputs_from_files(runner, tmp_path):
    phi0, formula = write(tmp_path, 'phi0.term', "I"), write(tmp_path, 'bot.formula', "F")
    result = runner.invoke(cli, ["extract", "--phi0", phi0, "--formula", formula])
    assert result.exit_code == 0, result.output
    assert result.stdout == Output().show(extract(PipelineInputs(phi0=I, formula=BOT))) + "\n"
    explicit = runner.invoke(cli, ["extract", "--phi0", phi0, "--formula", formula,
                                   "--h", phi0, "--delta", phi0])
    assert explicit.stdout == result.stdout


@pytest.mark.parametrize("args, files, message", [
    (["gen", "--kind", "theta0", "--formula", "{0}"], {'p.formula': "P"}, "Invalid input"),
    (["extract", "--phi0", "{0}", "--formula", "{1}"], {'k.term': "k[%p]", 'f.formula': "T"}, "Syntax error"),
    (["gen", "--formula", "{0}"], {'t.formula': "T"}, "Missing option"),
    (["gen", "theta0", "T"], {}, "Missing option"),
])
def test_file_command_errors(runner, tmp_path, args, files, message):
    paths = [write(tmp_path, name, text) for name, text in files.items()]
    result = runner.invoke(cli, [arg.format(*paths) for arg in args])
    assert result.exit_code == 1
    assert message in result.output


def test_paper_style_flag(runner):
    plain = runner.invoke(cli, ["parse", "#f (#g #a)"])
    styled = runner.invoke(cli, ["--paper-style", "parse", "#f (#g #a)"])
    assert styled.exit_code == 0, styled.output
    assert styled.stdout != plain.stdout
    assert runner.invoke(cli, ["--prefix-style", "parse", "#f (#g #a)"]).stdout == styled.stdout


def test_other_realizer_commands(runner, tmp_path):
    formula = write(tmp_path, 'int.formula', "forall_int^1 n. F")
    for args in (["gen", "--kind", "tau1", "--formula", formula],
                 ["extract", "--phi0", write(tmp_path, 'i.term', "I"), "--formula", formula, "--parts"],
                 ["statements", "T", "--bound", "1"]):
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        assert result.stdout.strip()


def test_budget_exhaustion_exit_code(runner):
    result = runner.invoke(cli, ["run", "W * W . W . %p", "--budget", "10"])
    assert result.exit_code == 2
    assert result.stdout.endswith("BUDGET\n")


@pytest.mark.parametrize("args, message", [
    (["parse", "("], "Syntax error"),
    (["star", "#a"], "Invalid input"),
    (["fixture", "nope"], "Invalid input"),
    (["pole", "member", "I * %p"], "Invalid input"),
    (["suite", "nope"], "Invalid input"),
    (["frobnicate"], "No such command"),
])
def test_usage_errors_exit_with_one(runner, args, message):
    result = runner.invoke(cli, args)
    assert result.exit_code == 1
    assert message in result.output


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "1.0.0" in result.stdout


def test_suite_command(runner):
    result = runner.invoke(cli, ["suite", "machine"])
    assert result.exit_code == 0, result.output
    assert result.stdout.splitlines()[-2].startswith("machine: ")
