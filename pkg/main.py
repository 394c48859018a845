"""
krealize
Command-line workbench for the execution machine, realizers and poles
"""

import logging
import sys

import click

from config.settings import Settings, validate_environment
from handlers.pole import PoleHandler
from handlers.realizers import RealizerHandler
from handlers.suite import SuiteHandler
from handlers.terms import TermHandler
from utils.helpers import Output
from utils.messages import Messages

# Logging goes to stderr so command output stays clean
_handlers = [logging.StreamHandler(sys.stderr)]
if Settings.LOG_FILE:
    _handlers.append(logging.FileHandler(Settings.LOG_FILE))

logging.basicConfig(
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    level=getattr(logging, Settings.LOG_LEVEL, logging.WARNING),
    handlers=_handlers,
)

logger = logging.getLogger(__name__)

POLE_KINDS = ['thread', 'global', 'empty', 'everything', 'target']
GENERATORS = ['theta0', 'theta1', 'tau0', 'tau1']
CATEGORY_CHOICE = click.Choice(['term', 'cterm', 'lambda', 'stack', 'process'])


class KrealizeGroup(click.Group):
    """Maps click usage errors to exit code 1 and command return values to the exit code"""

    def main(self, args=None, prog_name=None, **extra):
        extra.pop('standalone_mode', None)
        try:
            code = super().main(args, prog_name, standalone_mode=False, **extra)
        except click.ClickException as e:
            e.show()
            sys.exit(Settings.EXIT_USAGE)
        except click.Abort:
            click.echo(Messages.ERROR_USAGE.format(error="aborted"), err=True)
            sys.exit(Settings.EXIT_USAGE)
        sys.exit(code if isinstance(code, int) else Settings.EXIT_OK)


class Workbench:
    """Handlers sharing one output sink"""

    def __init__(self, output: Output, seed: int):
        self.output = output
        self.seed = seed
        self.terms = TermHandler(output)
        self.poles = PoleHandler(output)
        self.realizers = RealizerHandler(output)
        self.suite = SuiteHandler(output)


pass_workbench = click.make_pass_decorator(Workbench)


def pole_options(func):
    """Options shared by the pole queries"""
    func = click.option('--target', 'targets', multiple=True, help='Target process of a target pole.')(func)
    func = click.option('--budget', type=int, default=None, help='Step budget per run.')(func)
    func = click.option('--depth', type=int, default=None, help='Majority recursion depth.')(func)
    func = click.option('--j', 'j', type=int, default=0, show_default=True)(func)
    func = click.option('--i', 'i', type=int, default=0, show_default=True)(func)
    func = click.option('--kind', type=click.Choice(POLE_KINDS), default='thread', show_default=True)(func)
    return func


@click.group(cls=KrealizeGroup)
@click.option('--json', 'json_mode', is_flag=True, help='Line-delimited JSON records instead of text.')
@click.option('--paper-style', '--prefix-style', 'prefix_style', is_flag=True, help='Print applications as (t)u.')
@click.option('--seed', type=int, default=None, help='Seed for randomized suites.')
@click.version_option(Settings.APP_VERSION, prog_name=Settings.APP_NAME)
@click.pass_context
def cli(ctx: click.Context, json_mode: bool, prefix_style: bool, seed):
    """Realizability workbench: terms, machine runs, starred terms, poles and realizers"""
    if not validate_environment():
        raise click.ClickException("invalid configuration")
    if seed is not None and seed < 0:
        raise click.BadParameter("seed must be non-negative", param_hint='--seed')
    ctx.obj = Workbench(Output(json_mode, prefix_style), Settings.SEED if seed is None else seed)


# === TERMS === #

@cli.command('parse')
@click.argument('text')
@click.option('--category', type=CATEGORY_CHOICE, default='term', show_default=True)
@pass_workbench
def parse_command(bench: Workbench, text: str, category: str):
    """Parse a literal and print its canonical form."""
    return bench.terms.parse(text, category)


@cli.command('compile')
@click.argument('text')
@click.option('--strict', is_flag=True, help='Reject results with free variables.')
@click.option('--rules', 'show_rules', is_flag=True, help='List the abstraction rules fired.')
@pass_workbench
def compile_command(bench: Workbench, text: str, strict: bool, show_rules: bool):
    """Compile a lambda term to combinators."""
    return bench.terms.compile(text, strict, show_rules)


@cli.command('run')
@click.argument('text')
@click.option('--budget', type=int, default=None, help='Step budget (default KREALIZE_MAX_STEPS).')
@click.option('--trace', is_flag=True, help='Print every state.')
@click.option('--elide', type=int, default=None, help='Keep only the first and last N states of a trace.')
@pass_workbench
def run_command(bench: Workbench, text: str, budget, trace: bool, elide):
    """Run a process on the machine."""
    return bench.terms.run(text, budget, trace, elide)


@cli.command('star')
@click.argument('text')
@pass_workbench
def star_command(bench: Workbench, text: str):
    """Star transform of a closed combinator term."""
    return bench.terms.star(text)


@cli.command('numeral')
@click.argument('n', type=int)
@click.option('--star', 'starred', is_flag=True, help='Print n* instead of n.')
@click.option('--check', is_flag=True, help='Also report the behavioral value.')
@pass_workbench
def numeral_command(bench: Workbench, n: int, starred: bool, check: bool):
    """Print a numeral."""
    return bench.terms.numeral(n, starred, check)


@cli.command('fixture')
@click.argument('name', required=False)
@click.option('--form', type=click.Choice(['printed', 'lambda']), default=None)
@pass_workbench
def fixture_command(bench: Workbench, name, form):
    """List fixtures, or print one."""
    return bench.terms.fixture(name, form)


# === POLES === #

@cli.group('pole')
def pole_group():
    """Pole queries."""


@pole_group.command('member')
@click.argument('text')
@pole_options
@pass_workbench
def member_command(bench: Workbench, text: str, kind: str, i: int, j: int, depth, budget, targets):
    """Is a process in the pole?"""
    return bench.poles.member(text, kind, i, j, depth, budget, targets)


@pole_group.command('bbot')
@click.argument('text')
@pole_options
@click.option('--width', type=int, default=5, show_default=True, help='Window dom(p)..dom(p)+width.')
@pass_workbench
def bbot_command(bench: Workbench, text: str, kind: str, i: int, j: int, depth, budget, targets, width: int):
    """Is a B-process (t , p) * (s , q) in the pole of B?"""
    return bench.poles.bbot(text, kind, i, j, depth, budget, targets, width)


@pole_group.command('coherence')
@click.argument('text')
@click.option('--depth', type=int, default=None)
@click.option('--budget', type=int, default=None)
@pass_workbench
def coherence_command(bench: Workbench, text: str, depth, budget):
    """Check that a proof-like term is not in both thread poles."""
    return bench.poles.coherence(text, depth, budget)


# === REALIZERS === #

@cli.command('gen')
@click.option('--kind', 'name', type=click.Choice(GENERATORS), required=True, help='Generator to build.')
@click.option('--formula', 'formula_file', type=click.File('r'), required=True,
              help='File holding an elementary formula (- for stdin).')
@pass_workbench
def gen_command(bench: Workbench, name: str, formula_file):
    """Generate theta or tau for an elementary formula."""
    return bench.realizers.gen(name, formula_file.read().strip())


@cli.command('statements')
@click.argument('formula')
@click.option('--bound', type=int, default=None, help='Integer bound (default KREALIZE_INT_BOUND).')
@pass_workbench
def statements_command(bench: Workbench, formula: str, bound):
    """The four guarded transfer statements and their realizers."""
    return bench.realizers.statements(formula, bound)


@cli.command('extract')
@click.option('--phi0', 'phi0_file', type=click.File('r'), required=True, help='File holding the realizer Phi0.')
@click.option('--formula', 'formula_file', type=click.File('r'), required=True,
              help='File holding the elementary formula F.')
@click.option('--h', 'h_file', type=click.File('r'), default=None, help='File holding the realizer H (default I).')
@click.option('--delta', 'delta_file', type=click.File('r'), default=None, help='File holding Delta (default I).')
@click.option('--parts', 'show_parts', is_flag=True, help='Print the intermediate terms.')
@pass_workbench
def extract_command(bench: Workbench, phi0_file, formula_file, h_file, delta_file, show_parts: bool):
    """Extract a program from a proof-like realizer."""
    h_text = h_file.read().strip() if h_file else None
    delta_text = delta_file.read().strip() if delta_file else None
    return bench.realizers.extract(phi0_file.read().strip(), formula_file.read().strip(), h_text, delta_text,
                                   show_parts)


@cli.command('check-proof')
@click.argument('source', type=click.File('r'))
@click.option('--program', 'show_program', is_flag=True, help='Print the compiled conclusion term.')
@pass_workbench
def check_proof_command(bench: Workbench, source, show_program: bool):
    """Check a derivation file ('-' for stdin)."""
    return bench.realizers.check_proof(source.read(), source.name, show_program)


# === SUITES === #

@cli.command('suite')
@click.argument('name', default='all')
@click.option('--budget', type=int, default=None)
@click.option('--verbose', '-v', is_flag=True, help='List passing cases too.')
@pass_workbench
def suite_command(bench: Workbench, name: str, budget, verbose: bool):
    """Run an acceptance group, or all of them."""
    return bench.suite.run(name, bench.seed, budget, verbose)


def main():
    cli(prog_name=Settings.APP_NAME)


if __name__ == "__main__":
    main()
