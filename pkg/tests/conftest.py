"""
Shared fixtures
"""

from pathlib import Path

import pytest
from click.testing import CliRunner

from core.terms import Const, StackConst

GOLDEN_DIR = Path(__file__).parent / 'golden'


@pytest.fixture
def rho():
    return StackConst('rho')


@pytest.fixture
def inert():
    """Fresh instruction constants xi, eta, zeta"""
    return Const('xi'), Const('eta'), Const('zeta')


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def golden():
    def read(name: str) -> str:
        return (GOLDEN_DIR / name).read_text()
    return read
