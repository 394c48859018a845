"""
Main configuration for the krealize workbench
Every knob is read from the environment (or a .env file)
"""

import os
import sys
from typing import List, Tuple
from dotenv import load_dotenv

# Load environment
load_dotenv()


def _int_env(name: str, default: int) -> int:
    """Read an integer variable; unparsable text becomes -1 so validate() reports it"""
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError:
        return -1


class Settings:
    """Workbench configuration"""

    APP_NAME = "krealize"
    APP_VERSION = "1.0.0"

    # Logging
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING').upper()
    LOG_FILE = os.getenv('LOG_FILE', '')

    # Machine
    MAX_STEPS = _int_env('KREALIZE_MAX_STEPS', 100000)
    TRACE_ELIDE = _int_env('KREALIZE_TRACE_ELIDE', 0)

    # Poles
    POLE_DEPTH = _int_env('KREALIZE_POLE_DEPTH', 8)
    POLE_MEMO_SIZE = _int_env('KREALIZE_POLE_MEMO_SIZE', 100000)

    # Finite interpretations
    INT_BOUND = _int_env('KREALIZE_INT_BOUND', 5)
    COND_DEPTH = _int_env('KREALIZE_COND_DEPTH', 2)
    COND_ALPHABET = os.getenv('KREALIZE_COND_ALPHABET', '0,1')

    # Randomized suites
    SEED = _int_env('KREALIZE_SEED', 0)

    # Reserved identifiers of the two-threads model
    HALT_CONSTANT = 'd'
    THREAD_CONSTANTS: Tuple[str, str] = ('pi0', 'pi1')

    # Exit codes
    EXIT_OK = 0
    EXIT_USAGE = 1
    EXIT_BUDGET = 2
    EXIT_SUITE_FAILED = 3

    @classmethod
    def condition_alphabet(cls) -> List[int]:
        """Entries used when enumerating the default condition set"""
        return [int(part) for part in cls.COND_ALPHABET.split(',') if part.strip()]

    @classmethod
    def validate(cls) -> bool:
        """Validate configuration"""
        errors = []

        if cls.MAX_STEPS < 0:
            errors.append("KREALIZE_MAX_STEPS must be a non-negative integer")
        if cls.TRACE_ELIDE < 0:
            errors.append("KREALIZE_TRACE_ELIDE must be a non-negative integer")
        if cls.POLE_DEPTH < 0:
            errors.append("KREALIZE_POLE_DEPTH must be a non-negative integer")
        if cls.POLE_MEMO_SIZE < 1:
            errors.append("KREALIZE_POLE_MEMO_SIZE must be a positive integer")
        if cls.INT_BOUND < 0:
            errors.append("KREALIZE_INT_BOUND must be a non-negative integer")
        if cls.COND_DEPTH < 0:
            errors.append("KREALIZE_COND_DEPTH must be a non-negative integer")
        if cls.SEED < 0:
            errors.append("KREALIZE_SEED must be a non-negative integer")

        try:
            if not cls.condition_alphabet():
                errors.append("KREALIZE_COND_ALPHABET is empty")
        except ValueError:
            errors.append("KREALIZE_COND_ALPHABET must be comma separated integers")

        if cls.LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            errors.append(f"Unknown LOG_LEVEL {cls.LOG_LEVEL}")

        if errors:
            raise ValueError(f"Configuration invalid: {', '.join(errors)}")

        return True


def validate_environment() -> bool:
    """Validate the environment at startup"""
    try:
        Settings.validate()
        return True
    except ValueError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return False
