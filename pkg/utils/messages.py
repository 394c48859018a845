"""
Output and diagnostic templates for the krealize commands
Plain text, one fact per line
"""


class Messages:
    """Templates used by the handlers"""

    # Traces
    TRACE_STEP = "STEP {index}: {process}"
    TRACE_GAP = "..."
    TRACE_STUCK = "STUCK {reason}"
    TRACE_BUDGET = "BUDGET"
    TRACE_REACHED = "REACHED"

    # Compiler
    COMPILE_RULES = "rules: {rules}"

    # Numerals and fixtures
    BEHAVIORAL_NUMERAL = "behaves as {value}"
    NOT_A_NUMERAL = "not a numeral within budget"
    FIXTURE_LINE = "{name}: {description}"
    FIXTURE_FORM = "  {form}: {term}"

    # Poles
    POLE_ANSWER = "{verdict}"
    POLE_EVENT = "event: {event}"
    BBOT_ANSWER = "{status}"
    BBOT_WITNESS = "witness: {witness}"
    COHERENCE_ANSWER = "(0,0): {first}\n(1,1): {second}"

    # Generators
    GENERATED = "{name}: {term}"
    STATEMENT = "{label} {realizer} ||- {formula}"
    PIPELINE_PART = "{name} = {term}"

    # Derivations
    PROOF_ACCEPTED = "accepted"
    PROOF_REJECTED = "rejected at {node}: {reason}"
    PROOF_PROGRAM = "program: {term}"

    # Suites
    SUITE_CASE = "[{mark}] {suite}/{index} {name}"
    SUITE_DETAIL = "      {detail}"
    SUITE_UNDECIDED = "undecided fraction: {fraction}"
    SUITE_SUMMARY = "{suite}: {passed}/{total} passed in {elapsed}s"
    SUITE_TOTAL = "total: {passed}/{total} passed"

    # Errors
    ERROR_USAGE = "Usage error: {error}"
    ERROR_SYNTAX = "Syntax error: {error}"
    ERROR_INPUT = "Invalid input: {error}"
    ERROR_GENERIC = "Internal error: {error}"
    BUDGET_WARNING = "Budget of {budget} steps exhausted"
