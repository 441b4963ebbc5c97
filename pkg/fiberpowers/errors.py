"""
.. module:: fiberpowers.errors
    :synopsis: exception hierarchy shared by the kernel, the harness and the CLI

Library code raises these; only :mod:`fiberpowers.script` turns them into exit codes.
"""


# ========== Classes ==========
class FiberPowersError(Exception):
    """Base class for every error raised by fiberpowers."""


class StructuralError(FiberPowersError, ValueError):
    """Objects do not fit together: ring mismatch, wrong vector length, bad blocks."""


class ExponentOverflowError(StructuralError):
    """An exponent left the fixed-width range used for exponent vectors."""


class DomainError(FiberPowersError, ValueError):
    """An operation is undefined on its argument (e.g. decomposing the unit ideal)."""


class ResourceError(FiberPowersError, RuntimeError):
    """A configured budget was exhausted before the computation finished."""


class GenerationError(FiberPowersError):
    """An instance with the requested structure could not be generated."""


class ParseError(FiberPowersError, ValueError):
    """A program could not be parsed.

    :param message: human readable reason
    :type message: str
    :param offset: character offset into the source text
    :type offset: int
    :param line: 1-based line number
    :type line: int
    :param column: 1-based column number
    :type column: int
    """

    def __init__(self, message, *, offset=0, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.offset = offset
        self.line = line
        self.column = column


class EvaluationError(FiberPowersError):
    """A kernel error raised while evaluating an expression.

    :param expression: source text of the expression that failed
    :type expression: str
    :param cause: the original kernel exception
    :type cause: Exception
    """

    def __init__(self, expression, cause):
        super().__init__(f"while evaluating '{expression}': {cause}")
        self.expression = expression
        self.cause = cause
