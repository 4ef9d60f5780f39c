"""
Exception roots shared by the srings library.

Library modules define their own exceptions next to the code that raises
them; the management commands only need to know these roots to pick an
exit code.
"""


class SchurLabError(Exception):
    """Base class for every error raised by the srings library"""
    pass


class ValidationFailure(SchurLabError):
    """An input violates a mathematical axiom or precondition (exit code 1)"""
    pass


class ParseError(SchurLabError):
    """Text input could not be parsed (exit code 2)"""
    pass
