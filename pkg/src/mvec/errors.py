"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes, so library code should raise the most
specific class that applies rather than bare ValueError.
"""


class MvecError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MvecError):
    """Invalid data handed to an operation (mismatched ids, bad k, ...)."""


class ParseError(MvecError):
    """A file could not be parsed (ragged CSV rows, non-numeric cells, ...)."""


class ConfigError(MvecError):
    """Invalid configuration (unknown method or fuser id, bad option value)."""


class DegenerateDataError(MvecError):
    """An operation produced or received data too degenerate to continue."""
