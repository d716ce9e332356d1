"""Exception types shared across the package.

Every error raised deliberately by patlab derives from PatlabError, so
callers (and the CLI) can distinguish our diagnostics from genuine bugs.
"""


class PatlabError(Exception):
    """Base class for all errors raised by this package."""


class DuplicateValue(PatlabError):
    """Two values compared equal where pairwise-distinct input is required."""


class TieDetected(PatlabError):
    """Two orbit values are too close to order reliably; the sample carries no pattern."""


class OutOfDomain(PatlabError):
    """A point lies outside the map's domain [0, 1]."""


class UnknownMap(PatlabError):
    """Catalog lookup with an unrecognized map name."""


class BadParameter(PatlabError):
    """A parameter violates an operation's preconditions."""


class ResourceLimit(PatlabError):
    """A configured search or subdivision budget was exceeded."""


class ParseError(PatlabError):
    """Malformed textual input (permutation word, map spec, or JSON)."""


class ValidationError(PatlabError):
    """Structurally well-formed input that violates a semantic invariant."""
