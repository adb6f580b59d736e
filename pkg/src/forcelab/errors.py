"""Exception hierarchy with stable machine-readable codes for the CLI."""


class ForcelabError(Exception):
    """Base class; `code` is stable across releases and surfaces in CLI output."""

    code = "error"


class GraphError(ForcelabError):
    """Invalid graph construction: self-loop, duplicate edge, endpoint out of range."""

    code = "invalid-graph"


class CapExceeded(ForcelabError):
    """A configured desk-scale cap was exceeded."""

    code = "cap-exceeded"


class PreconditionError(ForcelabError):
    """An operation was called outside its contract."""

    code = "precondition-failed"


class NoPerfectMatching(ForcelabError):
    """Whole-graph forcing statistics are undefined without a perfect matching."""

    code = "no-perfect-matching"


class ParseError(ForcelabError):
    """Malformed graph or assignment file."""

    code = "parse-error"
