"""Exception hierarchy shared by all sqscope modules."""


class SqscopeError(Exception):
    """Base class for all library errors."""


class DomainError(SqscopeError):
    """An operation was called with input outside its stated domain."""


class ParseError(SqscopeError):
    """Text or spec-string input could not be parsed.

    The message names the offending position or key.
    """


class InternalInvariantError(SqscopeError):
    """An engine-internal invariant failed; this signals a bug, not bad input."""


class BudgetExceeded(SqscopeError):
    """A bounded search ran out of its wall-clock budget before completing."""
