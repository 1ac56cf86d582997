"""Exception hierarchy shared by all modules."""


class SmtiError(Exception):
    """Base class for every error raised by this package."""


class InvalidInstanceError(SmtiError, ValueError):
    """An instance violates the preference-list invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid instance")


class MalformedMatchingError(SmtiError, ValueError):
    """A matching is not a partition of the persons of its instance."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "malformed matching")


class UnacceptablePartnerError(SmtiError, ValueError):
    """A preference or cost was requested for a partner outside the ordering."""


class BoundExceededError(SmtiError):
    """A brute-force routine was asked to go beyond its configured size bound."""


class ParseError(SmtiError, ValueError):
    """Syntax error in an instance file or a ground program, with its location."""

    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
