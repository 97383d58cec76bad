class DomainError(ValueError):
    """Input is well formed but outside the domain of the operation."""


class ParseError(ValueError):
    """Text input does not match the expected grammar."""
