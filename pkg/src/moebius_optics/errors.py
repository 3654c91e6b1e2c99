class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class SingularResponseError(ArithmeticError):
    """A response tensor or flux expression hits a pole."""
