"""Exception hierarchy shared by every knapqsec module."""


class KnapqsecError(ValueError):
    """Base class; every error carries a stable ``name`` used by the CLI."""

    @property
    def name(self) -> str:
        return type(self).__name__


class FieldError(KnapqsecError):
    """An input field failed validation; ``field`` names it."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


# core
class ModulusTooSmall(FieldError):
    pass


class ResidueOutOfRange(FieldError):
    pass


class EmptyVector(FieldError):
    pass


class InstanceTooLarge(KnapqsecError):
    pass


class DegenerateVector(KnapqsecError):
    pass


# quantum_sim
class WidthMismatch(KnapqsecError):
    pass


# chor_rivest
class DegreeOverflow(KnapqsecError):
    pass


class NotMonic(KnapqsecError):
    pass


class BadParameters(KnapqsecError):
    pass


class FactoringBudgetExceeded(KnapqsecError):
    pass


class ZeroElement(KnapqsecError):
    pass


class MessageOutOfRange(KnapqsecError):
    pass


class WrongWeight(KnapqsecError):
    pass


class MalformedCiphertext(KnapqsecError):
    pass


# param_security
class DegenerateModulus(KnapqsecError):
    pass


class MalformedInstance(FieldError):
    """Instance document is structurally wrong (missing key, wrong type)."""


class MalformedKey(FieldError):
    """Key document is missing fields or violates key invariants."""
