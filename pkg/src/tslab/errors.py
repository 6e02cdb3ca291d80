"""Exception hierarchy shared by all modules."""


class TslabError(Exception):
    """Base class for library errors."""


class ResourceLimit(TslabError):
    pass


class NotDivisible(TslabError, ArithmeticError):
    pass


class UnassignedVariable(TslabError, KeyError):
    pass


class NotBipartite(TslabError, ValueError):
    pass


class NotBipartiteFactor(NotBipartite):
    pass


class NonPositiveLabel(TslabError, ValueError):
    pass


class NotRecurrent(TslabError, ValueError):
    pass


class NotAffinite(TslabError, ValueError):
    pass


class NotDoubleBinding(TslabError, ValueError):
    pass


class BadParameter(TslabError, ValueError):
    pass


class InconsistentHeight(TslabError):
    pass


class VerificationError(TslabError):
    """A checked identity failed; ``reference`` names the statement that broke."""

    def __init__(self, message: str, reference: str = "", residue=None):
        super().__init__(message)
        self.reference = reference
        self.residue = residue


class RecurrenceFailed(VerificationError):
    pass


class ConservationViolated(VerificationError):
    pass


class NotLaurent(VerificationError):
    pass


class IdentityViolated(VerificationError):
    pass


class ConsistencyViolated(VerificationError):
    pass


class NoRecurrenceFound(TslabError):
    pass


class WindowTooSmall(TslabError):
    pass
