"""Exception hierarchy shared by every module of the package."""


class GroupError(Exception):
    """Base class for all errors raised by metanil."""


class InputError(GroupError):
    """Bad user-supplied input (CLI exit code 2)."""


class InvalidSpec(InputError):
    pass


class ParseError(InputError):
    """Malformed group-spec or manifest file.

    ``location`` names the line (for JSON syntax errors) or the offending
    field path (for schema errors).
    """

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class DegreeMismatch(GroupError, ValueError):
    pass


class TooLarge(GroupError):
    """An enumeration or coset action would exceed the configured cap."""


class NotMember(GroupError, ValueError):
    pass


class NotNormal(GroupError, ValueError):
    pass


class NotSoluble(GroupError, ValueError):
    pass


class NotPerfect(GroupError, ValueError):
    pass


class NotMetanilpotent(GroupError, ValueError):
    pass


class NotCoprime(GroupError, ValueError):
    pass


class HypothesisNotMet(GroupError, ValueError):
    """A lemma checker was called on a (G, k) outside the lemma's hypothesis."""


class InternalInconsistency(GroupError, RuntimeError):
    """Two computations that must agree did not; this is a bug, not math."""


class UnsupportedParameter(InputError, ValueError):
    pass


class NoWitness(GroupError):
    """Witness requested but the coprime-order condition holds."""
