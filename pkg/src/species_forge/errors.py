"""Exception hierarchy shared by all modules."""


class SpeciesForgeError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(SpeciesForgeError, ValueError):
    """An array or sequence has the wrong shape for its context."""


class GroupAxiomError(SpeciesForgeError, ValueError):
    pass


class DanglingReferenceError(SpeciesForgeError, IndexError):
    """A record refers to a vertex or arrow index that does not exist."""


class GuardError(SpeciesForgeError):
    """A search-space or output-size guard was exceeded."""


class PreconditionError(SpeciesForgeError, ValueError):
    pass


class DivergenceError(SpeciesForgeError):
    """The requested sum is infinite (cyclic species)."""


class DataError(SpeciesForgeError, ValueError):
    pass


class CertificateError(SpeciesForgeError):
    """An internal consistency certificate failed."""


class RoundTripError(SpeciesForgeError):
    def __init__(self, message, expected=None, obtained=None):
        super().__init__(message)
        self.expected = expected
        self.obtained = obtained


class UnsupportedError(SpeciesForgeError):
    pass


class ParseError(SpeciesForgeError, ValueError):
    pass
