"""Exception hierarchy.

Every error raised by the library derives from :class:`OrbitEqError`.
The CLI maps :class:`InvalidInput` subclasses to exit status 2 and
:class:`Undetermined` to exit status 3.
"""


class OrbitEqError(Exception):
    """Base class for all library errors."""


class InvalidInput(OrbitEqError):
    """Input data violates a structural invariant."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyShift(InvalidInput):
    pass


class IsolatedPoints(InvalidInput):
    pass


class BadSymbol(InvalidInput):
    pass


class InadmissibleWord(InvalidInput):
    pass


class DomainMismatch(InvalidInput):
    pass


class DepthUnsupported(InvalidInput):
    pass


class BadMap(InvalidInput):
    """A tabulated map fails totality, admissibility or prefix consistency."""


class NotHomeomorphisms(InvalidInput):
    pass


class TableIncomplete(InvalidInput):
    pass


class NoRelatedExtension(InvalidInput):
    pass


class UnitsNotPreserved(InvalidInput):
    pass


class NotRankOne(InvalidInput):
    pass


class CoverIncomplete(InvalidInput):
    pass


class NotBisectionForm(InvalidInput):
    pass


class LoadError(InvalidInput):
    """A document could not be parsed or a reference did not resolve."""


class Undetermined(OrbitEqError):
    """A point or map is not determined far enough to answer."""


class Refuted(OrbitEqError):
    """An asserted relation is false; ``witness`` holds the evidence."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotComposable(Refuted):
    pass


class NotRelated(Refuted):
    pass


class NotInV(Refuted):
    pass


class InversionFailed(Refuted):
    pass


class RoundtripFailed(Refuted):
    pass


class WellDefinednessFailed(Refuted):
    pass


class CocycleLawFailed(Refuted):
    pass


class HomomorphismFailed(Refuted):
    pass


class VerificationFailed(Refuted):
    pass
