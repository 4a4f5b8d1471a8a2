class FullIsoError(Exception):
    """Base class for every judgment failure raised by this package."""


class ParseError(FullIsoError):
    pass


class NotContractive(FullIsoError):
    pass


# cast application / checking
class CastError(FullIsoError):
    pass


class CastSourceMismatch(CastError):
    pass


class NotAnArrow(CastError):
    pass


class UnresolvedFixTarget(CastError):
    pass


class UnboundCastVar(CastError):
    pass


# term typing
class TypeError_(FullIsoError):
    pass


class UnboundVar(TypeError_):
    pass


class AppOfNonArrow(TypeError_):
    pass


class ArgTypeMismatch(TypeError_):
    pass


class SubtypeMismatch(TypeError_):
    pass


class TopNotAllowed(TypeError_):
    pass


class IllFormedType(TypeError_):
    pass


class CastTypingError(TypeError_):
    """A cast inside a term failed to apply; ``__cause__`` holds the cast error."""


# equality / subtyping
class NotEqual(FullIsoError):
    pass


class SearchExhausted(FullIsoError):
    def __init__(self, msg, depth):
        super().__init__(msg)
        self.depth = depth


# elaboration
class ElaborationError(FullIsoError):
    pass


class NotAFunction(ElaborationError):
    pass


class ArgMismatch(ElaborationError):
    pass


class TypeMismatch(ElaborationError):
    pass


class ElaborationIncomplete(ElaborationError):
    pass


# evaluation
class CastInEquiTerm(FullIsoError):
    pass


class IllTyped(FullIsoError):
    pass


class NoMatchWithinFuel(FullIsoError):
    pass
