"""Exception hierarchy.

Every error raised on bad input derives from :class:`ConfEquivError`, which the
CLI maps to exit code 2.
"""


class ConfEquivError(Exception):
    pass


class InvalidGroupSpec(ConfEquivError):
    pass


class UnsupportedOnInfinite(ConfEquivError):
    pass


class BadRepresentativePair(ConfEquivError):
    pass


class ScopeViolation(ConfEquivError):
    pass


class ShapeMismatch(ConfEquivError):
    pass


class NotEpimorphism(ConfEquivError):
    pass


class NotNormal(ConfEquivError):
    pass


class NotGenerating(ConfEquivError):
    pass


class UnsupportedKind(ConfEquivError):
    pass


class UnsupportedDescription(ConfEquivError):
    pass


class UnsupportedOnQuotient(ConfEquivError):
    pass


class TooLarge(ConfEquivError):
    pass
