"""Exception hierarchy shared by all kanlift modules."""


class KanliftError(Exception):
    pass


class AmbientMismatch(KanliftError):
    pass


class TagMismatch(KanliftError):
    pass


class CarrierMismatch(KanliftError):
    pass


class EmptyList(KanliftError):
    pass


class UnsupportedTag(KanliftError):
    pass


class NotClosed(KanliftError):
    pass


class NotMeasurable(KanliftError):
    pass


class SpaceMismatch(KanliftError):
    pass


class NotReflexive(KanliftError):
    pass


class ActionMismatch(KanliftError):
    pass


class CarrierTooLarge(KanliftError):
    pass


class BlockLimitExceeded(KanliftError):
    pass


class InvalidStructure(KanliftError, ValueError):
    """Raised when constructor input violates a structural invariant."""
