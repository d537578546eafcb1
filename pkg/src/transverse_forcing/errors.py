"""Error types raised by the toolkit.

Every error carries its class name as the diagnostic tag printed by the CLI.
"""


class ForcingError(Exception):
    """Base class for all toolkit errors."""

    @property
    def tag(self):
        return type(self).__name__


# chart construction and chord predicates
class InterleavingChords(ForcingError):
    pass


class DuplicateEndpoint(ForcingError):
    pass


class DuplicateId(ForcingError):
    pass


class NotDisjoint(ForcingError):
    pass


class WrongModel(ForcingError):
    pass


class UnknownChord(ForcingError):
    pass


class WindowExceeded(ForcingError):
    pass


class ChartFormatError(ForcingError):
    pass


# paths
class NotIncreasing(ForcingError):
    pass


class MissingForcedCrossing(ForcingError):
    pass


class Unrealizable(ForcingError):
    pass


class ChartMismatch(ForcingError):
    pass


class NotALine(ForcingError):
    pass


class InvalidPath(ForcingError):
    pass


# relative order
class SeparationViolation(ForcingError):
    pass


# forcing calculus
class StaleWitness(ForcingError):
    pass


class SpliceInvalid(ForcingError):
    pass


class HypothesisViolation(ForcingError):
    pass


class SignViolation(ForcingError):
    pass


# subshifts
class NoConvergence(ForcingError):
    pass


class ExplosionGuard(ForcingError):
    pass


class UnboundIndex(ForcingError):
    pass


class InadmissibleWord(ForcingError):
    pass


class InvalidDiagram(ForcingError):
    pass
