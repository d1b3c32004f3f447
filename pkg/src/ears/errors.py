"""Exception types shared by all modules.

Every error carries a short ``code`` so the CLI can report it in JSON
without parsing messages.
"""


class EarsError(Exception):
    code = "Error"

    def __init__(self, message="", **detail):
        super().__init__(message or self.code)
        self.detail = detail

    def as_dict(self):
        out = {"error": self.code, "message": str(self)}
        out.update({k: v for k, v in self.detail.items()})
        return out


class InputError(EarsError):
    """Base class for errors caused by malformed input (CLI exit code 2)."""
    code = "InputError"


class DimensionMismatch(InputError):
    code = "DimensionMismatch"


class ContainmentViolation(InputError):
    code = "ContainmentViolation"


class PreconditionViolation(InputError):
    code = "PreconditionViolation"


class MissingZero(InputError):
    code = "MissingZero"


class NotSpanning(InputError):
    code = "NotSpanning"


class IllegalTypeRank(InputError):
    code = "IllegalTypeRank"


class TwistOutOfRange(InputError):
    code = "TwistOutOfRange"


class LatticeConstraintViolated(InputError):
    code = "LatticeConstraintViolated"


class StructureViolated(InputError):
    code = "StructureViolated"


class NotARoot(InputError):
    code = "NotARoot"


class NotInSystem(InputError):
    code = "NotInSystem"


class IsotropicRoot(InputError):
    code = "IsotropicRoot"


class IndexOutOfRange(InputError):
    code = "IndexOutOfRange"


class RootOutsideSystem(InputError):
    code = "RootOutsideSystem"


class DomainConstraintViolated(InputError):
    code = "DomainConstraintViolated"


class UnsupportedOrbitCriterion(InputError):
    code = "UnsupportedOrbitCriterion"


class TypeNotCovered(InputError):
    code = "TypeNotCovered"


class NotConnected(InputError):
    code = "NotConnected"


class StringBroken(EarsError):
    """A root string has a gap or the wrong length: the system is malformed."""
    code = "StringBroken"


class CapExceeded(EarsError):
    code = "CapExceeded"


class NoFiniteBase(EarsError):
    code = "NoFiniteBase"


class WindowTooSmall(EarsError):
    code = "WindowTooSmall"


class GoldenMismatch(EarsError):
    code = "GoldenMismatch"
