"""Exception hierarchy shared by the library and the command line."""


class TwinRigidError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class UsageError(TwinRigidError, ValueError):
    """Bad arguments, malformed input or a violated precondition."""

    exit_code = 1


class UnsupportedAlgebraError(TwinRigidError, ValueError):
    """The quiver is not an orientation of a simply-laced Dynkin diagram."""

    exit_code = 2


class VerificationError(TwinRigidError, RuntimeError):
    """An internal cross-check or structural assertion failed."""

    exit_code = 3


class InstanceTooLargeError(UsageError):
    """A brute-force routine refused to run past its configured size guard."""
