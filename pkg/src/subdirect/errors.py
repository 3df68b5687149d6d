"""Exception hierarchy.

InputError and its subclasses describe bad user data; TheoremViolation is a
bug trap raised when a computed object contradicts a proven identity.
"""


class SubdirectError(Exception):
    pass


class InputError(SubdirectError, ValueError):
    pass


class NormalityError(InputError):
    pass


class HomomorphismError(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(SubdirectError):
    pass


class ResourceError(SubdirectError):
    pass


class TheoremViolation(SubdirectError, AssertionError):
    pass
