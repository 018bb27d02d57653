"""Exception types shared across the package."""


class SecGameError(Exception):
    pass


class CapExceeded(SecGameError):
    """A desk-scale enumeration or size cap was hit."""


class InvalidGame(SecGameError, ValueError):
    pass


class GameFormatError(SecGameError, ValueError):
    """A game file could not be parsed."""


class PreconditionFailed(SecGameError):
    def __init__(self, message, target=None):
        super().__init__(message)
        self.target = target


class InvalidTarget(SecGameError, ValueError):
    pass


class NotSSAS(SecGameError):
    pass


class NoEquilibriumFound(SecGameError):
    pass


class TooManySchedules(SecGameError, ValueError):
    pass
