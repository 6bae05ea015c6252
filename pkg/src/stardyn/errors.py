"""Exception hierarchy shared by every module."""


class StardynError(Exception):
    pass


class InputError(StardynError, ValueError):
    """Malformed or out-of-contract input (shape mismatch, bad descriptor...)."""


class DomainError(InputError):
    """A partial map was applied outside of its domain."""


class ContractBreach(StardynError, AssertionError):
    """An identity that must hold for every system failed.

    Raised when two independently computed sides of an equivalence or an
    exact identity disagree. Seeing one means a bug, never bad input.
    """


class NotComplete(StardynError):
    """The system has no complete transfer operator.

    ``failed`` lists which of ``"unital kernel"`` / ``"hereditary range"``
    does not hold.
    """

    def __init__(self, failed):
        self.failed = tuple(failed)
        super().__init__("system is not complete: %s fails" % " and ".join(self.failed))
