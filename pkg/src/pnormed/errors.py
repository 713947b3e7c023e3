"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PnormedError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(PnormedError):
    """Operands live in spaces of incompatible dimensions."""


class CertificationError(PnormedError):
    """A certificate that was supposed to hold failed its interval check.

    Carries the name of the violated identity or bound so callers (and the
    CLI) can report exactly what broke.
    """

    def __init__(self, identity: str, detail: str = ""):
        self.identity = identity
        self.detail = detail
        msg = identity if not detail else f"{identity}: {detail}"
        super().__init__(msg)


class ResourceSignal(PnormedError):
    """A computation is well-posed but exceeds the granted resources.

    Not a failure: carries what would be needed (steps, net size, precision)
    so the caller can retry with a bigger budget.
    """

    def __init__(self, message: str, required: object = None):
        self.required = required
        super().__init__(message)


class SchemaError(PnormedError):
    """Malformed serialized input; `pointer` locates the offending field."""

    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer
        super().__init__(f"{message} (at {pointer})" if pointer else message)
