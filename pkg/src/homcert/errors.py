"""Error types and resource-guard plumbing shared across the package."""

from __future__ import annotations

import os

GUARD_ENV_VAR = "HOMCERT_GUARD_LIMIT"


class HomcertError(Exception):
    """Base class for failures raised by this package."""


class ParseError(HomcertError):
    """Malformed input text; carries the offset of the first offending byte."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class FeasibilityError(HomcertError):
    """Input exceeds a hard size cap (n > 32, k > 16, state explosion)."""


class ResourceGuardError(HomcertError):
    """A computation would exceed its configured state or subset budget.

    Guards are hard errors on purpose: a certification run must never fall
    back to an approximation.
    """


def resolve_guard(explicit: int | None, default: int) -> int:
    """Pick a guard limit: explicit argument, then environment, then default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(GUARD_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise HomcertError(f"{GUARD_ENV_VAR} must be an integer, got {env!r}")
    return default
