"""Tolerance spaces, adversarial Doppelgangers and perceptual audits."""

from ._tolspace import *  # noqa: F401,F403
from ._tolspace import Error, GuardExceeded, InvariantViolation, PreconditionError, ValidationError

__all__ = [name for name in dir() if not name.startswith("_")]
