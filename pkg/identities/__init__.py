"""Coefficient-exact checks of the recursions and identities between families."""
from __future__ import annotations

from .base import Failure, Identity, VerificationReport
from .registry import (
    DEFAULT_BIVARIATE_LIMIT,
    DEFAULT_BIVARIATE_ORDER,
    DEFAULT_LIMIT,
    DEFAULT_ORDER,
    discover_builtin_identities,
    identity_registry,
    register_identity,
    verify,
    verify_all,
)

# Automatically load bundled identities when the package is imported.
discover_builtin_identities()

__all__ = [
    "DEFAULT_BIVARIATE_LIMIT",
    "DEFAULT_BIVARIATE_ORDER",
    "DEFAULT_LIMIT",
    "DEFAULT_ORDER",
    "Failure",
    "Identity",
    "VerificationReport",
    "identity_registry",
    "register_identity",
    "verify",
    "verify_all",
]
