"""Middleware module for gammalab commands."""

from gammalab.middleware.error_handler import (
    EXIT_INVALID,
    EXIT_OK,
    EXIT_USAGE,
    InvalidStructure,
    translate_errors,
)

__all__ = [
    "EXIT_INVALID",
    "EXIT_OK",
    "EXIT_USAGE",
    "InvalidStructure",
    "translate_errors"
]
