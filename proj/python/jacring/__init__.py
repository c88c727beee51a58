"""Exact Jacobian rings of open complete intersections."""

from ._core import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VIOLATION,
    InputError,
    Ring,
    canonical_spec,
    preset_spec,
    presets,
    run,
    spec_hash,
)

__all__ = [
    "EXIT_INPUT",
    "EXIT_OK",
    "EXIT_VIOLATION",
    "InputError",
    "Ring",
    "canonical_spec",
    "preset_spec",
    "presets",
    "run",
    "spec_hash",
]
