"""Two-depot heterogeneous TSP solver with per-run dual certificates."""

import json

from . import _core
from ._core import (
    ORACLE_MAX_TARGETS,
    Instance,
    InvariantViolation,
    ParseError,
    SizeGuardError,
    StructureError,
    ValidationReport,
    Violation,
    generate,
    validate,
)

__all__ = [
    "ORACLE_MAX_TARGETS",
    "Instance",
    "InvariantViolation",
    "ParseError",
    "SizeGuardError",
    "StructureError",
    "ValidationReport",
    "Violation",
    "generate",
    "solve",
    "solve_exact",
    "validate",
]


def solve(instance, *, exact=False, certificate=True, check_invariants=False, full_scan=False, trace=False):
    """Run growth, pruning and tour construction; returns the result dict.

    With ``trace=True`` the per-iteration events are added under ``"trace"``.
    The instance is not validated here; call :func:`validate` first.
    """
    doc, events = _core._solve(instance, exact, certificate, check_invariants, full_scan)
    result = json.loads(doc)
    if trace:
        result["trace"] = [json.loads(line) for line in events]
    return result


def solve_exact(instance, *, exact=False):
    """Exact optimum by enumeration, at most ORACLE_MAX_TARGETS targets."""
    return json.loads(_core._solve_exact(instance, exact))

