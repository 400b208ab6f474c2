"""Simulation backend selection.

The compiled extension `pursuitsim._fastloop` is preferred when it imported
cleanly; the pure-Python engine is the fallback. PURSUITSIM_BACKEND=python
or =compiled overrides the automatic choice for the whole process.
"""

from __future__ import annotations

import os

try:
    from . import _fastloop  # noqa: F401
    _HAVE_COMPILED = True
except ImportError:
    _HAVE_COMPILED = False


def available() -> tuple[str, ...]:
    return ("compiled", "python") if _HAVE_COMPILED else ("python",)


def active() -> str:
    """Backend used when none is requested explicitly."""
    forced = os.environ.get("PURSUITSIM_BACKEND")
    if forced:
        return resolve(forced)
    return "compiled" if _HAVE_COMPILED else "python"


def resolve(name: str | None) -> str:
    if name is None:
        return active()
    if name not in ("compiled", "python"):
        raise ValueError(f"unknown backend {name!r}; expected 'compiled' or 'python'")
    if name == "compiled" and not _HAVE_COMPILED:
        raise RuntimeError("compiled backend requested but pursuitsim._fastloop did not import")
    return name
