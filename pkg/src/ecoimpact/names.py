"""Registry package-name normalization."""

from __future__ import annotations

import re

from .errors import InvalidNameError

_SEPARATOR_RUN = re.compile(r"[-_.]+")


def normalize_name(raw: str) -> str:
    """Return the canonical form of a registry package name.

    Lowercases the name and collapses every run of ``.``, ``-`` and ``_``
    into a single ``-``. The result is idempotent: normalizing an already
    normalized name returns it unchanged.
    """
    cleaned = raw.strip()
    if not cleaned:
        raise InvalidNameError("package name is empty")
    return _SEPARATOR_RUN.sub("-", cleaned.lower())
