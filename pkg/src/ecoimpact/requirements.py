"""Parsing of dependency requirement specifiers.

A specifier names a target package, optionally followed by an extras
list, version constraints, and a ``;``-separated environment marker,
e.g. ``NumPy (>=1.21) ; python_version >= '3.8'``. Only the pieces the
dependency model consumes are extracted: the target name, whether the
requirement is gated behind an extra, and whether any environment
marker is present. Version constraints are ignored; the model is
version-unaware.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import RequirementParseError
from .names import normalize_name

# PEP 508 name token: alphanumeric ends, separators allowed inside.
_NAME_TOKEN = re.compile(r"[A-Za-z0-9](?:[A-Za-z0-9._-]*[A-Za-z0-9])?")
_QUOTED = re.compile(r"\"[^\"]*\"|'[^']*'")
_EXTRA_VAR = re.compile(r"\bextra\b")


@dataclass(frozen=True)
class RequirementSpec:
    """One parsed dependency requirement."""

    target_name: str
    is_optional: bool
    has_environment_marker: bool
    raw: str


def split_marker(spec: str) -> tuple[str, str | None]:
    """Split a specifier into (body, marker) at the first unquoted ``;``."""
    quote: str | None = None
    for i, ch in enumerate(spec):
        if quote is not None:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == ";":
            return spec[:i], spec[i + 1 :]
    return spec, None


def parse_requirement(spec: str) -> RequirementSpec:
    """Parse one requirement-specifier string.

    The target name is normalized. ``is_optional`` is true when the
    environment marker references the ``extra`` variable (the
    requirement only applies when an extra is requested).

    Raises :class:`RequirementParseError`, carrying the offset of the
    failure, when no name token can be read at the start of the
    specifier.
    """
    body, marker = split_marker(spec)
    offset = len(body) - len(body.lstrip())
    match = _NAME_TOKEN.match(body, offset)
    if match is None:
        raise RequirementParseError("expected a package name", offset=offset, spec=spec)
    marker_text = marker.strip() if marker is not None else ""
    # Mask quoted literals so values like os_name == 'extra' do not count.
    marker_vars = _QUOTED.sub("", marker_text)
    return RequirementSpec(
        target_name=normalize_name(match.group()),
        is_optional=bool(_EXTRA_VAR.search(marker_vars)),
        has_environment_marker=bool(marker_text),
        raw=spec,
    )
