"""Exception types shared across the package."""

from __future__ import annotations


class EcoImpactError(Exception):
    """Base class for all errors raised by this package."""


class InvalidNameError(EcoImpactError, ValueError):
    """A package name is empty or cannot be normalized."""


class RequirementParseError(EcoImpactError, ValueError):
    """A requirement specifier has no parseable name token.

    ``offset`` is the character offset into the original specifier at
    which a name token was expected.
    """

    def __init__(self, message: str, *, offset: int, spec: str) -> None:
        super().__init__(f"{message} at offset {offset}: {spec!r}")
        self.offset = offset
        self.spec = spec


class AmbiguousNameError(EcoImpactError, ValueError):
    """Two or more raw package names normalize to the same name."""

    def __init__(self, collisions: dict[str, list[str]]) -> None:
        detail = "; ".join(
            f"{norm!r} <- {sorted(raws)}" for norm, raws in sorted(collisions.items())
        )
        super().__init__(f"package names collide after normalization: {detail}")
        self.collisions = collisions


class UnknownPackageError(EcoImpactError, LookupError):
    """An operation referenced a package that is not in the snapshot."""


class DomainError(EcoImpactError, ValueError):
    """A numeric argument lies outside its documented domain."""


class DegenerateScenarioError(EcoImpactError, ValueError):
    """A scenario induced zero total impact; shares are undefined."""


class UndefinedCorrelationError(EcoImpactError, ValueError):
    """A correlation is undefined because one input has zero variance."""


class SnapshotFormatError(EcoImpactError, ValueError):
    """A record or snapshot file violates the expected schema."""
