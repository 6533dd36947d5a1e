"""Exception hierarchy for revolving-fractals."""

from typing import Optional


class RevolvingError(Exception):
    """Base class for every error raised by this package."""


class InvalidAngleError(RevolvingError, ValueError):
    """Raised for a zero denominator or an angle outside a generator set."""


class InvalidGeneratorSetError(RevolvingError, ValueError):
    """Raised when a generator set breaks θ₀ = 0 or angle distinctness."""


class InvalidWordError(RevolvingError, ValueError):
    """Raised for malformed word text or entries outside their alphabet."""


class EnumerationCapExceeded(RevolvingError):
    """Raised instead of enumerating more objects than the configured cap."""

    def __init__(self, count: int, cap: int, what: str = "words"):
        self.count = count
        self.cap = cap
        self.what = what
        super().__init__(
            f"refusing to enumerate {count} {what}: enumeration cap is {cap}"
        )


class UnknownPresetError(RevolvingError, KeyError):
    """Raised when a preset name is not in the registry."""

    def __init__(self, name: str, known: Optional[list] = None):
        self.name = name
        self.known = known or []
        super().__init__(name)

    def __str__(self) -> str:
        listing = ", ".join(self.known)
        return f"unknown preset '{self.name}' (known: {listing})"


class RejectedPresetError(RevolvingError):
    """Raised when a registered preset falls outside the supported family."""


class ConfigError(RevolvingError, ValueError):
    """Raised for unreadable or malformed spec configuration files."""
