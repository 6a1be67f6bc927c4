"""Resource caps for exhaustive enumeration."""

from __future__ import annotations

import os

CAP_ENV = "PARTIALGALOIS_CAP"
DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured resource cap."""


def enumeration_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{CAP_ENV} must be positive")
    return value


def require_within(count: int, cap: int | None, what: str) -> None:
    cap = enumeration_cap() if cap is None else cap
    if count > cap:
        raise CapExceeded(f"{what}: {count} exceeds cap {cap}")
