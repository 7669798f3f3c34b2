"""Allocation caps shared by every module that builds large tables."""

import os

#: Default cap on a single table/series allocation, in bytes (2 GiB).
DEFAULT_MAX_BYTES = 2 << 30

ENV_VAR = "ZAREMBA_MAX_MEM"

_SUFFIXES = {"k": 1 << 10, "m": 1 << 20, "g": 1 << 30, "t": 1 << 40}


class ResourceLimitError(MemoryError):
    """Raised instead of attempting an allocation above the configured cap."""


def max_bytes() -> int:
    raw = os.environ.get(ENV_VAR, "").strip().lower()
    if not raw:
        return DEFAULT_MAX_BYTES
    mult = 1
    if raw[-1] in _SUFFIXES:
        mult = _SUFFIXES[raw[-1]]
        raw = raw[:-1]
    try:
        return int(float(raw) * mult)
    except ValueError:
        raise ValueError(f"{ENV_VAR}={os.environ[ENV_VAR]!r} is not a size") from None


def check_alloc(count: int, itemsize: int, what: str) -> None:
    need = count * itemsize
    cap = max_bytes()
    if need > cap:
        raise ResourceLimitError(
            f"{what}: {count} entries need ~{need} bytes, above the cap of {cap} "
            f"(set {ENV_VAR} to raise it)"
        )
