from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from cesaro_ca.errors import CapExceededError

ENV_VAR = "CESARO_CA_CAPS"


@dataclass(frozen=True)
class Caps:
    """Resource caps. Exceeding one is an error, never an approximation."""

    table_entries: int = 10_000_000
    strip_width: int = 12
    falsify_exhaustive: int = 1_000_000
    falsify_samples: int = 2048
    automaton_width: int = 200_000
    rkm_length: int = 13
    subset_states: int = 200_000
    orbit_steps: int = 100_000

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or value <= 0:
                raise ValueError(f"cap '{f.name}' must be a positive integer, got {value!r}")

    def check(self, cap: str, requested: int) -> None:
        limit = getattr(self, cap)
        if requested > limit:
            raise CapExceededError(cap, requested, limit)

    @classmethod
    def parse(cls, text: str) -> Caps:
        """Parse `name=value,name=value` overrides on top of the defaults."""
        known = {f.name for f in fields(cls)}
        overrides: dict[str, int] = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            name, sep, raw = item.partition("=")
            name = name.strip()
            if not sep or name not in known:
                raise ValueError(f"unknown cap setting '{item}' in {ENV_VAR}")
            try:
                overrides[name] = int(raw)
            except ValueError:
                raise ValueError(f"cap '{name}' must be an integer, got '{raw.strip()}'") from None
        return replace(cls(), **overrides)

    @classmethod
    def from_env(cls) -> Caps:
        return cls.parse(os.environ.get(ENV_VAR, ""))

    def to_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_CAPS = Caps()
