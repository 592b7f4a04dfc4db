from __future__ import annotations

import enum
import os
from dataclasses import dataclass

from .errors import DomainError

DEFAULT_COST_CAP = 10**9
DEFAULT_SEGMENT = 1 << 26


class OutputMode(enum.Enum):
    HUMAN = "human"
    JSON = "json"


@dataclass(frozen=True)
class GlobalConfig:
    cost_cap: int = DEFAULT_COST_CAP
    sieve_segment_bits: int = DEFAULT_SEGMENT
    output_mode: OutputMode = OutputMode.HUMAN

    def __post_init__(self):
        if self.cost_cap < 10**4:
            raise DomainError(f"cost cap must be at least 10^4, got {self.cost_cap}")
        seg = self.sieve_segment_bits
        if seg < 1 or seg & (seg - 1):
            raise DomainError(f"sieve segment size must be a power of two, got {seg}")

    @classmethod
    def from_env(cls, **overrides) -> "GlobalConfig":
        """Defaults, with FRUIT_COST_CAP taken from the environment when set."""
        raw = os.environ.get("FRUIT_COST_CAP")
        if raw is not None and "cost_cap" not in overrides:
            try:
                overrides["cost_cap"] = int(raw)
            except ValueError:
                raise DomainError(f"FRUIT_COST_CAP must be an integer, got {raw!r}") from None
        return cls(**overrides)
