"""Run configuration: defaults, JSON config file, environment override."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

CONFIG_ENV = "THUEMORSE_CONFIG"


@dataclass
class Config:
    precision_bits: int = 16384
    t_max: int = 64
    n_max: int = 8
    size_limit_bits: int = 10**7
    format: str = "json"

    def __post_init__(self):
        for name in ("precision_bits", "t_max", "n_max", "size_limit_bits"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.format not in ("json", "text"):
            raise ValueError("format must be 'json' or 'text'")


def load_config(path: str | None = None, **overrides) -> Config:
    """Defaults, then the JSON file at ``path`` (or $THUEMORSE_CONFIG), then overrides."""
    values: dict = {}
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        with open(path) as fh:
            values.update(json.load(fh))
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Config(**values)
