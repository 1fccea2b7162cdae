"""Run-time configuration.

A :class:`Config` bundles the numeric knobs used by the sampled backend,
the quadrature routines and the command line.  Config files use the same
line oriented ``key=value`` style as the reports.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path


@dataclass(frozen=True)
class Config:
    k_min: int = 2
    k_max: int = 48
    m_max: float = 25.0          # heuristic negligibility threshold
    M_max: float = 50.0          # heuristic moderateness threshold
    window: int = 16             # slope-fit window T
    quad_rtol: float = 1e-12
    m_mesh: int = 8
    n_max: int = 20

    def __post_init__(self):
        if self.k_min < 1:
            raise ValueError("k_min must be >= 1")
        if self.k_max - self.k_min < 8:
            raise ValueError("k_max - k_min must be >= 8")
        if self.window < 4 or self.window > self.k_max - self.k_min + 1:
            raise ValueError("window must be in [4, k_max - k_min + 1]")
        for name in ("m_max", "M_max", "quad_rtol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.m_mesh < 1 or self.n_max < 1:
            raise ValueError("m_mesh and n_max must be >= 1")

    def replace(self, **changes) -> "Config":
        return dataclasses.replace(self, **changes)


DEFAULT = Config()


def parse_config(text: str, base: Config = DEFAULT) -> Config:
    """Parse ``key=value`` lines (``#`` comments allowed) on top of *base*."""
    types = {f.name: f.type for f in fields(Config)}
    changes = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in types:
            raise ValueError(f"config line {lineno}: unknown entry {raw!r}")
        conv = int if types[key] in (int, "int") else float
        changes[key] = conv(value.strip())
    return dataclasses.replace(base, **changes)


def load_config(path: str | Path, base: Config = DEFAULT) -> Config:
    return parse_config(Path(path).read_text(encoding="utf-8"), base)
