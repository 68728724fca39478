"""Run configuration: enumeration budgets, precision, cache, output."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace


class BudgetExceeded(Exception):
    """An enumeration exceeded its configured cap; carries the cap name."""

    def __init__(self, cap: str, requested, limit):
        self.cap = cap
        self.requested = requested
        self.limit = limit
        super().__init__(f"budget '{cap}' exceeded: needs {requested}, cap {limit}")


@dataclass
class RunConfig:
    raw_budget: int = 40_000_000        # raw counting: candidate bound p^{2aml}
    dfs_budget: int = 8_000_000         # DFS lifting: max solutions retained per level
    mitm_budget: int = 20_000_000       # l=1 histogram route: modulus^2 work bound
    coset_budget: int = 400_000         # Hermite coset enumeration size
    class_m_max_unram: int = 3
    class_m_max_ram: int = 2
    max_valuation: int = 10             # det valuation cap for class enumeration
    precision_bits: int = 128
    pmax: int = 10_000
    cache_dir: str | None = None
    output: str = "json"                # json | csv | pretty
    jobs: int = 1
    use_cache: bool = True

    def check(self, cap: str, requested):
        limit = getattr(self, cap)
        if requested > limit:
            raise BudgetExceeded(cap, requested, limit)

    def with_overrides(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


_INT_KEYS = {
    "raw_budget",
    "dfs_budget",
    "mitm_budget",
    "coset_budget",
    "class_m_max_unram",
    "class_m_max_ram",
    "max_valuation",
    "precision_bits",
    "pmax",
    "jobs",
}


def load_config(path: str | None = None) -> RunConfig:
    """kml.toml-style key = value text; flags override file values."""
    cfg = RunConfig()
    if path is None and os.path.exists("kml.toml"):
        path = "kml.toml"
    if path and os.path.exists(path):
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line or "=" not in line:
                    continue
                key, val = (s.strip() for s in line.split("=", 1))
                val = val.strip("\"'")
                if key in _INT_KEYS:
                    setattr(cfg, key, int(val))
                elif key in ("cache_dir", "output"):
                    setattr(cfg, key, val)
                elif key == "use_cache":
                    setattr(cfg, key, val.lower() in ("1", "true", "yes"))
    env_cache = os.environ.get("KML_CACHE_DIR")
    if env_cache:
        cfg.cache_dir = env_cache
    return cfg


DEFAULT = RunConfig()
