"""Run configuration shared by the sweep, verify and report stages."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .counting import DEFAULT_BUDGET

WORKERS_ENV = "GOLOMBCOUNT_WORKERS"


def _env_workers() -> int | None:
    raw = os.environ.get(WORKERS_ENV)
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Config:
    seed: int = 0
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    decomposition_method: str = "grouped"
    # exponent slack in the normalised error |N - main| / p**(1/2 + epsilon)
    epsilon: float = 0.1
    max_prime: int = 10**7
    # Weil configurations per (prime, number of factors)
    weil_samples: int = 100
    # verify --kind decomposition: largest r and random tuples per (prime, r)
    verify_max_r: int = 2
    verify_random_tuples: int = 5
    # bit-reproducible output: fixed reduction order, no timestamps in metadata
    reproducible: bool = True

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path: str | Path | None = None, **overrides) -> Config:
    """Defaults, then a JSON file, then the worker-count env var, then explicit overrides.

    Overrides whose value is None are ignored so argparse defaults can pass through.
    """
    cfg = Config()
    if path is not None:
        data = json.loads(Path(path).read_text())
        known = {f.name for f in fields(Config)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys in {path}: {sorted(unknown)}")
        cfg = replace(cfg, **data)
    env = _env_workers()
    if env is not None:
        cfg = replace(cfg, workers=env)
    cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    if cfg.workers < 1:
        raise ValueError("workers must be >= 1")
    return cfg
