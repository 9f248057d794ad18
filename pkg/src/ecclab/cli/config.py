"""Flat ``key = value`` experiment configuration.

Blank lines and lines starting with ``#`` are ignored.  Unknown keys are an
error.  :meth:`ExperimentConfig.to_text` writes every field, and parsing that
text gives back an equal config.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path


class ConfigError(ValueError):
    """Bad configuration (exit code 2)."""


FAMILIES = ("rs", "hadamard", "concat", "multilinear")
CHANNELS = ("none", "bsc", "adversarial")
FORMATS = ("csv", "json")
SCHEMES = ("hadamard", "hadamard-direct", "multilinear")
FUNCTIONS = ("sparse", "majority", "random")


@dataclass(frozen=True)
class ExperimentConfig:
    family: str = "rs"
    q: int = 16
    n: int = 15
    k: int = 5
    m: int = 2
    d: int = 2
    inner_k: int = 2
    channel: str = "none"
    p: float = 0.0
    errors: int = 0
    trials: int = 100
    seed: int = 0
    format: str = "csv"
    out: str = "-"
    t: int = 0
    eps: float = 0.15
    grid: tuple[float, ...] = ()
    runs: int = 100
    agreement: float = 0.65
    theta: float = 0.2
    tolerance: float = 0.0
    function: str = "sparse"
    coefficients: str = ""
    inputs: str = "0,1,2"
    scheme: str = "hadamard"
    unsafe: bool = False
    retrievals: int = 8

    def validate(self) -> "ExperimentConfig":
        checks = [
            (self.family in FAMILIES, f"family must be one of {FAMILIES}"),
            (self.channel in CHANNELS, f"channel must be one of {CHANNELS}"),
            (self.format in FORMATS, f"format must be one of {FORMATS}"),
            (self.scheme in SCHEMES, f"scheme must be one of {SCHEMES}"),
            (self.function in FUNCTIONS, f"function must be one of {FUNCTIONS}"),
            (0 <= self.p < 1, "p must be in [0, 1)"),
            (self.errors >= 0, "errors must be nonnegative"),
            (self.trials >= 0 and self.runs >= 0, "trials and runs must be nonnegative"),
            (0 <= self.seed < 2**64, "seed must be a u64"),
            (self.k >= 1 and self.n >= 1 and self.q >= 2, "need k >= 1, n >= 1, q >= 2"),
            (self.t >= 0, "t must be nonnegative"),
            (self.retrievals >= 0, "retrievals must be nonnegative"),
        ]
        for ok, msg in checks:
            if not ok:
                raise ConfigError(msg)
        return self

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes).validate()

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(repr(x) for x in v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            elif isinstance(v, float):
                v = repr(v)
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"


_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _convert(key: str, raw: str):
    kind = _TYPES[key]
    try:
        if kind == "int":
            return int(raw, 0)
        if kind == "float":
            return float(raw)
        if kind == "bool":
            low = raw.lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return low in ("true", "1", "yes")
        if kind.startswith("tuple"):
            return tuple(float(x) for x in raw.split(",") if x.strip())
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc


def parse_config(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in _TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _convert(key, raw)
    return dataclasses.replace(base or ExperimentConfig(), **values).validate()


def load_config(path: str | Path | None) -> ExperimentConfig:
    if path is None:
        return ExperimentConfig()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)
