"""Run configuration: flat ``key = value`` files with dotted scenario keys.

Example::

    scenario = burgers-mms
    variant = entropy_stable
    n = 64
    ns = 32, 64, 128, 256
    params.g = 9.81

Keys under ``params.`` are passed to the scenario builder. ``#`` and ``;``
start comments.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields
from pathlib import Path

from .model import VARIANTS
from .scenarios import SCENARIOS


class ConfigError(ValueError):
    """Invalid or unsupported configuration."""


_SECTION = "run"


@dataclass
class RunConfig:
    scenario: str
    variant: str = "entropy_stable"
    operator: str = "dp2"
    n: int | None = None
    cfl: float | None = None
    t_final: float | None = None
    stride: int = 1
    out: str = "out"
    seed: int = 0
    trials: int = 100
    ns: tuple[int, ...] = ()
    variants: tuple[str, ...] = ()
    operators: tuple[str, ...] = ()
    min_eoc: float | None = None
    snapshots: tuple[float, ...] | None = None
    params: dict[str, str] = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; "
                              f"known: {', '.join(sorted(SCENARIOS))}")
        for v in (self.variant, *self.variants):
            if v not in VARIANTS:
                raise ConfigError(f"unknown variant {v!r}; expected one of {VARIANTS}")
        for name in ("n", "cfl", "t_final"):
            val = getattr(self, name)
            if val is not None and not val > 0:
                raise ConfigError(f"{name} must be positive, got {val}")
        if self.stride < 1:
            raise ConfigError("stride must be >= 1")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if any(k <= 0 for k in self.ns):
            raise ConfigError("ns entries must be positive")
        if self.params.get("form") == "vecinv":
            bad = [v for v in (self.variant, *self.variants) if v != "entropy_conserving"]
            if bad:
                raise ConfigError("the vector-invariant form supports only "
                                  "entropy_conserving (no upwind splitting exists)")
        return self

    @property
    def scheme_list(self) -> tuple[str, ...]:
        return self.variants or (self.variant,)

    @property
    def operator_list(self) -> tuple[str, ...]:
        return self.operators or (self.operator,)


def _split(v: str) -> list[str]:
    return [t for t in (s.strip() for s in v.replace(";", ",").split(",")) if t]


def _convert(key: str, raw: str):
    try:
        if key in ("n", "stride", "seed", "trials"):
            return int(raw)
        if key in ("cfl", "t_final", "min_eoc"):
            return float(raw)
        if key == "ns":
            return tuple(int(x) for x in _split(raw))
        if key == "snapshots":
            return tuple(float(x) for x in _split(raw))
        if key in ("variants", "operators"):
            return tuple(_split(raw))
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from None
    return raw


def parse_config(text: str, overrides: list[str] | tuple[str, ...] = ()) -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",),
                                   comment_prefixes=("#", ";"), delimiters=("=",))
    cp.optionxform = str
    try:
        cp.read_string(f"[{_SECTION}]\n{text}")
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    items = dict(cp[_SECTION])
    for ov in overrides:
        if "=" not in ov:
            raise ConfigError(f"override must be key=value, got {ov!r}")
        k, v = ov.split("=", 1)
        items[k.strip()] = v.strip()
    known = {f.name for f in fields(RunConfig)} - {"params"}
    kw: dict = {"params": {}}
    for k, v in items.items():
        if k.startswith("params."):
            kw["params"][k[len("params."):]] = v
        elif k in known:
            kw[k] = _convert(k, v)
        else:
            raise ConfigError(f"unknown config key {k!r}")
    if "scenario" not in kw:
        raise ConfigError("config must set 'scenario'")
    return RunConfig(**kw).validate()


def load_config(path: str | Path, overrides=()) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, overrides)
