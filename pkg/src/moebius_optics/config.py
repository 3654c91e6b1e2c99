"""Run configuration: defaults, JSON config files and command-line overrides."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Mapping

from .errors import DomainError
from .response import ResponseParams
from .ring_model import MoebiusRing


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    # ring
    n: int = 12
    w_nm: float = 0.077
    v_ev: float = 3.6
    xi_ev: float = 3.6
    r_nm: float | None = None
    # response
    lifetime_ns: float | None = 4.0
    gamma_ev: float | None = None
    v0_nm3: float | None = None
    local_field: bool = False
    approx: str = "full"
    # scan; None picks a per-command default range
    omega_min_ev: float | None = None
    omega_max_ev: float | None = None
    steps: int = 401
    omega_ev: float | None = None
    theta_deg: float = 30.0
    theta_min_deg: float = 0.0
    theta_max_deg: float = 20.0
    theta_steps: int = 21
    pol: str = "H"
    compare: bool = False
    # output
    format: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if self.approx not in ("full", "two_term"):
            raise ConfigError(f"approx must be 'full' or 'two-term', got {self.approx!r}")
        if self.pol not in ("H", "E"):
            raise ConfigError(f"pol must be H or E, got {self.pol!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.steps < 2 or self.theta_steps < 2:
            raise ConfigError("steps and theta_steps must be >= 2")
        if (
            self.omega_min_ev is not None
            and self.omega_max_ev is not None
            and not self.omega_min_ev < self.omega_max_ev
        ):
            raise ConfigError("omega_min_ev must be below omega_max_ev")
        if not 0.0 <= self.theta_deg < 90.0:
            raise ConfigError("theta_deg must lie in [0, 90)")
        if not 0.0 <= self.theta_min_deg < self.theta_max_deg < 90.0:
            raise ConfigError("need 0 <= theta_min_deg < theta_max_deg < 90")

    @classmethod
    def field_names(cls) -> set[str]:
        return {f.name for f in fields(cls)}

    def ring(self) -> MoebiusRing:
        try:
            return MoebiusRing(self.n, self.w_nm, self.v_ev, self.xi_ev, self.r_nm)
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    def params(self) -> ResponseParams:
        try:
            return ResponseParams(
                ring=self.ring(),
                lifetime_ns=self.lifetime_ns,
                gamma=self.gamma_ev,
                v0=self.v0_nm3,
                local_field=self.local_field,
                approximation=self.approx,
            )
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _normalize(values: Mapping[str, Any]) -> dict[str, Any]:
    out = dict(values)
    if "approx" in out and isinstance(out["approx"], str):
        out["approx"] = out["approx"].replace("-", "_")
    return out


def load_config(path: str | Path | None = None, overrides: Mapping[str, Any] | None = None) -> RunConfig:
    """Defaults, then the JSON file at ``path``, then non-None ``overrides``."""
    values: dict[str, Any] = {}
    if path is not None:
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        unknown = set(doc) - RunConfig.field_names()
        if unknown:
            raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
        values.update(doc)
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**_normalize(values))
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
