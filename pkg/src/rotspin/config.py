"""Run configuration for the command-line driver.

A configuration is a YAML or JSON mapping. Natural units (c = 1, hbar explicit)::

    units: natural            # or "si"
    params:
      m: 1.0                  # rest energy
      q: 1.0                  # charge
      hbar: 1.0
      mu: 1.5                 # chemical potential; or mu_over_m: 1.5
      tau: 1.0                # relaxation time
      T: 0.0                  # temperature (energy units)
      B: [0, 0, 0.5]          # magnetic field
      Omega: [0, 0, 0.01]     # angular velocity
      Efield: [0.1, 0, 0]     # electric field
      x: [0, 0, 0]            # position (3D quantities)
      R: 1.0                  # circle radius (planar quantities)
      branch: 1
    grad_mu: [0, 0, 0]        # chemical-potential gradient
    axis: [0, 0, 1]           # spin axis for 3D quantities (or 0, 1, 2)
    sweep: {parameter: mu_over_m, min: 1.01, max: 1000, steps: 20, scale: log}
    outputs: [sigma_sh, sigma_sh1]   # optional column subset
    output_format: csv        # or json
    output_path: out.csv      # optional, stdout otherwise

With ``units: si`` the ``params`` keys are those of ``rotspin.units.si_params``:
``mass_kg``, ``charge_C``, one of ``kF_per_m`` / ``mu_over_m`` / ``mu_J``,
``tau_s``, ``T_K``, ``B_T``, ``Omega_rad_s``, ``E_V_per_m``, ``x_m``, ``R_m``,
``branch``. ``grad_mu`` is then in J/m.

Sweeps act on the raw ``params`` entry of the same name, so they use the
units of the configuration file. In natural units the sweepable names are
the scalar ParamSet fields plus ``mu_over_m``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .model import SCALAR_FIELDS, ParamSet
from .units import si_params

__all__ = [
    "ConfigError",
    "SweepSpec",
    "RunConfig",
    "NATURAL_KEYS",
    "SI_KEYS",
    "SI_SCALAR_KEYS",
    "load_config",
    "config_from_dict",
]

NATURAL_KEYS = SCALAR_FIELDS + ("B", "Omega", "Efield", "x", "branch", "mu_over_m")
SI_SCALAR_KEYS = ("mass_kg", "charge_C", "kF_per_m", "mu_over_m", "mu_J", "tau_s", "T_K", "R_m")
SI_KEYS = SI_SCALAR_KEYS + ("B_T", "Omega_rad_s", "E_V_per_m", "x_m", "branch")


class ConfigError(ValueError):
    """Malformed configuration; the CLI maps it to a usage error."""


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    min: float
    max: float
    steps: int
    scale: str = "linear"

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.steps)
        return np.linspace(self.min, self.max, self.steps)


@dataclass(frozen=True)
class RunConfig:
    raw_params: dict
    units: str = "natural"
    grad_mu: tuple = (0.0, 0.0, 0.0)
    axis: tuple = (0.0, 0.0, 1.0)
    sweep: SweepSpec | None = None
    outputs: tuple = ()
    output_format: str = "csv"
    output_path: str | None = None
    kind: str | None = None
    extra: dict = field(default_factory=dict)

    def build(self, raw: dict | None = None) -> ParamSet:
        raw = dict(self.raw_params if raw is None else raw)
        if self.units == "si":
            return si_params(**raw)
        mu_over_m = raw.pop("mu_over_m", None)
        if mu_over_m is not None:
            raw["mu"] = mu_over_m * raw.get("m", 1.0)
        return ParamSet(**raw)

    def points(self) -> list[ParamSet]:
        """One ParamSet per sweep point, in sweep order."""
        if self.sweep is None:
            return [self.build()]
        out = []
        for v in self.sweep.values():
            raw = dict(self.raw_params)
            if self.sweep.parameter == "mu" and "mu_over_m" in raw:
                raw.pop("mu_over_m")
            if self.sweep.parameter == "mu_over_m":
                raw.pop("mu", None)
            raw[self.sweep.parameter] = float(v)
            out.append(self.build(raw))
        return out


def _vector(v, name):
    if isinstance(v, (int, float)):
        # an integer axis index
        a = np.zeros(3)
        a[int(v)] = 1.0
        return tuple(a)
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ConfigError(f"{name} must be a 3-vector, got {v!r}")
    return tuple(arr.tolist())


def config_from_dict(d: dict, *, si_units: bool | None = None) -> RunConfig:
    if not isinstance(d, dict):
        raise ConfigError("configuration must be a mapping")
    known = {"units", "params", "grad_mu", "axis", "sweep", "outputs", "output_format",
             "output_path", "kind"}
    unknown = set(d) - known
    if unknown:
        raise ConfigError(f"unknown configuration keys {sorted(unknown)}; allowed {sorted(known)}")
    units = d.get("units", "natural")
    if si_units:
        units = "si"
    if units not in ("natural", "si"):
        raise ConfigError(f"units must be 'natural' or 'si', got {units!r}")
    params = dict(d.get("params") or {})
    allowed = SI_KEYS if units == "si" else NATURAL_KEYS
    bad = set(params) - set(allowed)
    if bad:
        raise ConfigError(f"unknown params {sorted(bad)} for {units} units; allowed {list(allowed)}")
    if units == "si" and not any(k in params for k in ("kF_per_m", "mu_over_m", "mu_J")):
        raise ConfigError("SI params need one of kF_per_m, mu_over_m, mu_J")

    sweep = None
    if d.get("sweep") is not None:
        s = d["sweep"]
        sweepable = SI_SCALAR_KEYS if units == "si" else SCALAR_FIELDS + ("mu_over_m",)
        name = s.get("parameter")
        if name not in sweepable:
            raise ConfigError(f"sweep parameter {name!r} is not a scalar field; choose from {list(sweepable)}")
        try:
            steps = int(s["steps"])
            lo, hi = float(s["min"]), float(s["max"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"sweep needs numeric min, max, steps: {exc}") from None
        if steps < 1:
            raise ConfigError("sweep steps must be at least 1")
        scale = s.get("scale", "linear")
        if scale not in ("linear", "log"):
            raise ConfigError("sweep scale must be 'linear' or 'log'")
        if scale == "log" and (lo <= 0 or hi <= 0):
            raise ConfigError("a log sweep needs positive bounds")
        sweep = SweepSpec(name, lo, hi, steps, scale)

    fmt = d.get("output_format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("output_format must be 'csv' or 'json'")
    kind = d.get("kind")
    if kind not in (None, "conductivity2d", "densities3d"):
        raise ConfigError("kind must be 'conductivity2d' or 'densities3d'")
    cfg = RunConfig(
        raw_params=params,
        units=units,
        grad_mu=_vector(d.get("grad_mu", (0, 0, 0)), "grad_mu"),
        axis=_vector(d.get("axis", (0, 0, 1)), "axis"),
        sweep=sweep,
        outputs=tuple(d.get("outputs") or ()),
        output_format=fmt,
        output_path=d.get("output_path"),
        kind=kind,
    )
    try:
        cfg.build()
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid params: {exc}") from None
    return cfg


def load_config(path: str | Path | None, *, si_units: bool | None = None) -> RunConfig:
    """Read a YAML or JSON configuration; ``None`` gives the defaults."""
    if path is None:
        return config_from_dict({}, si_units=si_units) if not si_units else config_from_dict(
            {"params": {"mu_over_m": 1.0718}}, si_units=True)
    text = Path(path).read_text()
    try:
        data = json.loads(text) if str(path).endswith(".json") else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    return config_from_dict(data or {}, si_units=si_units)
