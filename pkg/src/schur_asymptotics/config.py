"""Campaign configuration: JSON schema with exact rationals as strings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .weights import WeightSpectrum


class ConfigError(ValueError):
    """Invalid or inconsistent campaign configuration."""


def _rational(value, where: str) -> Fraction:
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{where}: cannot parse rational {value!r}: {exc}") from exc
    if isinstance(value, int):
        return Fraction(value)
    raise ConfigError(f"{where}: rationals must be strings like '5/2', got {value!r}")


def _perturbation(value, where: str):
    """A perturbation is a rational string or a ['re', 'im'] string pair."""
    if isinstance(value, (str, int)):
        return _rational(value, where)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re = _rational(value[0], f"{where}[0]")
        im = _rational(value[1], f"{where}[1]")
        if im == 0:
            return re
        return complex(float(re), float(im))
    raise ConfigError(f"{where}: expected rational string or [re, im] pair, got {value!r}")


@dataclass(frozen=True)
class MomentParams:
    kappa: Fraction
    y_weights: dict[int, Fraction] = field(default_factory=dict)
    i2: tuple[int, ...] = ()
    p_max: int = 4


@dataclass(frozen=True)
class CampaignConfig:
    spectrum: WeightSpectrum | None = None
    m: int = 1
    alpha1: Fraction | None = None
    k: int = 0
    perturbations: tuple = ()
    N_list: tuple[int, ...] = ()
    moments: MomentParams | None = None
    seed: int = 0
    out: str | None = None
    format: str | None = None


def parse_config(data: dict) -> CampaignConfig:
    """Validate a JSON-decoded config dict and build the typed config."""
    if not isinstance(data, dict):
        raise ConfigError(f"config must be a JSON object, got {type(data).__name__}")
    known = {
        "spectrum", "m", "alpha1", "k", "perturbations", "N_list",
        "moments", "seed", "out", "format",
    }
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")

    spectrum = None
    if "spectrum" in data:
        spec = data["spectrum"]
        if not isinstance(spec, dict) or "values" not in spec or "densities" not in spec:
            raise ConfigError("spectrum must be an object with 'values' and 'densities'")
        values = tuple(_rational(v, f"spectrum.values[{i}]") for i, v in enumerate(spec["values"]))
        densities = tuple(
            _rational(d, f"spectrum.densities[{i}]") for i, d in enumerate(spec["densities"])
        )
        try:
            spectrum = WeightSpectrum(values=values, densities=densities)
        except ValueError as exc:
            raise ConfigError(f"spectrum: {exc}") from exc

    m = data.get("m", 1)
    if not isinstance(m, int) or m < 1:
        raise ConfigError(f"m must be a positive integer, got {m!r}")

    alpha1 = _rational(data["alpha1"], "alpha1") if "alpha1" in data else None
    if alpha1 is not None and alpha1 <= m - 1:
        raise ConfigError(f"alpha1={alpha1} must exceed m-1={m - 1}")

    perturbations = tuple(
        _perturbation(u, f"perturbations[{i}]") for i, u in enumerate(data.get("perturbations", []))
    )
    k = data.get("k", len(perturbations))
    if not isinstance(k, int) or k < 0:
        raise ConfigError(f"k must be a non-negative integer, got {k!r}")
    if k != len(perturbations):
        raise ConfigError(f"k={k} but {len(perturbations)} perturbations were given")

    N_list = tuple(data.get("N_list", ()))
    for N in N_list:
        if not isinstance(N, int) or N < 1:
            raise ConfigError(f"N_list entries must be positive integers, got {N!r}")
    if any(N_list[i] >= N_list[i + 1] for i in range(len(N_list) - 1)):
        raise ConfigError(f"N_list must be strictly increasing, got {list(N_list)}")
    if N_list and k > min(N_list):
        raise ConfigError(f"k={k} exceeds the smallest N={min(N_list)}")

    moments = None
    if "moments" in data and data["moments"] is not None:
        mom = data["moments"]
        if not isinstance(mom, dict):
            raise ConfigError("moments must be an object")
        if "kappa" not in mom:
            raise ConfigError("moments.kappa is required")
        kappa = _rational(mom["kappa"], "moments.kappa")
        if not 0 < kappa < 1:
            raise ConfigError(f"moments.kappa={kappa} outside (0,1)")
        y_weights = {}
        for key, val in mom.get("y_weights", {}).items():
            try:
                idx = int(key)
            except ValueError:
                raise ConfigError(f"moments.y_weights key {key!r} is not an integer") from None
            y = _rational(val, f"moments.y_weights[{key}]")
            if y <= 0:
                raise ConfigError(f"moments.y_weights[{key}]={y} must be positive")
            y_weights[idx] = y
        i2 = tuple(mom.get("I2", sorted(y_weights)))
        if any(not isinstance(i, int) for i in i2):
            raise ConfigError("moments.I2 must be a list of integers")
        p_max = mom.get("p_max", 4)
        if not isinstance(p_max, int) or p_max < 0:
            raise ConfigError(f"moments.p_max must be a non-negative integer, got {p_max!r}")
        if spectrum is not None:
            active = {i for i in i2 if 1 <= i <= spectrum.n}
            if active != set(y_weights):
                raise ConfigError(
                    f"moments.y_weights keys {sorted(y_weights)} must match "
                    f"I2 within 1..n, which is {sorted(active)}"
                )
        moments = MomentParams(kappa=kappa, y_weights=y_weights, i2=i2, p_max=p_max)

    seed = data.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError(f"seed must be an integer, got {seed!r}")

    fmt = data.get("format")
    if fmt is not None and fmt not in ("csv", "json"):
        raise ConfigError(f"format must be 'csv' or 'json', got {fmt!r}")

    return CampaignConfig(
        spectrum=spectrum,
        m=m,
        alpha1=alpha1,
        k=k,
        perturbations=perturbations,
        N_list=N_list,
        moments=moments,
        seed=seed,
        out=data.get("out"),
        format=fmt,
    )


def load_config(path: str | Path) -> CampaignConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(data)


def config_echo(config: CampaignConfig) -> dict:
    """Canonical JSON-able form of a config, echoed into every report."""
    echo: dict = {"m": config.m, "k": config.k, "seed": config.seed}
    if config.spectrum is not None:
        echo["spectrum"] = {
            "values": [str(v) for v in config.spectrum.values],
            "densities": [str(d) for d in config.spectrum.densities],
        }
    if config.alpha1 is not None:
        echo["alpha1"] = str(config.alpha1)
    echo["perturbations"] = [
        str(u) if isinstance(u, Fraction) else [repr(u.real), repr(u.imag)]
        for u in config.perturbations
    ]
    echo["N_list"] = list(config.N_list)
    if config.moments is not None:
        echo["moments"] = {
            "kappa": str(config.moments.kappa),
            "y_weights": {str(i): str(y) for i, y in sorted(config.moments.y_weights.items())},
            "I2": list(config.moments.i2),
            "p_max": config.moments.p_max,
        }
    return echo
