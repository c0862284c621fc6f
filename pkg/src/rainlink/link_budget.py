"""Carrier-to-noise, link margin, closure verdicts, unavailability
durations, band re-parameterization, and scenario-file loading.

Two CNR modes exist. Physics mode evaluates the standard budget
EIRP - FSPL - A - other losses + G_r - 10 log10(kTB). Calibrated mode
evaluates K_clear - A against a supplied clear-sky constant, which is
how published result tables whose loss breakdown is undisclosed can be
reproduced; in that mode the attenuation is treated as an opaque anchor
and may be negative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from enum import Enum

from .constants import (BOLTZMANN_J_PER_K, COEFF_FREQ_MAX_GHZ,
                        COEFF_FREQ_MIN_GHZ, HOURS_PER_YEAR)
from .errors import ConfigError, DomainError
from .geometry import free_space_path_loss, slant_range


class CnrMode(str, Enum):
    PHYSICS = "physics"
    CALIBRATED = "calibrated"


@dataclass(frozen=True)
class TransmissionParams:
    """Uplink transmission parameters for one gateway-to-satellite beam."""

    frequency_GHz: float
    bandwidth_Hz: float
    eirp_dBW: float
    elevation_deg: float
    receiver_gain_dBi: float
    system_temperature_K: float
    required_margin_dB: float
    satellite_altitude_km: float
    other_losses_dB: float = 0.0
    antenna_diameter_m: float | None = None

    def __post_init__(self):
        for name in ("frequency_GHz", "bandwidth_Hz", "system_temperature_K",
                     "satellite_altitude_km"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be > 0")
        if self.required_margin_dB < 0.0:
            raise DomainError("required_margin_dB must be >= 0")
        if self.other_losses_dB < 0.0:
            raise DomainError("other_losses_dB must be >= 0")


@dataclass(frozen=True)
class LinkResult:
    """Outcome for one (station, source, p) triple."""

    station_ref: str
    source_label: str
    p_percent: float
    attenuation_dB: float
    cnr_dB: float
    required_margin_dB: float
    available_margin_dB: float
    closes: bool


def noise_power(system_temperature_K: float, bandwidth_Hz: float) -> float:
    """Thermal noise power 10 log10(kTB) in dBW."""
    if system_temperature_K <= 0.0:
        raise DomainError(f"temperature {system_temperature_K} K must be > 0")
    if bandwidth_Hz <= 0.0:
        raise DomainError(f"bandwidth {bandwidth_Hz} Hz must be > 0")
    return 10.0 * math.log10(BOLTZMANN_J_PER_K * system_temperature_K * bandwidth_Hz)


def carrier_to_noise(params: TransmissionParams, attenuation_dB: float,
                     mode: CnrMode | str = CnrMode.PHYSICS,
                     k_clear_dB: float | None = None) -> float:
    """C/N in dB under the given rain attenuation.

    Physics mode requires attenuation >= 0 (the prediction chain never
    emits negative attenuation); calibrated mode accepts any finite
    value so published anchors can be injected as-is.
    """
    mode = CnrMode(mode)
    if mode is CnrMode.CALIBRATED:
        if k_clear_dB is None:
            raise ConfigError("calibrated mode requires k_clear_dB")
        return k_clear_dB - attenuation_dB
    if attenuation_dB < 0.0:
        raise DomainError(f"attenuation {attenuation_dB} dB must be >= 0")
    d = slant_range(params.satellite_altitude_km, params.elevation_deg)
    fspl = free_space_path_loss(params.frequency_GHz, d)
    return (params.eirp_dBW - fspl - attenuation_dB - params.other_losses_dB
            + params.receiver_gain_dBi
            - noise_power(params.system_temperature_K, params.bandwidth_Hz))


def available_margin(cnr_dB: float, required_margin_dB: float) -> float:
    """CNR minus the required margin."""
    return cnr_dB - required_margin_dB


def link_closes(available_margin_dB: float) -> bool:
    """True when the available margin is non-negative (boundary counts
    as closed)."""
    return available_margin_dB >= 0.0


@dataclass(frozen=True)
class UnavailabilityDuration:
    """p percent of an average year, in convenient units."""

    p_percent: float
    hours: float

    @property
    def minutes(self) -> float:
        return self.hours * 60.0

    @property
    def days(self) -> float:
        return self.hours / 24.0


def unavailability_duration(p_percent: float) -> UnavailabilityDuration:
    """Convert an exceedance percentage to time per average year."""
    if not 0.0 < p_percent < 100.0:
        raise DomainError(f"percentage {p_percent} outside (0, 100)")
    return UnavailabilityDuration(p_percent=p_percent,
                                  hours=p_percent / 100.0 * HOURS_PER_YEAR)


def band_scenario(params: TransmissionParams,
                  new_frequency_GHz: float) -> TransmissionParams:
    """Copy of params at a different carrier frequency; every other field
    is preserved verbatim. Downstream FSPL and rain coefficients follow
    the new frequency automatically."""
    if not COEFF_FREQ_MIN_GHZ <= new_frequency_GHz <= COEFF_FREQ_MAX_GHZ:
        raise DomainError(
            f"frequency {new_frequency_GHz} GHz outside coefficient validity "
            f"[{COEFF_FREQ_MIN_GHZ:g}, {COEFF_FREQ_MAX_GHZ:g}]")
    return replace(params, frequency_GHz=new_frequency_GHz)


def evaluate_link(station_ref: str, source_label: str, p_percent: float,
                  attenuation_dB: float, params: TransmissionParams,
                  mode: CnrMode | str = CnrMode.PHYSICS,
                  k_clear_dB: float | None = None) -> LinkResult:
    """Assemble the LinkResult for one (station, source, p) triple."""
    cnr = carrier_to_noise(params, attenuation_dB, mode=mode, k_clear_dB=k_clear_dB)
    margin = available_margin(cnr, params.required_margin_dB)
    return LinkResult(station_ref=station_ref, source_label=source_label,
                      p_percent=p_percent, attenuation_dB=attenuation_dB,
                      cnr_dB=cnr, required_margin_dB=params.required_margin_dB,
                      available_margin_dB=margin, closes=link_closes(margin))


_PARAM_FIELDS = ("frequency_GHz", "bandwidth_Hz", "eirp_dBW", "elevation_deg",
                 "receiver_gain_dBi", "system_temperature_K",
                 "required_margin_dB", "satellite_altitude_km")
_OPTIONAL_PARAM_FIELDS = ("other_losses_dB", "antenna_diameter_m")


@dataclass(frozen=True)
class SourceDescriptor:
    """One rain source named in a scenario.

    kind selects what the descriptor carries: "r001" a direct rain rate,
    "series" a per-station mapping of series CSV paths plus a strategy,
    "attenuation" a per-station mapping of attenuation values in dB to
    inject verbatim (for replicating published tables whose attenuations
    are not reproducible from disclosed inputs).
    """

    label: str
    kind: str
    value: float | None = None
    values: dict[str, float] | None = None
    paths: dict[str, str] | None = None
    strategy: str = "chebil_annual"


@dataclass(frozen=True)
class Scenario:
    """A reproducible run configuration."""

    params: TransmissionParams
    mode: CnrMode
    k_clear_dB: float | None
    catalog_path: str | None
    sources: tuple[SourceDescriptor, ...]
    p_list: tuple[float, ...]
    polarization: str = "vertical"

    def source(self, label: str) -> SourceDescriptor:
        for s in self.sources:
            if s.label == label:
                return s
        known = ", ".join(s.label for s in self.sources) or "none"
        raise ConfigError(f"unknown source label {label!r} (known: {known})")


def parse_scenario(text: str) -> Scenario:
    """Parse a scenario JSON document (see README for the schema)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("scenario must be a JSON object")
    missing = [f for f in _PARAM_FIELDS if f not in doc]
    if missing:
        raise ConfigError(f"scenario missing fields: {', '.join(missing)}")
    kwargs = {}
    for name in _PARAM_FIELDS + _OPTIONAL_PARAM_FIELDS:
        if name in doc:
            try:
                kwargs[name] = float(doc[name])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"field {name}: {exc}") from exc
    try:
        params = TransmissionParams(**kwargs)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    mode_text = doc.get("mode", "physics")
    try:
        mode = CnrMode(mode_text)
    except ValueError as exc:
        raise ConfigError(f"field mode: must be physics or calibrated, "
                          f"got {mode_text!r}") from exc
    k_clear = doc.get("k_clear_dB")
    if k_clear is not None:
        k_clear = float(k_clear)
    if mode is CnrMode.CALIBRATED and k_clear is None:
        raise ConfigError("field k_clear_dB: required in calibrated mode")
    p_raw = doc.get("p_list", [0.01])
    if not isinstance(p_raw, list) or not p_raw:
        raise ConfigError("field p_list: must be a non-empty list")
    p_list = tuple(float(p) for p in p_raw)
    for p in p_list:
        if not 0.001 <= p <= 1.0:
            raise ConfigError(f"field p_list: {p} outside [0.001, 1]")
    sources = []
    for i, raw in enumerate(doc.get("sources", [])):
        if not isinstance(raw, dict):
            raise ConfigError(f"sources[{i}]: must be an object")
        label = raw.get("label")
        kind = raw.get("kind")
        if not label or not isinstance(label, str):
            raise ConfigError(f"sources[{i}]: field label required")
        if kind not in ("r001", "series", "attenuation"):
            raise ConfigError(f"sources[{i}] ({label}): field kind must be "
                              "r001, series, or attenuation")
        desc = SourceDescriptor(
            label=label, kind=kind,
            value=float(raw["value"]) if "value" in raw else None,
            values={str(k): float(v) for k, v in raw["values"].items()}
            if isinstance(raw.get("values"), dict) else None,
            paths={str(k): str(v) for k, v in raw["paths"].items()}
            if isinstance(raw.get("paths"), dict) else None,
            strategy=str(raw.get("strategy", "chebil_annual")))
        if kind == "r001" and desc.value is None and desc.values is None:
            raise ConfigError(f"sources[{i}] ({label}): r001 kind requires "
                              "value or values")
        if kind == "series" and desc.paths is None:
            raise ConfigError(f"sources[{i}] ({label}): series kind requires paths")
        if kind == "attenuation" and desc.values is None:
            raise ConfigError(f"sources[{i}] ({label}): attenuation kind "
                              "requires values")
        if kind == "series" and desc.strategy not in ("chebil_annual",
                                                      "empirical_exceedance"):
            raise ConfigError(f"sources[{i}] ({label}): strategy must be "
                              "chebil_annual or empirical_exceedance")
        sources.append(desc)
    labels = [s.label for s in sources]
    if len(set(labels)) != len(labels):
        raise ConfigError("source labels must be unique")
    polarization = doc.get("polarization", "vertical")
    if polarization not in ("horizontal", "vertical"):
        raise ConfigError(f"field polarization: must be horizontal or "
                          f"vertical, got {polarization!r}")
    return Scenario(params=params, mode=mode, k_clear_dB=k_clear,
                    catalog_path=doc.get("catalog"), sources=tuple(sources),
                    p_list=p_list, polarization=polarization)
