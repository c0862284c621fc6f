"""Frequency- and polarization-dependent power-law rain coefficients and
the specific-attenuation law gamma = kappa * R^alpha.

The regression constants from ITU-R P.838-3 ship as a documented
plain-text data file next to this module and can be overridden via a
path for auditability. A sampled-frequency validation table is packaged
alongside so tests can pin the regression outputs.
"""

from __future__ import annotations

import configparser
import csv
import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .constants import COEFF_FREQ_MAX_GHZ, COEFF_FREQ_MIN_GHZ
from .errors import DomainError, ParseError


class Polarization(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


@dataclass(frozen=True)
class RainCoefficients:
    """Power-law coefficients kappa and alpha at one frequency and
    polarization."""

    frequency_GHz: float
    polarization: Polarization
    kappa: float
    alpha: float


@dataclass(frozen=True)
class SpecificAttenuation:
    """Specific attenuation gamma in dB/km at one rain rate."""

    gamma_dB_per_km: float
    rain_rate_mm_per_hr: float


@dataclass(frozen=True)
class _Regression:
    """One coefficient's Gaussian-sum regression in log10(frequency)."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    c: tuple[float, ...]
    m: float
    offset: float
    log_scale: bool

    def evaluate(self, frequency_GHz: float) -> float:
        lf = math.log10(frequency_GHz)
        total = self.m * lf + self.offset
        for a_j, b_j, c_j in zip(self.a, self.b, self.c):
            total += a_j * math.exp(-(((lf - b_j) / c_j) ** 2))
        return 10.0 ** total if self.log_scale else total


@dataclass(frozen=True)
class CoefficientTable:
    """The four regressions (kappa/alpha x horizontal/vertical)."""

    kappa_h: _Regression
    kappa_v: _Regression
    alpha_h: _Regression
    alpha_v: _Regression


_SECTION_FIELDS = {
    "kappa_horizontal": "kappa_h",
    "kappa_vertical": "kappa_v",
    "alpha_horizontal": "alpha_h",
    "alpha_vertical": "alpha_v",
}


def parse_coefficient_table(text: str) -> CoefficientTable:
    """Parse the plain-text regression-constant format (INI sections with
    space-separated float lists)."""
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ParseError(f"bad coefficient file: {exc}") from exc
    regressions = {}
    for section, field in _SECTION_FIELDS.items():
        if not parser.has_section(section):
            raise ParseError(f"coefficient file missing section [{section}]")
        sec = parser[section]
        try:
            a = tuple(float(x) for x in sec["a"].split())
            b = tuple(float(x) for x in sec["b"].split())
            c = tuple(float(x) for x in sec["c"].split())
            m = float(sec["m"])
            offset = float(sec["offset"])
            scale = sec["scale"].strip()
        except (KeyError, ValueError) as exc:
            raise ParseError(f"section [{section}]: {exc}") from exc
        if not (len(a) == len(b) == len(c)) or not a:
            raise ParseError(f"section [{section}]: a/b/c lists must be non-empty and equal length")
        if scale not in ("log10", "linear"):
            raise ParseError(f"section [{section}]: scale must be log10 or linear")
        if any(x == 0.0 for x in c):
            raise ParseError(f"section [{section}]: c terms must be non-zero")
        regressions[field] = _Regression(a=a, b=b, c=c, m=m, offset=offset,
                                         log_scale=(scale == "log10"))
    return CoefficientTable(**regressions)


def load_coefficient_table(path: str | None = None) -> CoefficientTable:
    """Load the regression constants, from the packaged data file by
    default or from an override path."""
    if path is None:
        text = resources.files("rainlink.data").joinpath("p838_coefficients.txt").read_text(encoding="utf-8")
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_coefficient_table(text)


_DEFAULT_TABLE: CoefficientTable | None = None


def _default_table() -> CoefficientTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = load_coefficient_table()
    return _DEFAULT_TABLE


def regression_coefficients(frequency_GHz: float,
                            polarization: Polarization | str = Polarization.VERTICAL,
                            table: CoefficientTable | None = None) -> RainCoefficients:
    """Evaluate kappa and alpha at a frequency for one polarization.

    The regression is evaluated directly; no interpolation between
    sampled frequencies.
    """
    if not COEFF_FREQ_MIN_GHZ <= frequency_GHz <= COEFF_FREQ_MAX_GHZ:
        raise DomainError(
            f"frequency {frequency_GHz} GHz outside coefficient validity "
            f"[{COEFF_FREQ_MIN_GHZ:g}, {COEFF_FREQ_MAX_GHZ:g}]")
    pol = Polarization(polarization)
    tab = table if table is not None else _default_table()
    if pol is Polarization.HORIZONTAL:
        kappa = tab.kappa_h.evaluate(frequency_GHz)
        alpha = tab.alpha_h.evaluate(frequency_GHz)
    else:
        kappa = tab.kappa_v.evaluate(frequency_GHz)
        alpha = tab.alpha_v.evaluate(frequency_GHz)
    return RainCoefficients(frequency_GHz=frequency_GHz, polarization=pol,
                            kappa=kappa, alpha=alpha)


def specific_attenuation(rain_rate_mm_per_hr: float,
                         coefficients: RainCoefficients) -> SpecificAttenuation:
    """gamma = kappa * R^alpha in dB/km; zero exactly when R is zero."""
    if rain_rate_mm_per_hr < 0.0:
        raise DomainError(f"rain rate {rain_rate_mm_per_hr} mm/hr must be >= 0")
    if rain_rate_mm_per_hr == 0.0:
        gamma = 0.0
    else:
        gamma = coefficients.kappa * rain_rate_mm_per_hr ** coefficients.alpha
    return SpecificAttenuation(gamma_dB_per_km=gamma,
                               rain_rate_mm_per_hr=rain_rate_mm_per_hr)


def load_validation_table() -> list[tuple[float, float, float, float, float]]:
    """Packaged sampled-frequency validation rows as
    (frequency, kappa_h, alpha_h, kappa_v, alpha_v) tuples."""
    text = resources.files("rainlink.data").joinpath("p838_validation.csv").read_text(encoding="utf-8")
    reader = csv.DictReader(text.splitlines())
    rows = []
    for rec in reader:
        rows.append((float(rec["frequency_GHz"]), float(rec["kappa_h"]),
                     float(rec["alpha_h"]), float(rec["kappa_v"]),
                     float(rec["alpha_v"])))
    return rows
