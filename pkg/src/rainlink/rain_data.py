"""Ingestion of station catalogs and precipitation time series, plus the
conversions that turn rain observations into the R001 rain rate the
attenuation chain needs.

CSV schemas (stable interfaces):
  station catalog: header name,latitude_deg,longitude_deg,altitude_m
  rain series:     header timestamp,rate_mm_per_hr (ISO-8601 UTC)
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum

from .constants import HOURS_PER_YEAR, MEAN_EARTH_RADIUS_KM, MIN_SEPARATION_KM
from .errors import (CadenceWarning, ConfigError, DomainError, ParseError,
                     SeparationWarning, ValidationError)
from .geometry import GroundStation

CATALOG_HEADER = ["name", "latitude_deg", "longitude_deg", "altitude_m"]
SERIES_HEADER = ["timestamp", "rate_mm_per_hr"]

# cadences at or above this mean sample spacing are too coarse for the
# empirical exceedance strategy to say anything about 0.01% of a year
_COARSE_CADENCE_HOURS = 24.0 * 28.0


class Strategy(str, Enum):
    DIRECT = "direct"
    CHEBIL_ANNUAL = "chebil_annual"
    EMPIRICAL_EXCEEDANCE = "empirical_exceedance"


class SourceKind(str, Enum):
    DIRECT_R001 = "direct_r001"
    SERIES = "series"


@dataclass(frozen=True)
class RainSeries:
    """An ordered precipitation series for one station.

    cadence is a human-readable label ("monthly", "30-minute"); when not
    declared it is inferred from the mean sample spacing.
    """

    station_ref: str
    samples: tuple[tuple[datetime, float], ...]
    cadence: str = ""

    def mean_spacing_hours(self) -> float:
        if len(self.samples) < 2:
            return 0.0
        first = self.samples[0][0]
        last = self.samples[-1][0]
        return (last - first).total_seconds() / 3600.0 / (len(self.samples) - 1)


@dataclass(frozen=True)
class RainSource:
    """Either a direct R001 value or a series plus a conversion strategy."""

    label: str
    kind: SourceKind
    strategy: Strategy
    r001_mm_per_hr: float | None = None
    series: RainSeries | None = None

    def __post_init__(self):
        if self.kind is SourceKind.DIRECT_R001:
            if self.r001_mm_per_hr is None or self.series is not None:
                raise ConfigError(f"source {self.label!r}: direct_r001 requires "
                                  "r001_mm_per_hr and no series")
            if self.strategy is not Strategy.DIRECT:
                raise ConfigError(f"source {self.label!r}: direct_r001 requires "
                                  "the direct strategy")
        else:
            if self.series is None or self.r001_mm_per_hr is not None:
                raise ConfigError(f"source {self.label!r}: series kind requires "
                                  "a series and no r001 value")
            if self.strategy is Strategy.DIRECT:
                raise ConfigError(f"source {self.label!r}: the direct strategy "
                                  "requires kind direct_r001")


@dataclass(frozen=True)
class StationCatalog:
    """Unique-named stations plus the close-pair report computed at parse
    time (pairs under the recommended minimum separation)."""

    stations: tuple[GroundStation, ...]
    close_pairs: tuple[tuple[str, str, float], ...] = field(default=())

    def __post_init__(self):
        names = [s.name for s in self.stations]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValidationError(f"duplicate station names: {', '.join(dupes)}")

    def station(self, name: str) -> GroundStation:
        for s in self.stations:
            if s.name == name:
                return s
        raise ValidationError(f"unknown station {name!r}")


def great_circle_km(lat1_deg: float, lon1_deg: float,
                    lat2_deg: float, lon2_deg: float) -> float:
    """Haversine great-circle distance in km on a mean-radius sphere."""
    lat1, lon1, lat2, lon2 = map(math.radians, (lat1_deg, lon1_deg, lat2_deg, lon2_deg))
    s = math.sin((lat2 - lat1) / 2.0) ** 2 \
        + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2.0) ** 2
    return 2.0 * MEAN_EARTH_RADIUS_KM * math.asin(math.sqrt(s))


def parse_station_catalog(text: str) -> StationCatalog:
    """Parse a station catalog CSV; altitude_m converts to km internally.

    Emits a SeparationWarning for every pair closer than the recommended
    minimum; the pairs are also recorded on the catalog.
    """
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise ValidationError("empty catalog")
    if rows[0] != CATALOG_HEADER:
        raise ParseError(f"expected header {','.join(CATALOG_HEADER)}, "
                         f"got {','.join(rows[0])}", line=1)
    stations = []
    for idx, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 4:
            raise ParseError(f"expected 4 fields, got {len(row)}", line=idx)
        name = row[0].strip()
        try:
            lat = float(row[1])
            lon = float(row[2])
            alt_m = float(row[3])
        except ValueError as exc:
            raise ParseError(str(exc), line=idx) from exc
        try:
            stations.append(GroundStation(name=name, latitude_deg=lat,
                                          longitude_deg=lon,
                                          altitude_km=alt_m / 1000.0))
        except DomainError as exc:
            raise ParseError(str(exc), line=idx) from exc
    if not stations:
        raise ValidationError("catalog has no station rows")
    close = []
    for i, a in enumerate(stations):
        for b in stations[i + 1:]:
            d = great_circle_km(a.latitude_deg, a.longitude_deg,
                                b.latitude_deg, b.longitude_deg)
            if d < MIN_SEPARATION_KM:
                close.append((a.name, b.name, d))
                warnings.warn(
                    f"stations {a.name} and {b.name} are {d:.0f} km apart, "
                    f"under the {MIN_SEPARATION_KM:.0f} km minimum separation",
                    SeparationWarning, stacklevel=2)
    return StationCatalog(stations=tuple(stations), close_pairs=tuple(close))


def catalog_to_csv(catalog: StationCatalog) -> str:
    """Serialize a catalog back to its CSV schema, losslessly."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CATALOG_HEADER)
    for s in catalog.stations:
        writer.writerow([s.name, repr(s.latitude_deg), repr(s.longitude_deg),
                         repr(s.altitude_km * 1000.0)])
    return out.getvalue()


def _parse_timestamp(text: str, line: int) -> datetime:
    # 3.10's fromisoformat rejects a trailing Z; normalize to an offset
    normalized = text.strip()
    if normalized.endswith("Z") or normalized.endswith("z"):
        normalized = normalized[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(normalized)
    except ValueError as exc:
        raise ParseError(f"bad timestamp {text!r}", line=line) from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def parse_rain_series(text: str, station_ref: str = "", cadence: str = "") -> RainSeries:
    """Parse a rain series CSV: strictly increasing UTC timestamps,
    non-negative rates, at least one sample."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise ValidationError("empty series")
    if rows[0] != SERIES_HEADER:
        raise ParseError(f"expected header {','.join(SERIES_HEADER)}, "
                         f"got {','.join(rows[0])}", line=1)
    samples = []
    for idx, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line=idx)
        ts = _parse_timestamp(row[0], idx)
        try:
            rate = float(row[1])
        except ValueError as exc:
            raise ParseError(str(exc), line=idx) from exc
        if rate < 0.0:
            raise ParseError(f"negative rate {rate}", line=idx)
        if samples and ts <= samples[-1][0]:
            raise ParseError(f"timestamp {row[0].strip()} not after the previous row", line=idx)
        samples.append((ts, rate))
    if not samples:
        raise ValidationError("series has no sample rows")
    return RainSeries(station_ref=station_ref, samples=tuple(samples), cadence=cadence)


def series_to_csv(series: RainSeries) -> str:
    """Serialize a series back to its CSV schema, losslessly."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SERIES_HEADER)
    for ts, rate in series.samples:
        writer.writerow([ts.isoformat().replace("+00:00", "Z"), repr(rate)])
    return out.getvalue()


def mean_rain_rate(series: RainSeries) -> float:
    """Arithmetic mean of the sample rates, mm/hr."""
    if not series.samples:
        raise DomainError("series is empty")
    return math.fsum(rate for _, rate in series.samples) / len(series.samples)


def annual_accumulation(mean_rate_mm_per_hr: float) -> float:
    """Annual accumulation M in mm from a mean rate, over an average
    Julian year."""
    if mean_rate_mm_per_hr < 0.0:
        raise DomainError(f"mean rate {mean_rate_mm_per_hr} must be >= 0")
    return mean_rate_mm_per_hr * HOURS_PER_YEAR


def chebil_r001(annual_accumulation_mm: float) -> float:
    """Chebil conversion from annual accumulation M (mm) to the rain rate
    exceeded 0.01% of the year: R001 = 12.2903 M^0.2973."""
    if annual_accumulation_mm < 0.0:
        raise DomainError(f"accumulation {annual_accumulation_mm} must be >= 0")
    if annual_accumulation_mm == 0.0:
        return 0.0
    return 12.2903 * annual_accumulation_mm ** 0.2973


def empirical_exceedance_rate(series: RainSeries, p_percent: float) -> float:
    """The rate exceeded during p percent of samples: sort descending and
    take the value at rank ceil(p/100 * N), clamped to a valid index."""
    if not series.samples:
        raise DomainError("series is empty")
    if not 0.0 < p_percent < 100.0:
        raise DomainError(f"percentage {p_percent} outside (0, 100)")
    rates = sorted((rate for _, rate in series.samples), reverse=True)
    rank = math.ceil(p_percent / 100.0 * len(rates))
    rank = min(max(rank, 1), len(rates))
    return rates[rank - 1]


def resolve_r001(source: RainSource) -> float:
    """Reduce a rain source to the R001 rain rate per its strategy.

    direct: the stored value. chebil_annual: Chebil conversion of the
    annual accumulation implied by the series mean. empirical_exceedance:
    the rate exceeded in 0.01% of samples (warns on coarse cadences,
    where that statistic is weak).
    """
    if source.strategy is Strategy.DIRECT:
        return float(source.r001_mm_per_hr)
    series = source.series
    if series is None:
        raise ConfigError(f"source {source.label!r}: strategy "
                          f"{source.strategy.value} requires a series")
    if source.strategy is Strategy.CHEBIL_ANNUAL:
        return chebil_r001(annual_accumulation(mean_rain_rate(series)))
    spacing = series.mean_spacing_hours()
    if spacing >= _COARSE_CADENCE_HOURS or series.cadence.lower() == "monthly":
        warnings.warn(
            f"source {source.label!r}: empirical exceedance over a "
            f"{series.cadence or 'coarse'} cadence is statistically weak",
            CadenceWarning, stacklevel=2)
    return empirical_exceedance_rate(series, 0.01)


def packaged_catalog_text() -> str:
    """The bundled six-station catalog CSV (printed coordinates kept
    bit-exact)."""
    from importlib import resources
    return resources.files("rainlink.data").joinpath("stations_africa.csv").read_text(encoding="utf-8")
