"""Slant-range, free-space path loss, rain height, and rain slant-path
geometry for a ground station viewing a LEO satellite at fixed elevation.

All operations are pure functions; none mutate their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import EARTH_RADIUS_KM, MIN_ELEVATION_DEG
from .errors import DomainError, UnsupportedRegimeError


@dataclass(frozen=True)
class GroundStation:
    """A named candidate site.

    Latitude is signed, north positive; longitude signed, east positive.
    Altitude is km above mean sea level (h_s). The optional rain height
    override lets users with local isotherm data supply h_R directly.
    """

    name: str
    latitude_deg: float
    longitude_deg: float
    altitude_km: float
    rain_height_override_km: float | None = None

    def __post_init__(self):
        if not self.name:
            raise DomainError("station name must be non-empty")
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise DomainError(f"latitude {self.latitude_deg} outside [-90, 90]")
        if not -180.0 <= self.longitude_deg <= 180.0:
            raise DomainError(f"longitude {self.longitude_deg} outside [-180, 180]")
        if self.altitude_km < 0.0:
            raise DomainError(f"altitude {self.altitude_km} km must be >= 0")


@dataclass(frozen=True)
class PathGeometry:
    """Geometry of one station-to-satellite rain path.

    slant_path_km is L_s, the path from the station up to the rain height;
    horizontal_projection_km is L_G, its ground projection. slant_range_km
    is the full station-to-satellite distance and is optional because the
    rain chain itself never needs it.
    """

    elevation_deg: float
    rain_height_km: float
    slant_path_km: float
    horizontal_projection_km: float
    slant_range_km: float | None = None


def slant_range(satellite_altitude_km: float, elevation_deg: float,
                earth_radius_km: float = EARTH_RADIUS_KM) -> float:
    """Station-to-satellite distance in km for a satellite at the given
    altitude seen at the given elevation angle.

    d = sqrt((Re+h)^2 - Re^2 cos^2(e)) - Re sin(e), strictly decreasing
    in elevation.
    """
    if satellite_altitude_km <= 0.0:
        raise DomainError(f"satellite altitude {satellite_altitude_km} km must be > 0")
    if not 0.0 <= elevation_deg <= 90.0:
        raise DomainError(f"elevation {elevation_deg} deg outside [0, 90]")
    re = earth_radius_km
    e = math.radians(elevation_deg)
    return math.sqrt((re + satellite_altitude_km) ** 2 - (re * math.cos(e)) ** 2) - re * math.sin(e)


def free_space_path_loss(frequency_GHz: float, distance_km: float) -> float:
    """FSPL in dB: 92.45 + 20 log10(f_GHz) + 20 log10(d_km)."""
    if frequency_GHz <= 0.0:
        raise DomainError(f"frequency {frequency_GHz} GHz must be > 0")
    if distance_km <= 0.0:
        raise DomainError(f"distance {distance_km} km must be > 0")
    return 92.45 + 20.0 * math.log10(frequency_GHz) + 20.0 * math.log10(distance_km)


def rain_height(station: GroundStation) -> float:
    """Rain height h_R in km for a station.

    Returns the station override when set; otherwise the legacy latitude
    rule (an approximation of ITU-R P.839 behavior): 5.0 km within 23
    degrees of the equator, decreasing 0.075 km per degree beyond,
    floored at 0.
    """
    if station.rain_height_override_km is not None:
        return station.rain_height_override_km
    abs_lat = abs(station.latitude_deg)
    if abs_lat <= 23.0:
        return 5.0
    return max(0.0, 5.0 - 0.075 * (abs_lat - 23.0))


def rain_slant_path(station: GroundStation, elevation_deg: float,
                    rain_height_km: float | None = None,
                    satellite_altitude_km: float | None = None) -> PathGeometry:
    """Rain slant-path geometry for a station at a fixed elevation angle.

    L_s = (h_R - h_s)/sin(e) and L_G = L_s cos(e). A rain height at or
    below the station altitude yields the degenerate zero-length path
    (attenuation identically zero downstream) rather than an error.
    Passing satellite_altitude_km also fills in the full slant range.
    """
    if elevation_deg > 90.0:
        raise DomainError(f"elevation {elevation_deg} deg outside [0, 90]")
    if elevation_deg < MIN_ELEVATION_DEG:
        raise UnsupportedRegimeError(
            f"elevation {elevation_deg} deg below {MIN_ELEVATION_DEG} deg; "
            "the low-elevation prediction branch is not implemented")
    h_r = rain_height(station) if rain_height_km is None else rain_height_km
    h_s = station.altitude_km
    e = math.radians(elevation_deg)
    if h_r <= h_s:
        l_s = 0.0
        l_g = 0.0
    else:
        l_s = (h_r - h_s) / math.sin(e)
        l_g = l_s * math.cos(e)
    d = None
    if satellite_altitude_km is not None:
        d = slant_range(satellite_altitude_km, elevation_deg)
    return PathGeometry(elevation_deg=elevation_deg, rain_height_km=h_r,
                        slant_path_km=l_s, horizontal_projection_km=l_g,
                        slant_range_km=d)
