"""The ITU-R P.618-8 prediction chain: horizontal reduction factor,
vertical adjustment, effective path length, reference attenuation at
0.01% exceedance, and scaling to arbitrary exceedance percentages.

Symbol conventions follow the recommendation: the elevation angle enters
the vertical-adjustment exponential in degrees but all trigonometric
terms in radians. Station latitude enters only through the chi term and
the z-term branch conditions; published write-ups of the scaling step
sometimes conflate the two symbols, so the separation is kept explicit
here.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .errors import ClampWarning, DomainError
from .geometry import GroundStation, PathGeometry
from .rain_physics import RainCoefficients, specific_attenuation

P_MIN_PERCENT = 0.001
P_MAX_PERCENT = 1.0


@dataclass(frozen=True)
class ReductionFactors:
    """Intermediate factors of the chain: horizontal reduction r001,
    vertical adjustment v001, the adjusted path L_R, and the effective
    path L_E = L_R * v001."""

    horizontal_r001: float
    vertical_v001: float
    adjusted_path_km: float
    effective_path_km: float


@dataclass(frozen=True)
class LatitudeTerm:
    """The z term of the exceedance-scaling exponent."""

    z: float
    absolute_latitude_deg: float
    elevation_deg: float


@dataclass(frozen=True)
class AttenuationCurve:
    """Predicted attenuation A_p versus exceedance percentage p.

    points is sorted ascending in p. diagnostics carries human-readable
    notes (clamping, monotonicity violations); the engine reports these
    rather than silently accepting or rejecting them.
    """

    reference_A001_dB: float
    r001_mm_per_hr: float
    points: tuple[tuple[float, float], ...]
    diagnostics: tuple[str, ...] = field(default=())


def _check_p(p_percent: float) -> None:
    if not P_MIN_PERCENT <= p_percent <= P_MAX_PERCENT:
        raise DomainError(
            f"exceedance percentage {p_percent} outside [{P_MIN_PERCENT}, {P_MAX_PERCENT}]")


def horizontal_reduction_factor(L_G_km: float, gamma_dB_per_km: float,
                                frequency_GHz: float) -> float:
    """Horizontal reduction factor r001 for 0.01% of the time.

    r001 = 1 / (1 + 0.78 sqrt(L_G gamma / f) - 0.38 (1 - e^(-2 L_G))).
    Values above 1 (possible when gamma is near zero) are clamped to 1
    with a warning; factors above unity have no physical reading here.
    """
    if L_G_km < 0.0:
        raise DomainError(f"horizontal projection {L_G_km} km must be >= 0")
    if gamma_dB_per_km < 0.0:
        raise DomainError(f"specific attenuation {gamma_dB_per_km} dB/km must be >= 0")
    if frequency_GHz < 1.0:
        raise DomainError(f"frequency {frequency_GHz} GHz must be >= 1")
    if L_G_km == 0.0:
        return 1.0
    denom = 1.0 + 0.78 * math.sqrt(L_G_km * gamma_dB_per_km / frequency_GHz) \
        - 0.38 * (1.0 - math.exp(-2.0 * L_G_km))
    r001 = 1.0 / denom
    if r001 > 1.0:
        warnings.warn(f"horizontal reduction factor {r001:.4f} clamped to 1.0",
                      ClampWarning, stacklevel=2)
        return 1.0
    return r001


def vertical_adjustment(L_G_km: float, r001: float, rain_height_km: float,
                        station_altitude_km: float, elevation_deg: float,
                        gamma_dB_per_km: float, frequency_GHz: float,
                        absolute_latitude_deg: float) -> tuple[float, float]:
    """Vertical adjustment step: returns (L_R_km, v001).

    zeta = atan((h_R - h_s) / (L_G r001)); when zeta exceeds the
    elevation the rain cell caps the path at L_G r001 / cos(e), else the
    full vertical extent (h_R - h_s)/sin(e) applies. chi = 36 - |lat|
    for |lat| < 36, else 0. The elevation enters the exponential in
    degrees and the trigonometric terms in radians.
    """
    e_rad = math.radians(elevation_deg)
    height = rain_height_km - station_altitude_km
    if height < 0.0:
        height = 0.0
    horizontal = L_G_km * r001
    if horizontal == 0.0:
        # vertical-path fallback; atan would be ill-defined
        L_R = height / math.sin(e_rad)
    else:
        zeta = math.atan2(height, horizontal)
        if zeta > e_rad:
            L_R = horizontal / math.cos(e_rad)
        else:
            L_R = height / math.sin(e_rad)
    abs_lat = abs(absolute_latitude_deg)
    chi = 36.0 - abs_lat if abs_lat < 36.0 else 0.0
    v001 = 1.0 / (1.0 + math.sqrt(math.sin(e_rad)) * (
        31.0 * (1.0 - math.exp(-elevation_deg / (1.0 + chi)))
        * math.sqrt(L_R * gamma_dB_per_km) / frequency_GHz ** 2 - 0.45))
    return L_R, v001


def reference_attenuation(gamma_dB_per_km: float, effective_path_km: float) -> float:
    """A001 = gamma * L_E, the attenuation exceeded 0.01% of an average year."""
    if gamma_dB_per_km < 0.0 or effective_path_km < 0.0:
        raise DomainError("specific attenuation and effective path must be >= 0")
    return gamma_dB_per_km * effective_path_km


def latitude_term(absolute_latitude_deg: float, elevation_deg: float,
                  p_percent: float) -> LatitudeTerm:
    """The z term of the scaling exponent, per the four-branch rule:
    zero at p >= 1% or |lat| >= 36 deg; -0.005(|lat|-36) at elevations
    of 25 deg and above; the same plus 1.8 - 4.25 sin(e) below."""
    _check_p(p_percent)
    abs_lat = abs(absolute_latitude_deg)
    if p_percent >= 1.0 or abs_lat >= 36.0:
        z = 0.0
    elif elevation_deg >= 25.0:
        z = -0.005 * (abs_lat - 36.0)
    else:
        z = -0.005 * (abs_lat - 36.0) + 1.8 - 4.25 * math.sin(math.radians(elevation_deg))
    return LatitudeTerm(z=z, absolute_latitude_deg=abs_lat,
                        elevation_deg=elevation_deg)


def scale_attenuation(A001_dB: float, p_percent: float, z: float,
                      elevation_deg: float) -> float:
    """Scale the reference attenuation to exceedance percentage p:

    A_p = A001 (p/0.01)^-(0.655 + 0.033 ln p - 0.045 ln A001
                          - z sin(e) (1 - p))

    with natural logarithms and p in percent units.
    """
    _check_p(p_percent)
    if A001_dB < 0.0:
        raise DomainError(f"reference attenuation {A001_dB} dB must be >= 0")
    if A001_dB == 0.0:
        return 0.0
    exponent = -(0.655 + 0.033 * math.log(p_percent) - 0.045 * math.log(A001_dB)
                 - z * math.sin(math.radians(elevation_deg)) * (1.0 - p_percent))
    return A001_dB * (p_percent / 0.01) ** exponent


def attenuation_curve(station: GroundStation, path: PathGeometry,
                      coefficients: RainCoefficients, r001_rain_rate: float,
                      p_list: list[float]) -> AttenuationCurve:
    """Run the full chain once for A001, then scale to every requested p.

    The returned curve is sorted ascending in p. Monotonicity (A_p
    non-increasing in p) is checked numerically and any violation is
    recorded as a diagnostic, never silently accepted.
    """
    if not p_list:
        raise DomainError("p_list must be non-empty")
    for p in p_list:
        _check_p(p)
    diagnostics: list[str] = []
    gamma = specific_attenuation(r001_rain_rate, coefficients).gamma_dB_per_km
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ClampWarning)
        r001 = horizontal_reduction_factor(path.horizontal_projection_km, gamma,
                                           coefficients.frequency_GHz)
    for w in caught:
        diagnostics.append(str(w.message))
    L_R, v001 = vertical_adjustment(
        path.horizontal_projection_km, r001, path.rain_height_km,
        station.altitude_km, path.elevation_deg, gamma,
        coefficients.frequency_GHz, abs(station.latitude_deg))
    L_E = L_R * v001
    A001 = reference_attenuation(gamma, L_E)
    points = []
    for p in sorted(set(p_list)):
        z = latitude_term(abs(station.latitude_deg), path.elevation_deg, p).z
        points.append((p, scale_attenuation(A001, p, z, path.elevation_deg)))
    for (p_lo, a_lo), (p_hi, a_hi) in zip(points, points[1:]):
        if a_hi > a_lo:
            diagnostics.append(
                f"monotonicity violation: A({p_hi:g}%) = {a_hi:.4f} dB exceeds "
                f"A({p_lo:g}%) = {a_lo:.4f} dB")
    return AttenuationCurve(reference_A001_dB=A001, r001_mm_per_hr=r001_rain_rate,
                            points=tuple(points), diagnostics=tuple(diagnostics))
