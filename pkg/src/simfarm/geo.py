"""Unit conversions and WGS-84 coordinate transforms.

Distances and bearings use the haversine/forward-azimuth formulas on a sphere
of mean radius 6371008.8 m (error vs. the ellipsoid is below ~0.5%); the
geodetic <-> ECEF transforms use the full WGS-84 ellipsoid, with the inverse
solved by Bowring-initialized fixed-point iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DimensionError, DomainError

__all__ = [
    "WGS84_A",
    "WGS84_F",
    "WGS84_B",
    "WGS84_E2",
    "EARTH_MEAN_RADIUS_M",
    "GeodeticCoord",
    "EcefCoord",
    "convert_unit",
    "geodetic_to_ecef",
    "ecef_to_geodetic",
    "distance_bearing",
]

# WGS-84 ellipsoid
WGS84_A = 6378137.0
WGS84_F = 1.0 / 298.257223563
WGS84_B = WGS84_A * (1.0 - WGS84_F)
WGS84_E2 = WGS84_F * (2.0 - WGS84_F)  # first eccentricity squared
_EP2 = WGS84_E2 / (1.0 - WGS84_E2)  # second eccentricity squared

EARTH_MEAN_RADIUS_M = 6371008.8

# exact conversion factors to the base unit of each dimension
_LENGTH_TO_M = {
    "m": 1.0,
    "km": 1000.0,
    "ft": 0.3048,
    "mi": 1609.344,
    "nm": 1852.0,  # nautical mile
}
_ANGLE_TO_RAD = {
    "rad": 1.0,
    "deg": math.pi / 180.0,
}


def _unit_table(unit: str):
    u = unit.strip().lower()
    if u in _LENGTH_TO_M:
        return "length", _LENGTH_TO_M[u]
    if u in _ANGLE_TO_RAD:
        return "angle", _ANGLE_TO_RAD[u]
    raise DomainError(f"unknown unit {unit!r}; known: {sorted(_LENGTH_TO_M) + sorted(_ANGLE_TO_RAD)}")


def convert_unit(value: float, from_unit: str, to_unit: str) -> float:
    """Convert ``value`` between length units (m, km, ft, mi, nm) or angle units (deg, rad)."""
    dim_from, f_from = _unit_table(from_unit)
    dim_to, f_to = _unit_table(to_unit)
    if dim_from != dim_to:
        raise DimensionError(
            f"cannot convert {from_unit!r} ({dim_from}) to {to_unit!r} ({dim_to})"
        )
    return float(value) * f_from / f_to


def _normalize_lon(lon: float) -> float:
    """Normalize longitude into (-180, 180]."""
    return 180.0 - (180.0 - float(lon)) % 360.0


@dataclass(frozen=True)
class GeodeticCoord:
    """WGS-84 geodetic position: latitude/longitude in degrees, altitude in meters."""

    lat: float
    lon: float
    alt: float = 0.0

    def __post_init__(self):
        if not (-90.0 <= self.lat <= 90.0):
            raise DomainError(f"latitude {self.lat} outside [-90, 90]")
        if not math.isfinite(self.lon):
            raise DomainError(f"longitude {self.lon} is not finite")
        if not math.isfinite(self.alt):
            raise DomainError(f"altitude {self.alt} is not finite")
        object.__setattr__(self, "lat", float(self.lat))
        object.__setattr__(self, "lon", _normalize_lon(self.lon))
        object.__setattr__(self, "alt", float(self.alt))

    def geocentric_latitude(self) -> float:
        """Geocentric latitude in degrees: tan(phi_gc) = (1 - e^2) tan(phi)."""
        phi = math.radians(self.lat)
        return math.degrees(math.atan((1.0 - WGS84_E2) * math.tan(phi)))


@dataclass(frozen=True)
class EcefCoord:
    """Earth-centered, Earth-fixed Cartesian position in meters."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"ECEF {name} = {v} is not finite")
            object.__setattr__(self, name, float(v))

    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)


def geodetic_to_ecef(g: GeodeticCoord) -> EcefCoord:
    phi = math.radians(g.lat)
    lam = math.radians(g.lon)
    sphi, cphi = math.sin(phi), math.cos(phi)
    n = WGS84_A / math.sqrt(1.0 - WGS84_E2 * sphi * sphi)
    return EcefCoord(
        x=(n + g.alt) * cphi * math.cos(lam),
        y=(n + g.alt) * cphi * math.sin(lam),
        z=(n * (1.0 - WGS84_E2) + g.alt) * sphi,
    )


def ecef_to_geodetic(e: EcefCoord, tol_rad: float = 1e-12, max_iter: int = 10) -> GeodeticCoord:
    """Invert :func:`geodetic_to_ecef` by Bowring-initialized iteration."""
    if e.norm() <= 1.0:
        raise DomainError("ECEF point within 1 m of Earth's center has no geodetic image")
    p = math.hypot(e.x, e.y)
    lon = math.degrees(math.atan2(e.y, e.x)) if p > 0 else 0.0

    if p < 1e-9:  # polar axis
        lat = 90.0 if e.z >= 0 else -90.0
        return GeodeticCoord(lat=lat, lon=lon, alt=abs(e.z) - WGS84_B)

    beta = math.atan2(e.z * WGS84_A, p * WGS84_B)
    phi = math.atan2(
        e.z + _EP2 * WGS84_B * math.sin(beta) ** 3,
        p - WGS84_E2 * WGS84_A * math.cos(beta) ** 3,
    )
    for _ in range(max_iter):
        beta = math.atan((WGS84_B / WGS84_A) * math.tan(phi))
        phi_new = math.atan2(
            e.z + _EP2 * WGS84_B * math.sin(beta) ** 3,
            p - WGS84_E2 * WGS84_A * math.cos(beta) ** 3,
        )
        if abs(phi_new - phi) < tol_rad:
            phi = phi_new
            break
        phi = phi_new

    sphi = math.sin(phi)
    n = WGS84_A / math.sqrt(1.0 - WGS84_E2 * sphi * sphi)
    if abs(math.cos(phi)) > 1e-9:
        alt = p / math.cos(phi) - n
    else:
        alt = abs(e.z) / abs(sphi) - n * (1.0 - WGS84_E2)
    return GeodeticCoord(lat=math.degrees(phi), lon=lon, alt=alt)


def distance_bearing(p1: GeodeticCoord, p2: GeodeticCoord) -> tuple[float, float]:
    """Great-circle distance (m) and initial bearing (deg in [0, 360)); altitude ignored."""
    if p1.lat == p2.lat and p1.lon == p2.lon:
        return 0.0, 0.0
    phi1, phi2 = math.radians(p1.lat), math.radians(p2.lat)
    dphi = phi2 - phi1
    dlam = math.radians(p2.lon - p1.lon)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    d = 2.0 * EARTH_MEAN_RADIUS_M * math.asin(min(1.0, math.sqrt(a)))
    theta = math.atan2(
        math.sin(dlam) * math.cos(phi2),
        math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlam),
    )
    return d, math.degrees(theta) % 360.0
