"""Spherical-coordinate kinematics: embedding, chord distances, arc angles.

Colatitude theta is allowed in [-pi, pi] so that configurations on a
rotating meridian can be parameterized continuously through the poles.
Longitude phi is reduced mod 2*pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SpherePoint:
    """A point on the sphere, (theta, phi) in radians."""

    theta: float
    phi: float

    def embed(self, R: "SphereRadius") -> tuple[float, float, float]:
        """Cartesian embedding (X, Y, Z) on the radius-R sphere."""
        st = math.sin(self.theta)
        return (
            R.R * st * math.cos(self.phi),
            R.R * st * math.sin(self.phi),
            R.R * math.cos(self.theta),
        )


@dataclass(frozen=True)
class SphereRadius:
    """Sphere radius R > 0 and the derived scale epsilon = 1/(2R)."""

    R: float = 1.0
    epsilon: float = field(init=False)

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError(f"sphere radius must be positive, got {self.R}")
        object.__setattr__(self, "epsilon", 1.0 / (2.0 * self.R))


def _clamp(v: float) -> float:
    return max(-1.0, min(1.0, v))


def chord_squared(p_i: SpherePoint, p_j: SpherePoint, R: SphereRadius) -> float:
    """Squared chord (embedding) distance between two sphere points.

    2 R^2 (1 - cos(t_i) cos(t_j) - sin(t_i) sin(t_j) cos(p_i - p_j)),
    always in [0, 4 R^2].
    """
    c = (
        math.cos(p_i.theta) * math.cos(p_j.theta)
        + math.sin(p_i.theta) * math.sin(p_j.theta) * math.cos(p_i.phi - p_j.phi)
    )
    return 2.0 * R.R * R.R * (1.0 - _clamp(c))


def arc_angle(p_i: SpherePoint, p_j: SpherePoint) -> float:
    """Arc angle in [0, pi] between two points as seen from the center."""
    c = (
        math.cos(p_i.theta) * math.cos(p_j.theta)
        + math.sin(p_i.theta) * math.sin(p_j.theta) * math.cos(p_i.phi - p_j.phi)
    )
    return math.acos(_clamp(c))


def chord_from_arc(sigma: float, R: SphereRadius) -> float:
    """Chord length D = 2 R sin(sigma / 2) for an arc angle in [0, pi]."""
    if not 0.0 <= sigma <= math.pi:
        raise ValueError(f"arc angle must lie in [0, pi], got {sigma}")
    return 2.0 * R.R * math.sin(0.5 * sigma)


def arc_from_chord_squared(d2: float, R: SphereRadius) -> float:
    """Inverse of chord_from_arc on squared input."""
    s = _clamp(math.sqrt(max(d2, 0.0)) * R.epsilon)
    return 2.0 * math.asin(s)
