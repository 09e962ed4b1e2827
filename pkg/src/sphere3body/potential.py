"""Pair potentials expressed in squared chord distance.

A pair potential is a pair of callables (u, u_prime) in the squared chord
length D^2. Attractive potentials have u_prime(D^2) < 0 on the regular
domain 0 < D^2 < 4 R^2. The cotangent potential is the concrete instance
used throughout; any contract satisfying the same conventions can drive
the generic meridian solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .geometry import SpherePoint, SphereRadius, chord_squared

COLLISION = "collision"
ANTIPODAL = "antipodal"


class SingularityError(ValueError):
    """Potential evaluated at a singular separation.

    kind is "collision" (D^2 -> 0) or "antipodal" (D^2 -> 4 R^2); pair
    optionally identifies the offending body pair.
    """

    def __init__(self, kind: str, d2: float, pair: tuple[int, int] | None = None):
        self.kind = kind
        self.d2 = d2
        self.pair = pair
        where = f" for pair {pair}" if pair else ""
        super().__init__(f"{kind} singularity at D^2={d2}{where}")


@dataclass(frozen=True)
class PairPotential:
    """Potential contract: u(D^2) and its derivative with respect to D^2."""

    u: Callable[[float], float]
    u_prime: Callable[[float], float]
    name: str = "custom"
    attractive: bool = True


def _check_domain(d2: float, R: SphereRadius, tol: float = 0.0):
    if d2 <= tol:
        raise SingularityError(COLLISION, d2)
    if d2 >= 4.0 * R.R * R.R - tol:
        raise SingularityError(ANTIPODAL, d2)


def cotangent_u(d2: float, R: SphereRadius) -> float:
    """Cotangent potential (1/R) cot(sigma) as a function of D^2."""
    _check_domain(d2, R)
    e2 = R.epsilon * R.epsilon
    return (1.0 - 2.0 * e2 * d2) / math.sqrt(d2 * (1.0 - e2 * d2))


def cotangent_u_prime(d2: float, R: SphereRadius) -> float:
    """Derivative of the cotangent potential: -1 / (2 R^3 sin^3 sigma)."""
    _check_domain(d2, R)
    e2 = R.epsilon * R.epsilon
    # sin^2(sigma) = (D^2/R^2)(1 - eps^2 D^2)
    s2 = (d2 / (R.R * R.R)) * (1.0 - e2 * d2)
    return -1.0 / (2.0 * R.R ** 3 * s2 ** 1.5)


def cotangent_potential(R: SphereRadius) -> PairPotential:
    """The cotangent pair potential bound to a sphere radius."""
    return PairPotential(
        u=lambda d2: cotangent_u(d2, R),
        u_prime=lambda d2: cotangent_u_prime(d2, R),
        name="cotangent",
        attractive=True,
    )


def repulsive(pot: PairPotential) -> PairPotential:
    """Sign-flipped copy of a potential (attractive <-> repulsive)."""
    return PairPotential(
        u=lambda d2: -pot.u(d2),
        u_prime=lambda d2: -pot.u_prime(d2),
        name=f"repulsive-{pot.name}" if pot.attractive else pot.name,
        attractive=not pot.attractive,
    )


_PAIRS = ((0, 1), (1, 2), (2, 0))


def total_potential(
    points: Sequence[SpherePoint],
    masses: Sequence[float],
    pot: PairPotential,
    R: SphereRadius,
) -> float:
    """V = sum over unordered pairs of m_i m_j u(D_ij^2)."""
    v = 0.0
    for i, j in _PAIRS:
        d2 = chord_squared(points[i], points[j], R)
        try:
            v += masses[i] * masses[j] * pot.u(d2)
        except SingularityError as err:
            raise SingularityError(err.kind, err.d2, (i + 1, j + 1)) from None
    return v
