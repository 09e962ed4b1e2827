"""Closed-form rotating equilibria on the equator for the cotangent
potential: existence region, longitude differences, the common sine
ratio, potential energy, and the antipodal-limit scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .dynamics import MassTriple

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTERIOR = "exterior"


@dataclass(frozen=True)
class ExistenceResult:
    region: str
    solutions: int
    violated: str | None = None


@dataclass(frozen=True)
class EquatorSolution:
    """Longitude differences of the unique equatorial rotator.

    The differences each lie in (0, pi) and sum to 2*pi. rho is the
    common value of sin(dphi)/mu. neg_potential_energy is -V, always
    positive on the interior region.
    """

    dphi_12: float
    dphi_23: float
    dphi_31: float
    rho: float
    neg_potential_energy: float
    exists: bool = True
    violated: str | None = None

    def phis(self) -> tuple[float, float, float]:
        """A concrete longitude assignment with phi_1 = 0."""
        return (0.0, -self.dphi_12, -self.dphi_12 - self.dphi_23)

    def residual_inputs(self, omega: float = 1.0):
        half_pi = math.pi / 2.0
        return (half_pi, half_pi, half_pi), self.phis(), omega


class NoEquatorSolution(ValueError):
    def __init__(self, result: ExistenceResult):
        self.result = result
        super().__init__(
            f"no equatorial rotator: region={result.region}, violated={result.violated}"
        )


def existence_check(masses: MassTriple, tol: float = 1e-12) -> ExistenceResult:
    """Classify the mass triple by the triangle inequalities on mu_k.

    Interior (strict inequalities) has exactly one rotator; the boundary
    and the exterior have none.
    """
    mu = masses.mu
    scale = sum(mu)
    region = INTERIOR
    violated = None
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        gap = (mu[i] + mu[j]) - mu[k]
        label = f"mu{k + 1} < mu{i + 1} + mu{j + 1}"
        if abs(gap) <= tol * scale:
            region = BOUNDARY
            violated = label
            break
        if gap < 0:
            region = EXTERIOR
            violated = label
            break
    return ExistenceResult(region, 1 if region == INTERIOR else 0, violated)


def _dphis_from_mu(mu: Sequence[float], rho: float) -> tuple[float, float, float]:
    # two-argument arctangent fixes each quadrant so the three sum to 2*pi
    out = []
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        cos_v = (mu[k] ** 2 - (mu[i] ** 2 + mu[j] ** 2)) / (2.0 * mu[i] * mu[j])
        out.append(math.atan2(rho * mu[k], cos_v))
    # order: dphi_12 pairs with mu3, dphi_23 with mu1, dphi_31 with mu2
    return out[2], out[0], out[1]


def solve_equator(masses: MassTriple) -> EquatorSolution:
    """The unique equatorial rotator, valid for every omega including 0."""
    check = existence_check(masses)
    if check.region != INTERIOR:
        raise NoEquatorSolution(check)
    mu1, mu2, mu3 = masses.mu
    prod = (
        (mu1 + mu2 + mu3)
        * (mu1 + mu2 - mu3)
        * (mu2 + mu3 - mu1)
        * (mu3 + mu1 - mu2)
    )
    rho = math.sqrt(prod) / (2.0 * mu1 * mu2 * mu3)
    d12, d23, d31 = _dphis_from_mu(masses.mu, rho)
    neg_v = math.sqrt(prod)  # divided by R when R != 1; stored for R = 1
    return EquatorSolution(d12, d23, d31, rho, neg_v)


def default_antipodal_path(m3: float = 1.0) -> Callable[[float], MassTriple]:
    """Mass family m1 = m2 growing toward the antipodal limit.

    At t = 1, sqrt(m3/m1) + sqrt(m3/m2) = 1 exactly (m1 = m2 = 4 m3).
    The start m1 = 3 m3 puts the whole path on the tail where -V is
    monotone decreasing.
    """

    def path(t: float) -> MassTriple:
        m = (3.0 + t) * m3
        return MassTriple(m, m, m3)

    return path


@dataclass(frozen=True)
class AntipodalScanRow:
    t: float
    masses: MassTriple
    neg_potential_energy: float
    dphi_12: float
    dphi_23: float
    dphi_31: float


def antipodal_limit_scan(
    mass_path: Callable[[float], MassTriple] | None = None,
    steps: int = 50,
) -> list[AntipodalScanRow]:
    """Tabulate -V and the longitude differences along a mass path that
    terminates on the existence boundary.

    The terminal point is evaluated from the closed forms directly
    (rho -> 0, cosines clamped); every interior point must classify as
    interior or the scan aborts.
    """
    if mass_path is None:
        mass_path = default_antipodal_path()
    rows = []
    for n in range(steps + 1):
        t = n / steps
        masses = mass_path(t)
        check = existence_check(masses)
        if check.region == INTERIOR:
            sol = solve_equator(masses)
        elif n == steps:
            sol = _limit_solution(masses)
        else:
            raise ValueError(
                f"path leaves the interior region at t={t} ({check.region})"
            )
        rows.append(
            AntipodalScanRow(
                t, masses, sol.neg_potential_energy,
                sol.dphi_12, sol.dphi_23, sol.dphi_31,
            )
        )
    return rows


def _limit_solution(masses: MassTriple) -> EquatorSolution:
    mu1, mu2, mu3 = masses.mu
    prod = max(
        0.0,
        (mu1 + mu2 + mu3)
        * (mu1 + mu2 - mu3)
        * (mu2 + mu3 - mu1)
        * (mu3 + mu1 - mu2),
    )
    rho = math.sqrt(prod) / (2.0 * mu1 * mu2 * mu3)
    d12, d23, d31 = _dphis_from_mu(masses.mu, rho)
    return EquatorSolution(d12, d23, d31, rho, math.sqrt(prod), exists=False)
