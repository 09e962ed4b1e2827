"""Rotating-meridian machinery: shape <-> configuration translation,
per-pair force/geometry terms with case classification, the reduced
scalar equation with its region bookkeeping, root finding, the special
families, and the flat-space (large radius) limit.

Shape angles: a = theta2 - theta1 in (0, pi) is fixed; the unknown is
x = theta3 - theta1 in (0, 2*pi). The potential is singular at
x in {0, a, pi, a + pi}, which bound the four regular regions I-IV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from . import kernels
from .dynamics import MassTriple, configuration_residuals
from .geometry import SphereRadius
from .potential import PairPotential, cotangent_potential

TWO_PI = 2.0 * math.pi
REGIONS = ("I", "II", "III", "IV")

CASE1 = "Case1"
CASE2 = "Case2"
CASE3 = "Case3"
CASE4_FIXED_POINT = "Case4-fixed-point"
A_ZERO_FIXED_POINT = "A-zero-fixed-point"

# region -> (alpha, beta): the signs of sin(x) and sin(x - a)
_REGION_SIGNS = {"I": (1, -1), "II": (1, 1), "III": (-1, 1), "IV": (-1, -1)}


class NotARotatorError(ValueError):
    """The two independent branch equations disagree for this shape."""


class AZeroFixedPoint(Exception):
    """Amplitude A = 0: the shape-to-configuration map is indefinite and
    the shape is a fixed point."""


def region_bounds(region: str, a: float) -> tuple[float, float]:
    return {
        "I": (0.0, a),
        "II": (a, math.pi),
        "III": (math.pi, math.pi + a),
        "IV": (math.pi + a, TWO_PI),
    }[region]


def region_of(x: float, a: float) -> str:
    x = x % TWO_PI
    for region in REGIONS:
        lo, hi = region_bounds(region, a)
        if lo <= x <= hi:
            return region
    raise ValueError(f"x={x} outside (0, 2*pi)")


@dataclass(frozen=True)
class Shape:
    """Rotation-invariant collinear shape: angle differences from body 1."""

    theta21: float
    theta31: float

    @property
    def theta32(self) -> float:
        return self.theta31 - self.theta21

    def validate(self, tol: float = 1e-12):
        if not 0.0 < self.theta21 < math.pi:
            raise ValueError(f"theta21 must lie in (0, pi), got {self.theta21}")
        if not 0.0 < self.theta31 < TWO_PI:
            raise ValueError(f"theta31 must lie in (0, 2*pi), got {self.theta31}")
        for bad in (0.0, self.theta21, math.pi, self.theta21 + math.pi):
            if abs(self.theta31 - bad) <= tol:
                raise ValueError(f"theta31={self.theta31} sits on a singular point")


def amplitude_A(masses: MassTriple, shape: Shape) -> float:
    """Translation amplitude; zero exactly at the fixed-point shapes."""
    m1, m2, m3 = masses.as_tuple()
    a2 = (
        m1 * m1 + m2 * m2 + m3 * m3
        + 2.0 * m1 * m2 * math.cos(2.0 * shape.theta21)
        + 2.0 * m1 * m3 * math.cos(2.0 * shape.theta31)
        + 2.0 * m2 * m3 * math.cos(2.0 * shape.theta32)
    )
    return math.sqrt(max(a2, 0.0))


@dataclass(frozen=True)
class MeridianTranslation:
    """Configuration lift of a shape, with its antipodal partner."""

    A: float
    alpha: float
    s: int
    thetas: tuple[float, float, float]
    thetas_alt: tuple[float, float, float]


def shape_to_configurations(
    masses: MassTriple,
    shape: Shape,
    s: int,
    a_tol: float = 1e-12,
) -> MeridianTranslation:
    """Lift a shape to absolute colatitudes on the branch s = +/-1.

    Raises AZeroFixedPoint when the amplitude vanishes (the lift is
    indefinite; the shape is a fixed point).
    """
    m1, m2, m3 = masses.as_tuple()
    t21, t31 = shape.theta21, shape.theta31
    A = amplitude_A(masses, shape)
    if A <= a_tol * (m1 + m2 + m3):
        raise AZeroFixedPoint(shape)

    cos_part = m1 + m2 * math.cos(2.0 * t21) + m3 * math.cos(2.0 * t31)
    sin_part = m2 * math.sin(2.0 * t21) + m3 * math.sin(2.0 * t31)
    alpha = 0.5 * math.atan2(sin_part / A, cos_part / A)

    sin2t1 = s * (-sin_part) / A
    cos2t1 = s * cos_part / A
    t1 = 0.5 * math.atan2(sin2t1, cos2t1)
    thetas = (t1, t1 + t21, t1 + t31)
    thetas_alt = tuple(t + math.pi for t in thetas)

    _check_translation(masses, shape, s, A, thetas)
    return MeridianTranslation(A, alpha, s, thetas, thetas_alt)


def _check_translation(masses, shape, s, A, thetas, tol=1e-10):
    # the lifted angles must reproduce the translated (sin, cos) of
    # 2*theta_k for the remaining bodies
    m = masses.as_tuple()
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        sin_pred = (
            s / A * (
                m[i] * math.sin(2.0 * (thetas[k] - thetas[i]))
                + m[j] * math.sin(2.0 * (thetas[k] - thetas[j]))
            )
        )
        cos_pred = (
            s / A * (
                m[k]
                + m[i] * math.cos(2.0 * (thetas[k] - thetas[i]))
                + m[j] * math.cos(2.0 * (thetas[k] - thetas[j]))
            )
        )
        if (
            abs(sin_pred - math.sin(2.0 * thetas[k])) > tol
            or abs(cos_pred - math.cos(2.0 * thetas[k])) > tol
        ):
            raise RuntimeError("translation lift failed the consistency check")


@dataclass(frozen=True)
class PairQuantities:
    """Per-pair force-like terms F_ij and geometric terms G_ij."""

    F12: float
    F23: float
    F31: float
    G12: float
    G23: float
    G31: float


def pair_quantities(
    masses: MassTriple,
    shape: Shape,
    pot: PairPotential | None = None,
    R: SphereRadius = SphereRadius(),
) -> PairQuantities:
    shape.validate()
    if pot is None:
        pot = cotangent_potential(R)
    m = masses.as_tuple()
    th = (0.0, shape.theta21, shape.theta31)
    F = {}
    G = {}
    for i, j in ((0, 1), (1, 2), (2, 0)):
        d = th[j] - th[i]
        d2 = 2.0 * R.R * R.R * (1.0 - math.cos(d))
        F[(i, j)] = -2.0 * m[i] * m[j] * math.sin(d) * pot.u_prime(d2)
        G[(i, j)] = m[i] * m[j] * math.sin(2.0 * d)
    return PairQuantities(
        F[(0, 1)], F[(1, 2)], F[(2, 0)],
        G[(0, 1)], G[(1, 2)], G[(2, 0)],
    )


def classify_case(pq: PairQuantities, masses: MassTriple, tol: float = 1e-12) -> str:
    """Which pair of rigid-rotator equations applies for this shape."""
    m1, m2, m3 = masses.as_tuple()
    scale = m1 * m2 + m2 * m3 + m3 * m1
    d1 = abs(pq.G12 - pq.G23) <= tol * scale
    d2 = abs(pq.G31 - pq.G12) <= tol * scale
    d3 = abs(pq.G23 - pq.G31) <= tol * scale
    if d1 and d2 and d3:
        return CASE4_FIXED_POINT
    if d1:
        return CASE2
    if d2:
        return CASE3
    return CASE1


@dataclass(frozen=True)
class BranchResult:
    s: int
    omega_squared: float | None  # None encodes a fixed point
    case_tag: str

    @property
    def is_fixed_point(self) -> bool:
        return self.omega_squared is None


def solve_omega_and_branch(
    pq: PairQuantities,
    masses: MassTriple,
    A: float,
    ratio_tol: float = 1e-6,
    case_tol: float = 1e-12,
) -> BranchResult:
    """Branch sign and rotation rate from the ratio equations.

    s is chosen so omega^2 = 2*A*s*ratio >= 0. Case 4 (all G equal)
    leaves both undetermined: a fixed point.
    """
    case = classify_case(pq, masses, case_tol)
    m1, m2, m3 = masses.as_tuple()
    fscale = max(abs(pq.F12), abs(pq.F23), abs(pq.F31), 1e-300)
    if case == CASE4_FIXED_POINT:
        if (
            abs(pq.F12 - pq.F23) > ratio_tol * fscale
            or abs(pq.F31 - pq.F12) > ratio_tol * fscale
        ):
            raise NotARotatorError("all G equal but the F values differ")
        return BranchResult(0, None, case)
    ratios = []
    if case in (CASE1, CASE3):
        ratios.append((pq.F12 - pq.F23) / (pq.G12 - pq.G23))
    else:
        if abs(pq.F12 - pq.F23) > ratio_tol * fscale:
            raise NotARotatorError("G12 = G23 but F12 != F23")
    if case in (CASE1, CASE2):
        ratios.append((pq.F31 - pq.F12) / (pq.G31 - pq.G12))
    else:
        if abs(pq.F31 - pq.F12) > ratio_tol * fscale:
            raise NotARotatorError("G31 = G12 but F31 != F12")
    if len(ratios) == 2:
        rscale = max(abs(ratios[0]), abs(ratios[1]), 1.0)
        if abs(ratios[0] - ratios[1]) > ratio_tol * rscale:
            raise NotARotatorError(
                f"branch equations disagree: {ratios[0]} vs {ratios[1]}"
            )
    ratio = sum(ratios) / len(ratios)
    s = -1 if ratio < 0 else 1
    return BranchResult(s, 2.0 * A * abs(ratio), case)


@dataclass(frozen=True)
class MeridianSolution:
    """A rigid rotator on a rotating meridian plus its configuration lift."""

    x: float
    shape: Shape
    translation: MeridianTranslation | None
    s: int
    omega_squared: float | None
    case_tag: str
    region: str
    residual_max: float = math.nan

    @property
    def is_fixed_point(self) -> bool:
        return self.omega_squared is None

    def residual_inputs(self):
        if self.translation is not None:
            thetas = self.translation.thetas
        else:
            # fixed point: the axis is arbitrary, pick theta1 = 0
            thetas = (0.0, self.shape.theta21, self.shape.theta31)
        omega = 0.0 if self.omega_squared is None else math.sqrt(self.omega_squared)
        return thetas, (0.0, 0.0, 0.0), omega


@dataclass(frozen=True)
class GFunctionParams:
    """Inputs of the reduced scalar equation, with the region signs."""

    a: float
    nu1: float
    nu2: float
    alpha_sign: int
    beta_sign: int


def gfunction_params(a: float, nu1: float, nu2: float, region: str) -> GFunctionParams:
    al, be = _REGION_SIGNS[region]
    return GFunctionParams(a, nu1, nu2, al, be)


def g_function(x: float, params: GFunctionParams) -> float:
    """The reduced scalar equation g; its zeros away from the region
    boundaries are the rigid rotators. Continuous across boundaries."""
    a, nu1, nu2 = params.a, params.nu1, params.nu2
    al, be = params.alpha_sign, params.beta_sign
    sx = math.sin(x)
    sxa = math.sin(x - a)
    s2x = sx * sx
    s2xa = sxa * sxa
    sa2 = math.sin(a) ** 2
    sin2x = math.sin(2.0 * x)
    sin2xa = math.sin(2.0 * (x - a))
    return (
        al * be * s2x * s2xa * (nu1 * sin2x + nu2 * sin2xa)
        - sa2 * (al * s2x * sin2x - be * s2xa * sin2xa)
        - sa2 * math.sin(2.0 * a) * (nu2 * al * s2x + nu1 * be * s2xa)
    )


@dataclass(frozen=True)
class ScanOptions:
    samples_per_region: int = 2000
    boundary_tol: float = 1e-8
    merge_tol: float = 1e-10
    root_xtol: float = 1e-13
    tangency_tol: float = 1e-9
    ratio_tol: float = 1e-6
    residual_tol: float = 1e-9
    case_tol: float = 1e-12


def _bisect(f, lo, hi, flo, xtol):
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:  # at floating-point resolution
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _newton_polish(f, x, steps=3):
    """Drive a bisection root to machine precision; keeps the original
    point when the iteration does not improve |f| (tangent roots)."""
    fx = f(x)
    for _ in range(steps):
        h = 1e-7 * max(abs(x), 1.0)
        df = (f(x + h) - f(x - h)) / (2.0 * h)
        if df == 0.0:
            break
        x_new = x - fx / df
        f_new = f(x_new)
        if abs(f_new) >= abs(fx):
            break
        x, fx = x_new, f_new
    return x


def _refine_extremum(f, lo, hi, sign, iters=100):
    # golden-section minimization of sign * f over [lo, hi]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = sign * f(c), sign * f(d)
    for _ in range(iters):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = sign * f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = sign * f(d)
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


def _scan_region_roots(
    a: float, nu1: float, nu2: float, region: str, opts: ScanOptions
) -> list[float]:
    """Roots of g strictly inside one region: bracketed sign changes
    refined by bisection, plus tangent (even-order) roots located at
    refined extrema where g vanishes to tolerance."""
    lo, hi = region_bounds(region, a)
    lo += opts.boundary_tol
    hi -= opts.boundary_tol
    if hi <= lo:
        return []
    xs = np.linspace(lo, hi, opts.samples_per_region)
    gs = kernels.g_array(xs, a, nu1, nu2)
    scale = float(np.max(np.abs(gs)))
    if scale == 0.0:
        return []

    def f(x):
        return kernels.g_scalar(x, a, nu1, nu2)

    roots = []
    crossing = gs[:-1] * gs[1:] < 0.0
    for i in np.flatnonzero(crossing):
        r = _bisect(f, xs[i], xs[i + 1], gs[i], opts.root_xtol)
        roots.append(_newton_polish(f, r))

    # tangent roots: local extrema of |g| ~ 0 without an adjacent crossing
    d = np.diff(gs)
    ext = np.flatnonzero(d[:-1] * d[1:] < 0.0) + 1
    for i in ext:
        if crossing[max(i - 2, 0):min(i + 2, len(crossing))].any():
            continue
        sign = 1.0 if gs[i] > 0 else -1.0
        x_star = _refine_extremum(f, xs[i - 1], xs[i + 1], sign)
        if abs(f(x_star)) <= opts.tangency_tol * scale:
            roots.append(x_star)

    roots.sort()
    merged: list[float] = []
    for r in roots:
        if merged and r - merged[-1] < opts.merge_tol:
            continue
        merged.append(r)
    return merged


def _exceptional_a_match(a: float, nu: float, tol: float = 1e-9) -> bool:
    # the special a where G-equality and F-equality can hold jointly
    target = 1.0 / ((1.0 + nu) * (1.0 + nu * nu))
    return abs(math.cos(a) ** 2 - target) <= tol


def _exceptional_candidates(a: float, masses: MassTriple) -> list[tuple[float, str]]:
    out = []
    nu1, nu2 = masses.nu1, masses.nu2
    if _exceptional_a_match(a, nu1):
        y = math.atan2(math.sin(a) / math.sqrt(nu1), nu1 ** 1.5 * math.cos(a))
        out.append(((a + y) % TWO_PI, CASE2))
    if _exceptional_a_match(a, nu2):
        x = math.atan2(-math.sin(a) / math.sqrt(nu2), nu2 ** 1.5 * math.cos(a)) % TWO_PI
        out.append((x, CASE3))
    return out


def solution_from_shape(
    shape: Shape,
    masses: MassTriple,
    pot: PairPotential | None = None,
    R: SphereRadius = SphereRadius(),
    opts: ScanOptions | None = None,
) -> MeridianSolution:
    """Lift a candidate shape to a verified solution (raises
    NotARotatorError when the branch equations reject it)."""
    opts = opts or ScanOptions()
    if pot is None:
        pot = cotangent_potential(R)
    pq = pair_quantities(masses, shape, pot, R)
    A = amplitude_A(masses, shape)
    branch = solve_omega_and_branch(pq, masses, A, opts.ratio_tol, opts.case_tol)
    region = region_of(shape.theta31, shape.theta21)
    if branch.is_fixed_point:
        sol = MeridianSolution(
            shape.theta31, shape, None, 0, None, branch.case_tag, region
        )
        return _with_residual(sol, masses, pot, R)
    try:
        translation = shape_to_configurations(masses, shape, branch.s)
    except AZeroFixedPoint:
        sol = MeridianSolution(
            shape.theta31, shape, None, 0, None, A_ZERO_FIXED_POINT, region
        )
        return _with_residual(sol, masses, pot, R)
    sol = MeridianSolution(
        shape.theta31, shape, translation, branch.s,
        branch.omega_squared, branch.case_tag, region,
    )
    return _with_residual(sol, masses, pot, R)


def _with_residual(sol: MeridianSolution, masses, pot, R) -> MeridianSolution:
    thetas, phis, omega = sol.residual_inputs()
    res = configuration_residuals(thetas, phis, omega, masses, pot, R)
    return replace(sol, residual_max=float(np.max(np.abs(res))))


def find_meridian_rotators(
    a: float,
    masses: MassTriple,
    options: ScanOptions | None = None,
    pot: PairPotential | None = None,
    R: SphereRadius = SphereRadius(),
) -> list[MeridianSolution]:
    """All rigid rotators on the rotating meridian for fixed a.

    Cotangent potential: dense scan of the reduced equation per region,
    with exceptional-case closed forms appended when the special angle
    matches. A custom potential scans the generic ratio equation
    instead. Every survivor must pass the raw-equation residuals.
    """
    if not 0.0 < a < math.pi:
        raise ValueError(f"a must lie in (0, pi), got {a}")
    opts = options or ScanOptions()

    if pot is None or pot.name in ("cotangent", "repulsive-cotangent"):
        scan_pot = pot
        roots = []
        for region in REGIONS:
            roots.extend(_scan_region_roots(a, masses.nu1, masses.nu2, region, opts))
    else:
        scan_pot = pot
        roots = _generic_scan_roots(a, masses, pot, R, opts)

    for x, _tag in _exceptional_candidates(a, masses):
        if all(abs(x - r) > 1e-7 for r in roots):
            roots.append(x)
    roots.sort()

    solutions = []
    for x in roots:
        shape = Shape(a, x)
        try:
            shape.validate(opts.boundary_tol)
            sol = solution_from_shape(shape, masses, scan_pot, R, opts)
        except (ValueError, NotARotatorError):
            continue
        # gate relative to the equation scale: fast rotators near a
        # boundary have huge omega^2, so their raw residual floor grows
        scale = max(1.0, abs(sol.omega_squared or 0.0)) * sum(masses.as_tuple())
        if sol.residual_max < opts.residual_tol * scale:
            solutions.append(sol)
    return solutions


def _generic_scan_roots(a, masses, pot, R, opts) -> list[float]:
    # scan the cross-multiplied ratio equation for a generic potential
    def h(x):
        pq = pair_quantities(masses, Shape(a, x), pot, R)
        return (pq.F12 - pq.F23) * (pq.G31 - pq.G12) - (pq.F31 - pq.F12) * (
            pq.G12 - pq.G23
        )

    roots = []
    for region in REGIONS:
        lo, hi = region_bounds(region, a)
        lo += opts.boundary_tol
        hi -= opts.boundary_tol
        xs = np.linspace(lo, hi, opts.samples_per_region)
        hs = np.array([h(x) for x in xs])
        for i in np.flatnonzero(hs[:-1] * hs[1:] < 0.0):
            roots.append(_bisect(h, xs[i], xs[i + 1], hs[i], opts.root_xtol))
    return roots


@dataclass(frozen=True)
class RegionCounts:
    I: int
    II: int
    III: int
    IV: int

    @property
    def total(self) -> int:
        return self.I + self.II + self.III + self.IV

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.I, self.II, self.III, self.IV)


def count_pi_over_2(nu_diff: float) -> RegionCounts:
    """Closed-form solution counts at a = pi/2 as a function of
    nu1 - nu2 (regions I and III always contribute one each)."""
    if nu_diff < -4.0:
        return RegionCounts(1, 0, 1, 2)
    if nu_diff == -4.0:
        return RegionCounts(1, 0, 1, 1)
    if nu_diff < 4.0:
        return RegionCounts(1, 0, 1, 0)
    if nu_diff == 4.0:
        return RegionCounts(1, 1, 1, 0)
    return RegionCounts(1, 2, 1, 0)


def count_rotators_scan(
    a: float,
    nu1: float,
    nu2: float,
    options: ScanOptions | None = None,
) -> RegionCounts:
    """Root counts of the reduced equation per region (scan only; no
    configuration lift)."""
    opts = options or ScanOptions()
    counts = [len(_scan_region_roots(a, nu1, nu2, r, opts)) for r in REGIONS]
    return RegionCounts(*counts)


def count_rotators_grid(
    a: float,
    nu1_values: Sequence[float],
    nu2_values: Sequence[float],
    samples_per_region: int = 400,
    boundary_tol: float = 1e-8,
) -> np.ndarray:
    """Total sign-change counts over a (nu1, nu2) grid for one a."""
    per_region = count_rotators_grid_regions(
        a, nu1_values, nu2_values, samples_per_region, boundary_tol
    )
    return sum(per_region.values())


def count_rotators_grid_regions(
    a: float,
    nu1_values: Sequence[float],
    nu2_values: Sequence[float],
    samples_per_region: int = 400,
    boundary_tol: float = 1e-8,
) -> dict[str, np.ndarray]:
    """Per-region sign-change counts over a (nu1, nu2) grid for one a.

    Uses the linearity of g in (nu1, nu2): per region, g decomposes as
    nu1 * P(x) + nu2 * Q(x) + S(x), so the whole grid shares one set of
    x samples. Tangent roots are not detected here; this is the sweep's
    coarse counter.
    """
    nu1v = np.asarray(nu1_values, dtype=float)
    nu2v = np.asarray(nu2_values, dtype=float)
    out: dict[str, np.ndarray] = {}
    for region in REGIONS:
        lo, hi = region_bounds(region, a)
        xs = np.linspace(lo + boundary_tol, hi - boundary_tol, samples_per_region)
        al, be = _REGION_SIGNS[region]
        sx = np.sin(xs)
        sxa = np.sin(xs - a)
        s2x = sx * sx
        s2xa = sxa * sxa
        sa2 = math.sin(a) ** 2
        sin2x = np.sin(2.0 * xs)
        sin2xa = np.sin(2.0 * (xs - a))
        P = al * be * s2x * s2xa * sin2x - sa2 * math.sin(2.0 * a) * be * s2xa
        Q = al * be * s2x * s2xa * sin2xa - sa2 * math.sin(2.0 * a) * al * s2x
        S = -sa2 * (al * s2x * sin2x - be * s2xa * sin2xa)
        g = (
            nu1v[:, None, None] * P[None, None, :]
            + nu2v[None, :, None] * Q[None, None, :]
            + S[None, None, :]
        )
        out[region] = np.count_nonzero(g[:, :, :-1] * g[:, :, 1:] < 0.0, axis=2)
    return out


def equilateral_rotator(
    masses: MassTriple,
    pot: PairPotential | None = None,
    R: SphereRadius = SphereRadius(),
) -> MeridianSolution:
    """The equilateral rotator (all mutual arcs 2*pi/3).

    Potential-generic: s = -1 and omega^2 = -4 A U'(3 R^2) for unequal
    masses; equal masses give the amplitude-zero fixed point.
    """
    if pot is None:
        pot = cotangent_potential(R)
    shape = Shape(2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0)
    region = region_of(shape.theta31, shape.theta21)
    A = amplitude_A(masses, shape)
    uprime = pot.u_prime(3.0 * R.R * R.R)
    try:
        translation = shape_to_configurations(masses, shape, -1 if pot.attractive else 1)
    except AZeroFixedPoint:
        sol = MeridianSolution(
            shape.theta31, shape, None, 0, None, A_ZERO_FIXED_POINT, region
        )
        return _with_residual(sol, masses, pot, R)
    omega_squared = 4.0 * A * abs(uprime)
    sol = MeridianSolution(
        shape.theta31, shape, translation, translation.s,
        omega_squared, CASE1, region,
    )
    return _with_residual(sol, masses, pot, R)


SPECIAL_ISOSCELES_COS_A = (math.sqrt(2.0) - 1.0) / 2.0


def isosceles_rotators(
    masses: MassTriple,
    a: float | str | None = "special",
    pot: PairPotential | None = None,
    R: SphereRadius = SphereRadius(),
) -> list[MeridianSolution]:
    """Isosceles rotators (body 3 at the midpoint of the minor or major
    arc joining bodies 1 and 2).

    nu1 = nu2: both families exist for every a. Unequal nu: the minor-arc
    family only at cos(a) = (sqrt(2)-1)/2, the major-arc family only at
    a = 2*pi/3 (where it is the equilateral rotator).
    """
    if a == "special" or a is None:
        a = math.acos(SPECIAL_ISOSCELES_COS_A)
    if not 0.0 < a < math.pi:
        raise ValueError(f"a must lie in (0, pi), got {a}")
    equal_nu = abs(masses.nu1 - masses.nu2) <= 1e-12 * (masses.nu1 + masses.nu2)
    out = []
    candidates = []
    if equal_nu or abs(math.cos(a) - SPECIAL_ISOSCELES_COS_A) <= 1e-9:
        candidates.append(a / 2.0)
    if equal_nu or abs(a - 2.0 * math.pi / 3.0) <= 1e-9:
        candidates.append(a / 2.0 + math.pi)
    for x in candidates:
        try:
            out.append(solution_from_shape(Shape(a, x), masses, pot, R))
        except NotARotatorError:
            continue
    return out


@dataclass(frozen=True)
class ExceptionalAngles:
    """Closed-form Case 2 / Case 3 shape angles for a given mass ratio.

    theta_pair is theta1 - theta2; theta_other is theta2 - theta3
    (Case 2) or theta3 - theta1 (Case 3).
    """

    which: str
    nu: float
    sin_theta_pair: float
    cos_theta_pair: float
    sin_theta_other: float
    cos_theta_other: float

    @property
    def theta_pair(self) -> float:
        return math.atan2(self.sin_theta_pair, self.cos_theta_pair)

    @property
    def theta_other(self) -> float:
        return math.atan2(self.sin_theta_other, self.cos_theta_other)


def exceptional_case_angles(which: str, nu: float) -> list[ExceptionalAngles]:
    """Both cosine branches of the exceptional-case closed forms."""
    if which not in (CASE2, CASE3):
        raise ValueError(f"which must be {CASE2} or {CASE3}")
    if nu <= 0:
        raise ValueError("mass ratio must be positive")
    den = (1.0 + nu) * (1.0 + nu * nu)
    sin_pair = math.sqrt(nu * (1.0 + nu + nu * nu) / den)
    cos_pair = 1.0 / math.sqrt(den)
    sin_other = math.sqrt((1.0 + nu + nu * nu) / den)
    cos_other = math.sqrt(nu ** 3 / den)
    return [
        ExceptionalAngles(which, nu, sin_pair, sign * cos_pair,
                          sin_other, sign * cos_other)
        for sign in (+1.0, -1.0)
    ]


def case4_fixed_point(masses: MassTriple, tol: float = 1e-12) -> MeridianSolution | None:
    """The all-G-equal fixed point: exists only for equal masses, as the
    equilateral shape."""
    m1, m2, m3 = masses.as_tuple()
    mmax = max(m1, m2, m3)
    if abs(m1 - m2) > tol * mmax or abs(m2 - m3) > tol * mmax:
        return None
    shape = Shape(2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0)
    sol = MeridianSolution(
        shape.theta31, shape, None, 0, None, CASE4_FIXED_POINT,
        region_of(shape.theta31, shape.theta21),
    )
    return _with_residual(sol, masses, cotangent_potential(SphereRadius()), SphereRadius())


def euler_quintic_coefficients(masses: MassTriple) -> list[float]:
    """Coefficients (degree descending) of the collinear quintic that
    the reduced equation degenerates to on the flat plane."""
    m1, m2, m3 = masses.as_tuple()
    return [
        m1 + m2,
        3.0 * m1 + 2.0 * m2,
        3.0 * m1 + m2,
        -(m2 + 3.0 * m3),
        -(2.0 * m2 + 3.0 * m3),
        -(m2 + m3),
    ]


@dataclass(frozen=True)
class EulerLimitRow:
    R: float
    max_coeff_deviation: float
    root_deviation: float


@dataclass(frozen=True)
class EulerLimitReport:
    rows: list[EulerLimitRow]
    order_estimate: float
    quintic_coefficients: list[float]
    quintic_root: float


def _quintic_positive_root(coeffs: Sequence[float]) -> float:
    roots = np.roots(coeffs)
    real = [r.real for r in roots if abs(r.imag) < 1e-9 and r.real > 0]
    if not real:
        raise ValueError("quintic has no positive real root")
    return min(real)


def euler_limit_check(
    masses: MassTriple,
    r21: float,
    R_values: Sequence[float],
) -> EulerLimitReport:
    """Compare the scaled reduced equation against the flat-plane
    collinear quintic as the sphere radius grows (region II setup).

    The scaled values m3/2 * g * (R/r21)^5 at x = (1 + lambda) * a,
    a = r21/R, converge to the quintic in lambda at second order in
    r21/R. reports per-R coefficient deviation and the deviation of the
    meridian root from the quintic's positive root.
    """
    coeffs = euler_quintic_coefficients(masses)
    lam_root = _quintic_positive_root(coeffs)
    nu1, nu2 = masses.nu1, masses.nu2
    m3 = masses.m3
    lam_nodes = np.linspace(0.2, 3.0, 6)
    vander = np.vander(lam_nodes, 6)
    rows = []
    for R in R_values:
        a = r21 / R
        xs = (1.0 + lam_nodes) * a
        scaled = kernels.g_array(xs, a, nu1, nu2) * (R / r21) ** 5 * m3 / 2.0
        fitted = np.linalg.solve(vander, scaled)
        dev = float(np.max(np.abs(fitted - np.array(coeffs))))

        # locate the region-II root of g nearest the flat-space root
        lam_grid = np.geomspace(1e-3, 50.0, 4000)
        gv = kernels.g_array((1.0 + lam_grid) * a, a, nu1, nu2)
        idx = np.flatnonzero(gv[:-1] * gv[1:] < 0.0)
        if idx.size:
            i = idx[0]
            x_root = _bisect(
                lambda x: kernels.g_scalar(x, a, nu1, nu2),
                (1.0 + lam_grid[i]) * a,
                (1.0 + lam_grid[i + 1]) * a,
                gv[i],
                1e-16 * a,
            )
            root_dev = abs(x_root / a - 1.0 - lam_root)
        else:
            root_dev = math.nan
        rows.append(EulerLimitRow(R, dev, root_dev))

    logs = [(math.log(r.R), math.log(r.max_coeff_deviation)) for r in rows]
    slope = np.polyfit([p[0] for p in logs], [p[1] for p in logs], 1)[0]
    return EulerLimitReport(rows, -slope, coeffs, lam_root)
