import math

import numpy as np
import pytest

from sphere3body import kernels
from sphere3body import meridian as mer
from sphere3body.dynamics import MassTriple, configuration_residuals
from sphere3body.geometry import SphereRadius
from sphere3body.potential import cotangent_potential, repulsive

R1 = SphereRadius(1.0)
POT = cotangent_potential(R1)
M321 = MassTriple(3.0, 2.0, 1.0)


class TestRegions:
    def test_region_of(self):
        a = 0.5
        assert mer.region_of(0.2, a) == "I"
        assert mer.region_of(2.0, a) == "II"
        assert mer.region_of(3.3, a) == "III"
        assert mer.region_of(5.0, a) == "IV"

    def test_region_signs(self):
        # alpha = sign(sin x), beta = sign(sin(x - a))
        a = 0.5
        for region, x in [("I", 0.2), ("II", 2.0), ("III", 3.3), ("IV", 5.0)]:
            p = mer.gfunction_params(a, 1.0, 1.0, region)
            assert p.alpha_sign == (1 if math.sin(x) >= 0 else -1)
            assert p.beta_sign == (1 if math.sin(x - a) >= 0 else -1)


class TestShape:
    def test_validate_rejects_singular(self):
        with pytest.raises(ValueError):
            mer.Shape(0.5, 0.5).validate()
        with pytest.raises(ValueError):
            mer.Shape(0.5, math.pi).validate()
        with pytest.raises(ValueError):
            mer.Shape(-0.1, 1.0).validate()

    def test_theta32(self):
        s = mer.Shape(0.5, 2.0)
        assert s.theta32 == pytest.approx(1.5)


class TestGFunction:
    # exact sample values for a = pi/6, nu1 = 3, nu2 = 2
    EXACT = [
        (math.pi / 6, -3.0 * math.sqrt(3.0) / 32.0),
        (math.pi / 2, 5.0 * math.sqrt(3.0) / 16.0),
        (math.pi, -math.sqrt(3.0) / 8.0),
        (7.0 * math.pi / 6.0, 3.0 * math.sqrt(3.0) / 32.0),
        (7.0 * math.pi / 4.0, -5.0 * (5.0 + math.sqrt(3.0)) / 32.0),
        (2.0 * math.pi, math.sqrt(3.0) / 8.0),
    ]

    @pytest.mark.parametrize("x,expected", EXACT)
    def test_exact_values(self, x, expected):
        assert kernels.g_scalar(x, math.pi / 6, 3.0, 2.0) == pytest.approx(
            expected, abs=1e-12
        )

    def test_g_function_matches_kernel(self):
        a, nu1, nu2 = 0.7, 2.5, 0.8
        for x in np.linspace(0.01, 2 * math.pi - 0.01, 57):
            region = mer.region_of(x, a)
            p = mer.gfunction_params(a, nu1, nu2, region)
            assert mer.g_function(x, p) == pytest.approx(
                kernels.g_scalar(x, a, nu1, nu2), rel=1e-13, abs=1e-13
            )

    def test_continuous_across_boundaries(self):
        a, nu1, nu2 = 0.9, 1.7, 3.1
        eps = 1e-9
        for b in (a, math.pi, math.pi + a):
            lo = kernels.g_scalar(b - eps, a, nu1, nu2)
            hi = kernels.g_scalar(b + eps, a, nu1, nu2)
            assert lo == pytest.approx(hi, abs=1e-6)

    def test_boundary_value_closed_form(self):
        # g(0) = -2*beta*(nu1+1)*cos(a)*sin^5(a) with region-I beta = -1
        a, nu1, nu2 = 0.8, 2.0, 5.0
        expected = 2.0 * (nu1 + 1.0) * math.cos(a) * math.sin(a) ** 5
        assert kernels.g_scalar(1e-12, a, nu1, nu2) == pytest.approx(
            expected, rel=1e-3
        )


class TestTranslation:
    def test_lift_reproduces_shape(self):
        shape = mer.Shape(0.6, 2.2)
        tr = mer.shape_to_configurations(M321, shape, 1)
        t1, t2, t3 = tr.thetas
        assert t2 - t1 == pytest.approx(shape.theta21)
        assert t3 - t1 == pytest.approx(shape.theta31)

    def test_branch_flip_is_quarter_turn(self):
        shape = mer.Shape(0.6, 2.2)
        plus = mer.shape_to_configurations(M321, shape, 1)
        minus = mer.shape_to_configurations(M321, shape, -1)
        d = (minus.thetas[0] - plus.thetas[0]) / (math.pi / 2.0)
        assert abs(d - round(d)) < 1e-10
        assert round(d) % 2 == 1  # odd multiple of pi/2

    def test_amplitude_zero_raises(self):
        m = MassTriple(1.0, 1.0, 1.0)
        shape = mer.Shape(2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0)
        assert mer.amplitude_A(m, shape) < 1e-12
        with pytest.raises(mer.AZeroFixedPoint):
            mer.shape_to_configurations(m, shape, 1)

    def test_antipodal_lift(self):
        shape = mer.Shape(0.6, 2.2)
        tr = mer.shape_to_configurations(M321, shape, 1)
        for t, ta in zip(tr.thetas, tr.thetas_alt):
            assert ta - t == pytest.approx(math.pi)


class TestCases:
    def test_generic_shape_is_case1(self):
        pq = mer.pair_quantities(M321, mer.Shape(0.6, 2.2))
        assert mer.classify_case(pq, M321) == mer.CASE1

    def test_equal_mass_equilateral_is_case4(self):
        m = MassTriple(1.0, 1.0, 1.0)
        pq = mer.pair_quantities(m, mer.Shape(2 * math.pi / 3, 4 * math.pi / 3))
        assert mer.classify_case(pq, m) == mer.CASE4_FIXED_POINT

    def test_inconsistent_shape_rejected(self):
        # an arbitrary shape does not satisfy both ratio equations
        pq = mer.pair_quantities(M321, mer.Shape(1.0, 2.0))
        A = mer.amplitude_A(M321, mer.Shape(1.0, 2.0))
        with pytest.raises(mer.NotARotatorError):
            mer.solve_omega_and_branch(pq, M321, A)


class TestSolver:
    def test_six_solutions_at_pi_over_6(self):
        sols = mer.find_meridian_rotators(math.pi / 6, M321)
        assert len(sols) == 6
        by_region = {r: 0 for r in mer.REGIONS}
        for s in sols:
            by_region[s.region] += 1
        assert by_region == {"I": 1, "II": 2, "III": 1, "IV": 2}

    def test_two_solutions_at_pi_over_4(self):
        sols = mer.find_meridian_rotators(math.pi / 4, M321)
        assert len(sols) == 2
        assert {s.region for s in sols} == {"I", "III"}

    def test_solutions_satisfy_raw_equations(self):
        for sols in (
            mer.find_meridian_rotators(math.pi / 6, M321),
            mer.find_meridian_rotators(math.pi / 4, M321),
        ):
            for s in sols:
                assert s.residual_max < 1e-9
                assert s.omega_squared is not None and s.omega_squared > 0

    def test_alternate_lift_also_solves(self):
        for s in mer.find_meridian_rotators(math.pi / 4, M321):
            omega = math.sqrt(s.omega_squared)
            res = configuration_residuals(
                s.translation.thetas_alt, (0.0, 0.0, 0.0), omega, M321, POT, R1
            )
            assert np.max(np.abs(res)) < 1e-9

    def test_equal_nu_pi_over_2(self):
        # nu1 = nu2: isosceles roots at x = a/2 and x = a/2 + pi
        m = MassTriple(1.0, 1.0, 2.0)
        sols = mer.find_meridian_rotators(math.pi / 2, m)
        xs = sorted(s.x for s in sols)
        assert xs[0] == pytest.approx(math.pi / 4, abs=1e-9)
        assert xs[1] == pytest.approx(math.pi / 4 + math.pi, abs=1e-9)

    def test_rejects_bad_a(self):
        with pytest.raises(ValueError):
            mer.find_meridian_rotators(0.0, M321)
        with pytest.raises(ValueError):
            mer.find_meridian_rotators(math.pi, M321)

    def test_repulsive_potential_flips_branch(self):
        att = mer.find_meridian_rotators(math.pi / 4, M321)
        rep = mer.find_meridian_rotators(math.pi / 4, M321, pot=repulsive(POT))
        assert len(att) == len(rep) == 2
        for sa, sr in zip(att, rep):
            assert sa.x == pytest.approx(sr.x, abs=1e-10)
            assert sa.omega_squared == pytest.approx(sr.omega_squared, rel=1e-9)
            assert sr.s == -sa.s

    def test_larger_radius_scales_omega(self):
        # omega^2 ~ 1/R^3 at fixed shape angles
        R2 = SphereRadius(2.0)
        pot2 = cotangent_potential(R2)
        s1 = mer.find_meridian_rotators(math.pi / 4, M321)
        s2 = mer.find_meridian_rotators(math.pi / 4, M321, pot=pot2, R=R2)
        for a_, b_ in zip(s1, s2):
            assert b_.omega_squared == pytest.approx(a_.omega_squared / 8.0, rel=1e-9)


class TestCounting:
    @pytest.mark.parametrize(
        "diff,expected",
        [(-5.0, (1, 0, 1, 2)), (-4.0, (1, 0, 1, 1)), (0.0, (1, 0, 1, 0)),
         (4.0, (1, 1, 1, 0)), (5.0, (1, 2, 1, 0))],
    )
    def test_count_pi_over_2_closed_form(self, diff, expected):
        assert mer.count_pi_over_2(diff).as_tuple() == expected

    @pytest.mark.parametrize("diff", [-5.0, -4.0, 0.0, 4.0, 5.0])
    def test_scan_agrees_with_closed_form(self, diff):
        nu2 = 6.0
        nu1 = nu2 + diff
        scan = mer.count_rotators_scan(math.pi / 2, nu1, nu2)
        assert scan.as_tuple() == mer.count_pi_over_2(diff).as_tuple()

    def test_grid_counter_matches_scan(self):
        a = math.pi / 6
        nu1s = [1.0, 3.0, 6.0]
        nu2s = [2.0, 5.0]
        grid = mer.count_rotators_grid(a, nu1s, nu2s)
        for i, n1 in enumerate(nu1s):
            for j, n2 in enumerate(nu2s):
                assert grid[i, j] == mer.count_rotators_scan(a, n1, n2).total


class TestSpecialFamilies:
    def test_equilateral_unequal_masses(self):
        sol = mer.equilateral_rotator(M321)
        assert sol.s == -1
        A = mer.amplitude_A(M321, sol.shape)
        uprime = POT.u_prime(3.0)
        assert sol.omega_squared == pytest.approx(-4.0 * A * uprime, rel=1e-13)
        assert sol.residual_max < 1e-10

    def test_equilateral_equal_masses_fixed_point(self):
        sol = mer.equilateral_rotator(MassTriple(1.0, 1.0, 1.0))
        assert sol.is_fixed_point
        assert sol.case_tag == mer.A_ZERO_FIXED_POINT
        assert sol.residual_max < 1e-12

    def test_isosceles_special_angle_omega(self):
        # R^3 omega^2 = (16 A / 7) sqrt((13 + 16 sqrt(2)) / 7), s = +1
        rng = np.random.default_rng(42)
        for _ in range(5):
            m = MassTriple(*rng.uniform(0.5, 5.0, size=3))
            sols = mer.isosceles_rotators(m, "special")
            small = [s for s in sols if s.x == pytest.approx(
                math.acos(mer.SPECIAL_ISOSCELES_COS_A) / 2.0, abs=1e-9)]
            assert len(small) == 1
            sol = small[0]
            A = mer.amplitude_A(m, sol.shape)
            expected = (16.0 * A / 7.0) * math.sqrt((13.0 + 16.0 * math.sqrt(2.0)) / 7.0)
            assert sol.s == 1
            assert sol.omega_squared == pytest.approx(expected, rel=1e-10)

    def test_isosceles_equal_nu_any_angle(self):
        m = MassTriple(2.0, 2.0, 1.0)
        sols = mer.isosceles_rotators(m, 1.1)
        xs = sorted(s.x for s in sols)
        assert xs[0] == pytest.approx(0.55, abs=1e-12)
        assert xs[1] == pytest.approx(0.55 + math.pi, abs=1e-12)
        for s in sols:
            assert s.residual_max < 1e-10

    def test_exceptional_angles_satisfy_equalities(self):
        for nu in (0.1, 0.5, 1.0, 2.0, 10.0):
            for row in mer.exceptional_case_angles(mer.CASE2, nu):
                m = MassTriple(nu, 1.7, 1.0)
                th1, th2 = 0.0, -row.theta_pair
                th3 = th2 - row.theta_other
                G12 = m.m1 * m.m2 * math.sin(2 * (th2 - th1))
                G23 = m.m2 * m.m3 * math.sin(2 * (th3 - th2))
                F12 = m.m1 * m.m2 * math.sin(th2 - th1) / abs(math.sin(th2 - th1)) ** 3
                F23 = m.m2 * m.m3 * math.sin(th3 - th2) / abs(math.sin(th3 - th2)) ** 3
                scale = m.m1 * m.m2 + m.m2 * m.m3
                assert abs(G12 - G23) < 1e-12 * scale
                assert abs(F12 - F23) < 1e-10 * max(abs(F12), 1.0)
            for row in mer.exceptional_case_angles(mer.CASE3, nu):
                m = MassTriple(1.3, nu, 1.0)
                th1, th2 = 0.0, -row.theta_pair
                th3 = th1 + row.theta_other
                G12 = m.m1 * m.m2 * math.sin(2 * (th2 - th1))
                G31 = m.m3 * m.m1 * math.sin(2 * (th1 - th3))
                F12 = m.m1 * m.m2 * math.sin(th2 - th1) / abs(math.sin(th2 - th1)) ** 3
                F31 = m.m3 * m.m1 * math.sin(th1 - th3) / abs(math.sin(th1 - th3)) ** 3
                scale = m.m1 * m.m2 + m.m3 * m.m1
                assert abs(G12 - G31) < 1e-12 * scale
                assert abs(F12 - F31) < 1e-10 * max(abs(F12), 1.0)

    def test_case4_only_for_equal_masses(self):
        assert mer.case4_fixed_point(M321) is None
        sol = mer.case4_fixed_point(MassTriple(2.0, 2.0, 2.0))
        assert sol is not None
        assert sol.is_fixed_point
        assert sol.residual_max < 1e-12


class TestEulerLimit:
    def test_quintic_coefficients(self):
        assert mer.euler_quintic_coefficients(M321) == [5, 13, 11, -5, -7, -3]

    def test_equal_mass_root_is_one(self):
        m = MassTriple(1.0, 1.0, 1.0)
        assert mer._quintic_positive_root(mer.euler_quintic_coefficients(m)) == (
            pytest.approx(1.0, abs=1e-12)
        )

    def test_convergence_order_two(self):
        report = mer.euler_limit_check(M321, 1.0, [100.0, 1000.0, 10000.0])
        assert report.order_estimate == pytest.approx(2.0, abs=0.2)
        devs = [r.max_coeff_deviation for r in report.rows]
        assert devs[0] > devs[1] > devs[2]

    def test_root_converges(self):
        report = mer.euler_limit_check(M321, 1.0, [100.0, 1000.0, 10000.0])
        devs = [r.root_deviation for r in report.rows]
        assert devs[0] > devs[1] > devs[2]
        assert devs[-1] < 1e-6

    def test_equal_mass_root_deviation_tiny(self):
        m = MassTriple(1.0, 1.0, 1.0)
        report = mer.euler_limit_check(m, 1.0, [1000.0, 10000.0])
        assert all(r.root_deviation < 1e-4 for r in report.rows)
