import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cusp3r.kinematics import (CartesianPoint, CrossSectionPoint, DhParams, JointConfig,
                               cross_section, det_jacobian_analytic,
                               det_jacobian_numeric, forward_kinematics, ik_quartic,
                               ik_residual, quartic_coefficients, singular_factors,
                               solve_ik, wrap_angle)

lengths = st.floats(0.1, 4.0)
angles = st.floats(-np.pi, np.pi)
designs = st.builds(lambda d3, d4, r2: DhParams(1.0, d3, d4, r2), lengths, lengths, lengths)
configs = st.builds(JointConfig, angles, angles, angles)


class TestParams:
    @pytest.mark.parametrize("bad", [(0, 1, 1, 1), (1, -1, 1, 1), (1, 1, np.inf, 1),
                                     (1, 1, 1, -0.5), (1, 1, 1, np.nan)])
    def test_rejects_invalid_lengths(self, bad):
        with pytest.raises(ValueError):
            DhParams(*bad)

    def test_zero_offset_allowed(self):
        assert DhParams(1, 2, 3, 0).r2 == 0

    def test_normalized(self):
        p = DhParams(2, 4, 3, 2).normalized()
        assert p.astuple() == (1, 2, 1.5, 1)

    def test_reach(self):
        assert DhParams(1, 2, 1.5, 1).reach == 5.5


class TestJointConfig:
    def test_wraps_to_half_open_interval(self):
        q = JointConfig(np.pi, -np.pi, 3 * np.pi)
        assert q.theta1 == pytest.approx(-np.pi)
        assert q.theta2 == pytest.approx(-np.pi)
        assert q.theta3 == pytest.approx(-np.pi)

    def test_torus_distance(self):
        a = JointConfig(np.pi - 1e-3, 0, 0)
        b = JointConfig(-np.pi + 1e-3, 0, 0)
        assert a.distance(b) == pytest.approx(2e-3)
        assert a.isclose(b, 3e-3)

    def test_wrap_angle_vectorised(self):
        out = wrap_angle(np.array([0.0, 2 * np.pi, -3 * np.pi, 7.0]))
        assert np.all((out >= -np.pi) & (out < np.pi))


class TestForward:
    def test_home_configuration(self):
        p = DhParams(1, 2, 1.5, 1)
        pt = forward_kinematics(p, JointConfig(0, 0, 0))
        assert (pt.x, pt.y, pt.z) == pytest.approx((4.5, 1.0, 0.0))

    def test_elbow_up(self):
        p = DhParams(1, 2, 1.5, 1)
        pt = forward_kinematics(p, JointConfig(0, -np.pi / 2, 0))
        # link 2 and 3 point along +z, offset stays along y
        assert (pt.x, pt.y, pt.z) == pytest.approx((1.0, 1.0, 3.5))

    def test_cross_section_matches(self):
        p = DhParams(1, 2, 1.5, 1)
        q = JointConfig(0.7, -0.4, 2.1)
        pt = forward_kinematics(p, q)
        rho, z = cross_section(p, q.theta2, q.theta3)
        assert rho == pytest.approx(np.hypot(pt.x, pt.y))
        assert z == pytest.approx(pt.z)

    def test_cross_section_point_roundtrip(self):
        c = CrossSectionPoint(2.0, -1.0)
        back = CrossSectionPoint.from_cartesian(c.to_cartesian(1.3))
        assert (back.rho, back.z) == pytest.approx((2.0, -1.0))


class TestDeterminant:
    def test_known_value(self):
        p = DhParams(1, 2, 1.5, 1)
        q = JointConfig(0, 0, np.pi / 2)
        # (d3 + 0) * (d2 + d3) = 2 * 3, times d4
        assert det_jacobian_analytic(p, q) == pytest.approx(6.0)
        assert det_jacobian_numeric(p, q) == pytest.approx(9.0, rel=1e-8)

    def test_factors_vanish_on_lines(self):
        p = DhParams(1, 3, 4, 3)
        first, _ = singular_factors(p, 0.3, np.arccos(-0.75))
        assert abs(first) < 1e-12

    @settings(max_examples=100, deadline=None)
    @given(designs, configs)
    def test_numeric_is_d4_times_analytic(self, p, q):
        analytic = det_jacobian_analytic(p, q)
        assume(abs(analytic) > 1e-2)
        assert det_jacobian_numeric(p, q) / analytic == pytest.approx(p.d4, rel=1e-6)

    @settings(max_examples=50, deadline=None)
    @given(designs, configs, angles)
    def test_independent_of_theta1(self, p, q, t1):
        moved = JointConfig(t1, q.theta2, q.theta3)
        a, b = det_jacobian_numeric(p, q), det_jacobian_numeric(p, moved)
        assert a == pytest.approx(b, rel=1e-6, abs=1e-7)


class TestQuartic:
    def test_coefficients_vanish_at_solutions(self):
        p = DhParams(1, 2, 1.5, 1)
        q = JointConfig(0.3, 1.1, -0.8)
        rho, z = cross_section(p, q.theta2, q.theta3)
        c = quartic_coefficients(p, rho ** 2, z)
        t = np.tan(q.theta3 / 2)
        assert abs(np.polyval(c, t)) < 1e-10 * np.abs(c).max()

    def test_shift_moves_variable(self):
        p = DhParams(1, 2, 1.5, 1)
        q = JointConfig(0, 0.5, 2.0)
        rho, z = cross_section(p, q.theta2, q.theta3)
        quartic = ik_quartic(p, CrossSectionPoint(rho, z), shift=2.0)
        # theta3 = shift is the root t = 0
        assert abs(quartic.coeffs[-1]) < 1e-12 * np.abs(quartic.coeffs).max()

    def test_degenerate_leading_coefficient(self):
        p = DhParams(1, 2, 1.5, 1)
        q = JointConfig(0, 0.5, np.pi)
        rho, z = cross_section(p, q.theta2, q.theta3)
        quartic = ik_quartic(p, CrossSectionPoint(rho, z))
        assert quartic.degenerate
        assert quartic.solution_count() == len(solve_ik(p, forward_kinematics(p, q)))

    def test_residual_derivatives(self):
        p = DhParams(1, 2, 1.5, 1)
        h = 1e-5
        f, df, ddf = ik_residual(p, 4.0, 0.5, 0.7)
        fp, dfp, _ = ik_residual(p, 4.0, 0.5, 0.7 + h)
        fm, dfm, _ = ik_residual(p, 4.0, 0.5, 0.7 - h)
        assert df == pytest.approx((fp - fm) / (2 * h), rel=1e-7)
        assert ddf == pytest.approx((dfp - dfm) / (2 * h), rel=1e-6)

    def test_negative_rho_rejected(self):
        with pytest.raises(ValueError):
            ik_quartic(DhParams(1, 2, 1.5, 1), CrossSectionPoint(-1.0, 0.0))


class TestInverse:
    @settings(max_examples=300, deadline=None)
    @given(designs, configs)
    def test_roundtrip(self, p, q):
        target = forward_kinematics(p, q)
        res = solve_ik(p, target)
        g, _ = singular_factors(p, q.theta2, q.theta3)
        # near a singular line theta2 is recovered through a division by g,
        # and merged double roots are not polished
        conditioned = abs(g) > 1e-3 * p.reach and not res.double_root
        tol = 1e-8 if conditioned else 1e-5
        for s in res:
            err = forward_kinematics(p, s).as_array() - target.as_array()
            assert np.linalg.norm(err) < tol * p.reach
        if conditioned:
            assert min(q.distance(s) for s in res) < 1e-8

    @settings(max_examples=200, deadline=None)
    @given(designs, configs)
    def test_solution_count_is_two_or_four(self, p, q):
        res = solve_ik(p, forward_kinematics(p, q))
        assume(not res.double_root and not res.near_singular)
        assert len(res) in (2, 4)

    def test_unreachable(self):
        p = DhParams(1, 2, 1.5, 1)
        assert len(solve_ik(p, CartesianPoint(50.0, 0.0, 0.0))) == 0

    def test_four_solutions_inside_the_internal_boundary(self):
        p = DhParams(1, 2, 1.5, 1)
        assert len(solve_ik(p, CartesianPoint(2.2, 0.0, 0.0))) == 4

    def test_isolated_point_flags_singularity(self):
        p = DhParams(1, 3, 4, 3)
        res = solve_ik(p, CartesianPoint(5.733629554338817, 0.0, 0.0))
        assert res.near_singular

    @settings(max_examples=50, deadline=None)
    @given(designs, configs, st.floats(0.2, 5.0))
    def test_scale_homogeneity(self, p, q, lam):
        a = forward_kinematics(p, q).as_array()
        big = p.scaled(lam)
        b = forward_kinematics(big, q).as_array()
        assert np.allclose(b, lam * a, rtol=1e-12, atol=1e-12)
        assert len(solve_ik(big, CartesianPoint(*b))) == len(solve_ik(p, CartesianPoint(*a)))
