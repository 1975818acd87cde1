import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cusp3r.errors import NonGenericWarning
from cusp3r.kinematics import CrossSectionPoint, DhParams, ik_quartic, singular_factors
from cusp3r.roots import cluster_radius
from cusp3r.singularity import (Boundary, BranchKind, classify_boundaries, find_cusps,
                                ik_count_at, map_to_workspace, singular_lines,
                                trace_singularity_curves)

FOUR_CUSP = DhParams(1, 2, 1.5, 1)
TWO_CUSP = DhParams(1, 3, 4, 3)


class TestLines:
    def test_arccos_pair(self):
        a, b = singular_lines(TWO_CUSP)
        assert a == pytest.approx(np.arccos(-0.75))
        assert b == -a

    def test_absent_when_d3_exceeds_d4(self):
        assert singular_lines(FOUR_CUSP) == ()

    def test_coincident_lines_warn(self):
        with pytest.warns(NonGenericWarning):
            assert singular_lines(DhParams(1, 2, 2, 1)) == (np.pi, np.pi)


class TestTracing:
    def test_minimum_samples(self):
        with pytest.raises(ValueError):
            trace_singularity_curves(FOUR_CUSP, 255)

    def test_branch_kinds(self):
        kinds = {b.kind for b in trace_singularity_curves(TWO_CUSP)}
        assert kinds == set(BranchKind)
        kinds = {b.kind for b in trace_singularity_curves(FOUR_CUSP)}
        assert kinds == {BranchKind.CURVE_PLUS, BranchKind.CURVE_MINUS}

    def test_zero_offset_with_long_d3_warns(self):
        with pytest.warns(NonGenericWarning):
            trace_singularity_curves(DhParams(1, 2, 1.5, 0))

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0.1, 4), st.floats(0.1, 4), st.floats(0.1, 4))
    def test_samples_are_singular(self, d3, d4, r2):
        p = DhParams(1, d3, d4, r2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonGenericWarning)
            branches = trace_singularity_curves(p, 256)
        for b in branches:
            first, second = singular_factors(p, b.theta2, b.theta3)
            factor = second if b.kind.is_curve else first
            assert np.max(np.abs(factor)) < 1e-9 * p.reach

    def test_curves_are_closed(self):
        for b in trace_singularity_curves(FOUR_CUSP):
            assert np.allclose(b.image[0], b.image[-1])

    def test_map_to_workspace(self):
        b = trace_singularity_curves(FOUR_CUSP)[0]
        assert np.allclose(map_to_workspace(b), b.image)


class TestBoundaries:
    def test_external_reaches_furthest(self):
        bs = classify_boundaries(FOUR_CUSP)
        assert bs.external[0][:, 0].max() > bs.internal[0][:, 0].max()
        # at theta2 = 0, |(3 + 1.5 c3, 1 + 1.5 s3)|^2 peaks at 12.25 + sqrt(90)
        assert bs.external[0][:, 0].max() == pytest.approx(np.sqrt(12.25 + np.sqrt(90)), rel=1e-5)

    def test_probe_pairs_differ_by_two(self):
        bs = classify_boundaries(FOUR_CUSP)
        for pairs in bs.probe_counts.values():
            assert len(pairs) == 10
            good = [a for a, b in pairs if a is not None and b is not None and abs(a - b) == 2]
            assert len(good) >= 5

    def test_isolated_points_from_lines(self):
        bs = classify_boundaries(TWO_CUSP)
        rhos = sorted(pt.rho for pt in bs.isolated_points)
        assert rhos == pytest.approx([1.0608921404235476, 5.733629554338817], rel=1e-9)

    def test_ik_count_at(self):
        assert ik_count_at(FOUR_CUSP, CrossSectionPoint(2.2, 0.0)) == 4
        assert ik_count_at(FOUR_CUSP, CrossSectionPoint(4.0, 0.0)) == 2
        assert ik_count_at(FOUR_CUSP, CrossSectionPoint(9.0, 0.0)) == 0


class TestCusps:
    @pytest.mark.parametrize("params, internal, external", [
        ((1, 2, 1.5, 1), 4, 0),
        ((1, 3, 4, 3), 2, 0),
        ((1, 3, 6, 3), 2, 2),
        ((1, 2, 0.1, 1), 0, 0),
        ((1, 0.5, 2, 1), 0, 0),
    ])
    def test_counts(self, params, internal, external):
        cusps = find_cusps(DhParams(*params))
        assert sum(c.boundary is Boundary.INTERNAL for c in cusps) == internal
        assert sum(c.boundary is Boundary.EXTERNAL for c in cusps) == external

    def test_minimum_samples(self):
        with pytest.raises(ValueError):
            find_cusps(FOUR_CUSP, 100)

    def test_mirror_symmetry(self):
        pts = np.array([(c.location.rho, c.location.z) for c in find_cusps(FOUR_CUSP)])
        for r, z in pts:
            assert np.min(np.hypot(pts[:, 0] - r, pts[:, 1] + z)) < 1e-9

    def test_triple_root_at_each_cusp(self):
        for c in find_cusps(TWO_CUSP):
            q = ik_quartic(TWO_CUSP, c.location, shift=c.theta3)
            assert cluster_radius(q.coeffs, 0.0, 3) < 1e-4

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.2, 4), st.floats(0.2, 4), st.floats(0.2, 4))
    def test_count_is_even(self, d3, d4, r2):
        assume(abs(d3 - d4) > 1e-3)
        try:
            cusps = find_cusps(DhParams(1, d3, d4, r2), 1024)
        except Exception:
            assume(False)
        assert len(cusps) % 2 == 0
