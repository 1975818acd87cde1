"""Singularity curves, workspace boundaries and cusps.

The second factor of the Jacobian determinant can be written
``s3 (d2 + c2 d3) - c3 (c2 r2)``, so for every theta2 the singular theta3
values are the two directions of the vector ``(d2 + c2 d3, c2 r2)``.  That
vector moves on a segment that never passes through the origin when
``r2 > 0``, which makes each of the two singularity curves a smooth closed
graph over theta2.  Tracing is therefore exact pointwise; no contouring is
needed.
"""

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import (AmbiguousLabelError, BoundaryProximityError,
                     CertificationError, NonGenericError, NonGenericWarning)
from .kinematics import (CrossSectionPoint, _well_conditioned_shift,
                         cross_section, ik_quartic, wrap_angle)
from .roots import cluster_radius


class BranchKind(enum.Enum):
    CURVE_PLUS = "curve+"
    CURVE_MINUS = "curve-"
    LINE_PLUS = "line+"
    LINE_MINUS = "line-"

    @property
    def is_curve(self):
        return self in (BranchKind.CURVE_PLUS, BranchKind.CURVE_MINUS)


class Boundary(enum.Enum):
    INTERNAL = "internal"
    EXTERNAL = "external"


_CURVE_SIGN = {BranchKind.CURVE_PLUS: 1.0, BranchKind.CURVE_MINUS: -1.0}


@dataclass
class SingularBranch:
    """One joint-space singular component and its cross-section image.

    Curve branches are sampled over a full theta2 period, so the polyline is
    closed (last sample repeats the first one shifted by 2 pi in theta2).
    """

    kind: BranchKind
    params: object
    theta2: np.ndarray
    theta3: np.ndarray
    rho: np.ndarray = field(repr=False)
    z: np.ndarray = field(repr=False)

    @property
    def samples(self):
        return np.column_stack([self.theta2, self.theta3])

    @property
    def image(self):
        return np.column_stack([self.rho, self.z])


@dataclass(frozen=True)
class CuspPoint:
    location: CrossSectionPoint
    theta2: float
    theta3: float
    boundary: Boundary
    kind: BranchKind


@dataclass
class WorkspaceBoundarySet:
    internal: list
    external: list
    isolated_points: list
    internal_kind: BranchKind
    external_kind: BranchKind
    probe_counts: dict = field(default_factory=dict)


def singular_lines(params):
    """theta3 values of the singular lines ``d3 + c3 d4 = 0``.

    Empty when d3 > d4.  At d3 = d4 both lines collapse onto theta3 = pi and
    a :class:`NonGenericWarning` is issued.
    """
    ratio = params.d3 / params.d4
    if ratio > 1.0:
        return ()
    if abs(ratio - 1.0) <= 1e-12:
        warnings.warn("d3 == d4: the two singular lines coincide at theta3 = pi",
                      NonGenericWarning, stacklevel=2)
        return (np.pi, np.pi)
    a = float(np.arccos(-ratio))
    return (a, -a)


def _curve_theta3(params, theta2, sign):
    c2 = np.cos(theta2)
    return np.arctan2(sign * c2 * params.r2, sign * (params.d2 + c2 * params.d3))


def trace_singularity_curves(params, n_samples=1024):
    """Sample both singularity curves and, when they exist, both singular lines."""
    if n_samples < 256:
        raise ValueError("n_samples must be at least 256")
    if params.r2 <= 1e-9 * params.reach and params.d3 >= params.d2:
        warnings.warn("r2 = 0 with d3 >= d2: the singularity curves intersect",
                      NonGenericWarning, stacklevel=2)
    theta2 = np.linspace(-np.pi, np.pi, n_samples + 1)
    branches = []
    for kind, sign in _CURVE_SIGN.items():
        theta3 = _curve_theta3(params, theta2, sign)
        rho, z = cross_section(params, theta2, theta3)
        branches.append(SingularBranch(kind, params, theta2, theta3, rho, z))
    lines = singular_lines(params)
    for kind, angle in zip((BranchKind.LINE_PLUS, BranchKind.LINE_MINUS), lines):
        theta3 = np.full_like(theta2, angle)
        rho, z = cross_section(params, theta2, theta3)
        branches.append(SingularBranch(kind, params, theta2, theta3, rho, z))
    return branches


def map_to_workspace(branch):
    """``(N, 2)`` array of (rho, z) for the branch samples."""
    rho, z = cross_section(branch.params, branch.theta2, branch.theta3)
    return np.column_stack([rho, z])


def _external_kind(branches):
    curves = [b for b in branches if b.kind.is_curve]
    return max(curves, key=lambda b: b.rho.max()).kind


def ik_count_at(params, point, tol_cluster=1e-6):
    """Number of IK solutions at a cross-section point.

    Raises :class:`BoundaryProximityError` when two solutions merge within the
    cluster tolerance, i.e. the point is (numerically) on a boundary.
    """
    shift = _well_conditioned_shift(params, point.rho ** 2, point.z)
    quartic = ik_quartic(params, point, shift=shift)
    clusters = quartic.real_roots(tol_cluster)
    if any(cl.multiplicity > 1 for cl in clusters):
        raise BoundaryProximityError(f"{point} lies on a workspace boundary")
    return len(clusters)


def classify_boundaries(params, branches=None, n_probes=10, probe_offset=1e-3,
                        strict=True):
    """Split the curve images into the internal and external boundary.

    The external boundary is the curve whose image reaches the largest rho.
    Each curve is also probed on both sides at ``n_probes`` points, with an
    offset of ``probe_offset`` times the workspace diameter; the side counts
    are recorded in ``probe_counts``.  A probe pair is consistent when the
    counts differ by exactly 2; if fewer than half the pairs on a curve are
    consistent, :class:`AmbiguousLabelError` is raised, unless ``strict`` is
    off.
    """
    if branches is None:
        branches = trace_singularity_curves(params)
    curves = [b for b in branches if b.kind.is_curve]
    ext_kind = _external_kind(branches)
    int_kind = next(b.kind for b in curves if b.kind is not ext_kind)

    all_pts = np.vstack([b.image for b in curves])
    diameter = float(np.max(np.ptp(all_pts, axis=0)))
    delta = probe_offset * diameter

    probe_counts = {}
    for b in curves:
        pts = b.image
        seg = np.hypot(*np.diff(pts, axis=0).T)
        arclen = np.concatenate([[0.0], np.cumsum(seg)])
        targets = (np.arange(n_probes) + 0.5) / n_probes * arclen[-1]
        idx = np.clip(np.searchsorted(arclen, targets), 1, len(pts) - 2)
        pairs = []
        for i in idx:
            tangent = pts[i + 1] - pts[i - 1]
            norm = np.hypot(*tangent)
            if norm == 0.0:
                continue
            normal = np.array([-tangent[1], tangent[0]]) / norm
            counts = []
            for side in (-1.0, 1.0):
                rho, z = pts[i] + side * delta * normal
                if rho < 0:
                    counts.append(None)
                    continue
                try:
                    counts.append(ik_count_at(params, CrossSectionPoint(rho, z)))
                except BoundaryProximityError:
                    counts.append(None)
            pairs.append(tuple(counts))
        probe_counts[b.kind] = pairs
        good = sum(1 for a, c in pairs
                   if a is not None and c is not None and abs(a - c) == 2)
        if strict and good < 0.5 * n_probes:
            raise AmbiguousLabelError(
                f"inconsistent side counts along {b.kind.value}: {pairs}")

    lines = [b for b in branches if not b.kind.is_curve]
    isolated = [CrossSectionPoint(float(b.rho[0]), float(b.z[0])) for b in lines]
    return WorkspaceBoundarySet(
        internal=[b.image for b in curves if b.kind is int_kind],
        external=[b.image for b in curves if b.kind is ext_kind],
        isolated_points=isolated,
        internal_kind=int_kind,
        external_kind=ext_kind,
        probe_counts=probe_counts,
    )


def image_velocity(params, theta2, sign):
    """d(rho, z)/d(theta2) along a singularity curve, plus a signed speed.

    On the singular set the image velocity is parallel to the non-vanishing
    field ``n = (-s2 u / rho, -c2)``; the signed speed is the velocity
    component along ``n`` and changes sign exactly at cusps.
    """
    d2, d3, d4, r2 = params.astuple()
    theta3 = _curve_theta3(params, theta2, sign)
    c2, s2 = np.cos(theta2), np.sin(theta2)
    c3, s3 = np.cos(theta3), np.sin(theta3)
    X = d2 + c2 * d3
    Y = c2 * r2
    dtheta3 = -s2 * r2 * d2 / (X * X + Y * Y)
    g = d3 + c3 * d4
    v = s3 * d4 + r2
    u = c2 * g + d2
    dg = -s3 * d4 * dtheta3
    du = -s2 * g + c2 * dg
    dv = c3 * d4 * dtheta3
    dz = -c2 * g - s2 * dg
    rho = np.hypot(u, v)
    drho = (u * du + v * dv) / rho
    nx, nz = -s2 * u / rho, -c2
    speed = (drho * nx + dz * nz) / np.hypot(nx, nz)
    return drho, dz, speed


def find_cusps(params, n_samples=2048, cert_tol=1e-4):
    """Cusps of the workspace boundary.

    Candidates are sign changes of the signed image speed along each
    singularity curve, refined with Brent's method.  Every candidate must
    have a vanishing image velocity and a triple root of the IK quartic at
    its image point; otherwise :class:`CertificationError` is raised.  A
    quadruple root means a transition manipulator and raises
    :class:`NonGenericError`.
    """
    if n_samples < 256:
        raise ValueError("n_samples must be at least 256")
    scale = params.reach
    branches = trace_singularity_curves(params, 256)
    ext_kind = _external_kind(branches)
    # offset the grid so that symmetric cusps at theta2 = 0, pi fall inside cells
    theta2 = np.linspace(-np.pi, np.pi, n_samples + 1) + np.pi / (3 * n_samples)

    cusps = []
    for kind, sign in _CURVE_SIGN.items():
        _, _, speed = image_velocity(params, theta2, sign)
        flips = np.nonzero(np.sign(speed[:-1]) * np.sign(speed[1:]) < 0)[0]
        for i in flips:
            t2 = brentq(lambda t: float(image_velocity(params, t, sign)[2]),
                        theta2[i], theta2[i + 1], xtol=1e-15, rtol=1e-15)
            drho, dz, _ = image_velocity(params, t2, sign)
            t3 = float(_curve_theta3(params, t2, sign))
            rho, z = cross_section(params, t2, t3)
            point = CrossSectionPoint(float(rho), float(z))
            if np.hypot(drho, dz) > 1e-9 * scale:
                raise CertificationError(
                    f"speed flips at theta2={t2:.6g} without vanishing velocity")
            quartic = ik_quartic(params, point, shift=t3)
            if cluster_radius(quartic.coeffs, 0.0, 4) <= cert_tol:
                raise NonGenericError(
                    "quadruple IK root: transition manipulator",
                    {"theta2": t2, "theta3": t3, "location": point})
            if cluster_radius(quartic.coeffs, 0.0, 3) > cert_tol:
                raise CertificationError(
                    f"no triple IK root at velocity zero theta2={t2:.6g}")
            boundary = Boundary.EXTERNAL if kind is ext_kind else Boundary.INTERNAL
            cusps.append(CuspPoint(point, float(wrap_angle(t2)), t3, boundary, kind))

    unique = []
    for c in cusps:
        if not any(c.kind is o.kind and abs(wrap_angle(c.theta2 - o.theta2)) < 1e-9
                   for o in unique):
            unique.append(c)
    return unique
