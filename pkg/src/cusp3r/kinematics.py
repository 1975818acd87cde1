"""Kinematics of the orthogonal 3R family.

The chain uses modified DH frames: joint 1 vertical; joint 2 at distance d2
and offset r2 with twist -90 deg; joint 3 at distance d3 with twist +90 deg
and no offset; the operation point lies at d4 along the x-axis of frame 3.
Writing ``g = d3 + c3 d4``, ``v = s3 d4 + r2`` and ``u = c2 g + d2``::

    x = c1 u - s1 v
    y = s1 u + c1 v
    z = -s2 g

so the half cross-section coordinates are ``rho**2 = u**2 + v**2`` and ``z``.
"""

from dataclasses import dataclass, field

import numpy as np

from .roots import quartic_real_roots

TWO_PI = 2.0 * np.pi


def wrap_angle(a):
    """Wrap to [-pi, pi)."""
    return (np.asarray(a) + np.pi) % TWO_PI - np.pi


@dataclass(frozen=True)
class DhParams:
    d2: float
    d3: float
    d4: float
    r2: float

    def __post_init__(self):
        for name in ("d2", "d3", "d4"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive length, got {v!r}")
        if not (np.isfinite(self.r2) and self.r2 >= 0):
            raise ValueError(f"r2 must be non-negative, got {self.r2!r}")

    def normalized(self):
        """Same manipulator scaled so that d2 = 1."""
        return self.scaled(1.0 / self.d2)

    def scaled(self, factor):
        return DhParams(self.d2 * factor, self.d3 * factor,
                        self.d4 * factor, self.r2 * factor)

    @property
    def reach(self):
        """Upper bound on the distance from the base axis origin to the tip."""
        return self.d2 + self.d3 + self.d4 + self.r2

    def astuple(self):
        return (self.d2, self.d3, self.d4, self.r2)


@dataclass(frozen=True)
class JointConfig:
    theta1: float
    theta2: float
    theta3: float

    def __post_init__(self):
        for name in ("theta1", "theta2", "theta3"):
            object.__setattr__(self, name, float(wrap_angle(getattr(self, name))))

    def as_array(self):
        return np.array([self.theta1, self.theta2, self.theta3])

    def distance(self, other):
        """Max-norm distance on the torus."""
        diff = wrap_angle(self.as_array() - other.as_array())
        return float(np.max(np.abs(diff)))

    def isclose(self, other, tol=1e-9):
        return self.distance(other) <= tol


@dataclass(frozen=True)
class CartesianPoint:
    x: float
    y: float
    z: float

    def as_array(self):
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class CrossSectionPoint:
    rho: float
    z: float

    @classmethod
    def from_cartesian(cls, p):
        return cls(float(np.hypot(p.x, p.y)), float(p.z))

    def to_cartesian(self, azimuth=0.0):
        return CartesianPoint(self.rho * np.cos(azimuth),
                              self.rho * np.sin(azimuth), self.z)


def _uvg(params, theta2, theta3):
    d2, d3, d4, r2 = params.astuple()
    g = d3 + np.cos(theta3) * d4
    v = np.sin(theta3) * d4 + r2
    u = np.cos(theta2) * g + d2
    return u, v, g


def forward_kinematics(params, q):
    u, v, g = _uvg(params, q.theta2, q.theta3)
    c1, s1 = np.cos(q.theta1), np.sin(q.theta1)
    return CartesianPoint(float(c1 * u - s1 * v), float(s1 * u + c1 * v),
                          float(-np.sin(q.theta2) * g))


def cross_section(params, theta2, theta3):
    """Vectorised ``(rho, z)`` of the tip; independent of theta1."""
    u, v, g = _uvg(params, theta2, theta3)
    return np.hypot(u, v), -np.sin(theta2) * g


def singular_factors(params, theta2, theta3):
    """The two factors of the Jacobian determinant, vectorised.

    The first, ``d3 + c3 d4``, vanishes on the horizontal lines where the tip
    meets the second joint axis; the second, ``s3 d2 + c2 (s3 d3 - c3 r2)``,
    on the two singularity curves.
    """
    d2, d3, d4, r2 = params.astuple()
    c2 = np.cos(theta2)
    c3, s3 = np.cos(theta3), np.sin(theta3)
    return d3 + c3 * d4, s3 * d2 + c2 * (s3 * d3 - c3 * r2)


def det_jacobian_analytic(params, q):
    first, second = singular_factors(params, q.theta2, q.theta3)
    return float(first * second)


def det_jacobian_numeric(params, q, h=1e-5):
    """Determinant of the central-difference Jacobian of the tip position.

    Equals ``d4 * det_jacobian_analytic`` up to O(h**2).
    """
    q0 = q.as_array()
    jac = np.empty((3, 3))
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        fp = forward_kinematics(params, JointConfig(*(q0 + e))).as_array()
        fm = forward_kinematics(params, JointConfig(*(q0 - e))).as_array()
        jac[:, i] = (fp - fm) / (2 * h)
    return float(np.linalg.det(jac))


# -- inverse kinematics -----------------------------------------------------

def _trig_coeffs(params, rho2, z, shift):
    """Coefficients of u(theta3) and v(theta3) as affine functions of
    (cos phi, sin phi) with theta3 = shift + phi.

    Returns ``(k, ac, as_, b0, bc, bs)`` with ``u = k + ac cos + as_ sin`` and
    ``v = b0 + bc cos + bs sin``.  Broadcasts over ``rho2``, ``z``, ``shift``.
    """
    d2, d3, d4, r2 = params.astuple()
    k = (rho2 + z * z + d2 * d2 - d3 * d3 - d4 * d4 - r2 * r2) / (2 * d2)
    c0, s0 = np.cos(shift), np.sin(shift)
    f = d4 / d2
    # u = k - f (d3 c3 + r2 s3), c3 = c0 cos - s0 sin, s3 = s0 cos + c0 sin
    ac = -f * (d3 * c0 + r2 * s0)
    as_ = -f * (-d3 * s0 + r2 * c0)
    bc = d4 * s0
    bs = d4 * c0
    return np.broadcast_arrays(k, ac, as_, r2, bc, bs)


def quartic_coefficients(params, rho2, z, shift=0.0):
    """``(..., 5)`` array of quartic coefficients in t = tan((theta3 - shift)/2).

    Obtained by clearing the ``(1 + t**2)`` denominators of
    ``u**2 + v**2 - rho**2 = 0`` after the half-angle substitution.
    """
    rho2 = np.asarray(rho2, dtype=float)
    k, ac, as_, b0, bc, bs = _trig_coeffs(params, rho2, np.asarray(z, float), shift)
    # (1 + t^2) u = (k - ac) t^2 + 2 as_ t + (k + ac); same for v
    U = np.stack([k - ac, 2 * as_, k + ac], axis=-1)
    V = np.stack([b0 - bc, 2 * bs, b0 + bc], axis=-1)
    W = np.stack([rho2, 0 * rho2, 2 * rho2, 0 * rho2, rho2], axis=-1)

    def mul(a, b):
        out = np.zeros(a.shape[:-1] + (5,))
        for i in range(3):
            for j in range(3):
                out[..., i + j] += a[..., i] * b[..., j]
        return out

    return mul(U, U) + mul(V, V) - W


def ik_residual(params, rho2, z, theta3):
    """``u**2 + v**2 - rho**2`` and its first two theta3-derivatives."""
    k, ac, as_, b0, bc, bs = _trig_coeffs(params, rho2, z, 0.0)
    c, s = np.cos(theta3), np.sin(theta3)
    u = k + ac * c + as_ * s
    du = -ac * s + as_ * c
    ddu = -(u - k)
    v = b0 + bc * c + bs * s
    dv = -bc * s + bs * c
    ddv = -(v - b0)
    f = u * u + v * v - rho2
    df = 2 * (u * du + v * dv)
    ddf = 2 * (du * du + u * ddu + dv * dv + v * ddv)
    return f, df, ddf


@dataclass(frozen=True)
class IkQuartic:
    """Inverse kinematic polynomial for one target ``(rho**2, z)``.

    ``coeffs`` holds a4..a0 in the variable t = tan((theta3 - shift)/2).
    """

    coeffs: np.ndarray
    rho2: float
    z: float
    params: DhParams
    shift: float = 0.0
    degenerate_tol: float = field(default=1e-12, repr=False)

    def __call__(self, t):
        return np.polyval(self.coeffs, t)

    @property
    def degenerate(self):
        """Leading coefficient negligible: theta3 = shift + pi is (nearly) a root."""
        c = np.abs(self.coeffs)
        return bool(c[0] < self.degenerate_tol * c.max())

    def theta3(self, t):
        return wrap_angle(self.shift + 2.0 * np.arctan(t))

    def real_roots(self, tol_cluster=1e-6):
        """Root clusters in t; the root at infinity is handled by the caller."""
        c = self.coeffs
        if self.degenerate:
            c = c[1:]
        return quartic_real_roots(c, tol_cluster)

    def solution_count(self, tol_cluster=1e-6):
        n = sum(cl.multiplicity for cl in self.real_roots(tol_cluster))
        return n + (1 if self.degenerate else 0)


def ik_quartic(params, target, shift=0.0):
    if target.rho < 0:
        raise ValueError("rho must be non-negative")
    rho2 = target.rho ** 2
    coeffs = quartic_coefficients(params, rho2, target.z, shift)
    return IkQuartic(coeffs, rho2, float(target.z), params, float(shift))


def _well_conditioned_shift(params, rho2, z):
    # put t = infinity where the residual is largest, far from any root
    shifts = np.linspace(-np.pi, np.pi, 8, endpoint=False)
    f, _, _ = ik_residual(params, rho2, z, shifts + np.pi)
    return float(shifts[np.argmax(np.abs(f))])


@dataclass
class IkResult:
    """Solutions of one IK query plus the flags raised while solving.

    ``near_singular``: some solution has ``|d3 + c3 d4|`` ~ 0, so theta2 is
    indeterminate (the target is an isolated singular point) and a single
    representative is returned.  ``double_root``: two solutions merged within
    the cluster tolerance (target on a workspace boundary).
    """

    solutions: list
    near_singular: bool = False
    double_root: bool = False
    multiplicities: list = field(default_factory=list)

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __getitem__(self, i):
        return self.solutions[i]


def solve_ik(params, p, tol_cluster=1e-6, tol_singular=1e-7):
    """All joint configurations placing the tip at ``p``.

    Each real root of the IK quartic yields one (theta2, theta3) pair and a
    unique theta1.  Simple roots are polished by Newton iteration on the
    trigonometric residual before recovering the other two joints.
    """
    target = CrossSectionPoint.from_cartesian(p)
    rho2 = target.rho ** 2
    shift = _well_conditioned_shift(params, rho2, target.z)
    quartic = ik_quartic(params, target, shift)
    clusters = quartic.real_roots(tol_cluster)
    scale = params.reach

    result = IkResult([])
    for cl in clusters:
        th3 = float(quartic.theta3(cl.value))
        if cl.multiplicity == 1:
            for _ in range(8):
                f, df, _ = ik_residual(params, rho2, target.z, th3)
                if df == 0.0:
                    break
                step = f / df
                th3 -= step
                if abs(step) < 1e-16:
                    break
        else:
            result.double_root = True
        d2 = params.d2
        k, ac, as_, b0, bc, bs = _trig_coeffs(params, rho2, target.z, 0.0)
        u = k + ac * np.cos(th3) + as_ * np.sin(th3)
        v = b0 + bc * np.cos(th3) + bs * np.sin(th3)
        g = params.d3 + np.cos(th3) * params.d4
        if abs(g) < tol_singular * scale:
            result.near_singular = True
            th2 = 0.0
        else:
            th2 = np.arctan2(-target.z / g, (u - d2) / g)
        th1 = np.arctan2(p.y, p.x) - np.arctan2(v, u)
        result.solutions.append(JointConfig(th1, th2, th3))
        result.multiplicities.append(cl.multiplicity)
    return result
