"""Brute-force cross-checks for the analytic pipeline.

Nothing here reuses the singularity tracing or the cusp detector:

* :func:`ik_count_brute` runs damped Newton iterations on the cross-section
  equations from every cell of a joint-space grid;
* :func:`cusp_brute` locates the singular set column by column by bisection
  on the Jacobian determinant, then watches the third root of the IK
  quartic pass through the double root;
* :func:`empirical_domain` combines arity, cusp placement and a hole test.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .classification import Domain, match_semantics, surfaces
from .errors import NoMatchError, UnstableCountError
from .kinematics import (CrossSectionPoint, DhParams, JointConfig,
                         cross_section, forward_kinematics, quartic_coefficients,
                         singular_factors, wrap_angle)
from .roots import quartic_eigenvalues


@dataclass(frozen=True)
class GridSpec:
    n_theta2: int = 512
    n_theta3: int = 512

    def __post_init__(self):
        if min(self.n_theta2, self.n_theta3) < 64:
            raise ValueError("grid resolution must be at least 64 per axis")


DEFAULT_IK_GRID = GridSpec(64, 64)
DEFAULT_CUSP_GRID = GridSpec(2048, 512)


def _workspace_box(params):
    reach = params.reach
    return (0.0, reach), (-reach, reach)


# -- IK by Newton from a seed grid -------------------------------------------

@dataclass
class BruteIkResult:
    count: int
    solutions: list
    nonconverged: int
    seeds: int


def _newton_cross_section(params, rho2, z, t2, t3, iters=50, tol=1e-12):
    d2, d3, d4, r2 = params.astuple()
    scale = params.reach ** 2
    lam = 1e-14 * scale * scale
    for _ in range(iters):
        c2, s2, c3, s3 = np.cos(t2), np.sin(t2), np.cos(t3), np.sin(t3)
        g = d3 + c3 * d4
        v = s3 * d4 + r2
        u = c2 * g + d2
        f1 = u * u + v * v - rho2
        f2 = -s2 * g - z
        j11 = -2 * u * s2 * g
        j12 = 2 * u * c2 * (-s3 * d4) + 2 * v * c3 * d4
        j21 = -c2 * g
        j22 = s2 * s3 * d4
        # Levenberg-damped normal equations, closed-form 2x2 solve
        a11 = j11 * j11 + j21 * j21 + lam
        a12 = j11 * j12 + j21 * j22
        a22 = j12 * j12 + j22 * j22 + lam
        b1 = j11 * f1 + j21 * f2
        b2 = j12 * f1 + j22 * f2
        det = a11 * a22 - a12 * a12
        dt2 = (a22 * b1 - a12 * b2) / det
        dt3 = (a11 * b2 - a12 * b1) / det
        step = np.maximum(np.hypot(dt2, dt3) / 0.5, 1.0)
        t2 = t2 - dt2 / step
        t3 = t3 - dt3 / step
    c2, s2, c3, s3 = np.cos(t2), np.sin(t2), np.cos(t3), np.sin(t3)
    g = d3 + c3 * d4
    res = np.hypot((c2 * g + d2) ** 2 + (s3 * d4 + r2) ** 2 - rho2, -s2 * g - z)
    return wrap_angle(t2), wrap_angle(t3), res <= tol * scale


def ik_count_brute(params, point, grid=DEFAULT_IK_GRID, merge_tol=1e-6, fk_tol=1e-9):
    """Distinct IK solutions found by Newton iteration from every grid cell."""
    t2, t3 = np.meshgrid(
        np.linspace(-np.pi, np.pi, grid.n_theta2, endpoint=False),
        np.linspace(-np.pi, np.pi, grid.n_theta3, endpoint=False), indexing="ij")
    t2, t3 = t2.ravel(), t3.ravel()
    rho2 = point.rho ** 2
    s2, s3, ok = _newton_cross_section(params, rho2, point.z, t2, t3)

    found = []
    for a, b in zip(s2[ok], s3[ok]):
        if any(abs(wrap_angle(a - fa)) < merge_tol and abs(wrap_angle(b - fb)) < merge_tol
               for fa, fb in found):
            continue
        found.append((a, b))

    target = point.to_cartesian()
    solutions = []
    for a, b in found:
        g = params.d3 + np.cos(b) * params.d4
        u = np.cos(a) * g + params.d2
        v = np.sin(b) * params.d4 + params.r2
        q = JointConfig(np.arctan2(target.y, target.x) - np.arctan2(v, u), a, b)
        err = np.linalg.norm(forward_kinematics(params, q).as_array() - target.as_array())
        if err <= fk_tol * params.reach:
            solutions.append(q)
    return BruteIkResult(len(solutions), solutions, int(np.sum(~ok)), t2.size)


# -- cusps by triple-root scanning --------------------------------------------

@dataclass
class BruteCuspResult:
    count: int
    locations: list
    chain_counts: list
    external_chain: int
    counts_by_tol: dict = field(default_factory=dict)

    @property
    def stable(self):
        return len(set(self.counts_by_tol.values())) == 1

    @property
    def split(self):
        return all(n > 0 for n in self.chain_counts)


def singular_chains(params, grid=DEFAULT_CUSP_GRID):
    """Two ``(n_theta2,)`` chains of singular theta3 values, one per curve.

    Each theta2 column is scanned for sign changes of the curve factor of
    the Jacobian determinant, refined by 60 bisection steps, and the two
    zeros are linked to the previous column by nearest circular distance.
    """
    n2, n3 = grid.n_theta2, grid.n_theta3
    theta2 = -np.pi + (np.arange(n2) + 0.5) * 2 * np.pi / n2
    t3 = np.linspace(-np.pi, np.pi, n3, endpoint=False)
    step = 2 * np.pi / n3
    _, e = singular_factors(params, theta2[:, None], t3[None, :])
    e_next = np.roll(e, -1, axis=1)
    flips = np.sign(e) * np.sign(e_next) < 0
    flips |= e == 0
    counts = flips.sum(axis=1)
    if np.any(counts != 2):
        raise NoMatchError("singular set does not cross every column exactly twice",
                           {"columns": np.nonzero(counts != 2)[0].tolist()})
    cols, idx = np.nonzero(flips)
    lo = t3[idx]
    hi = lo + step
    th2 = theta2[cols]
    f_lo = singular_factors(params, th2, lo)[1]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        f_mid = singular_factors(params, th2, mid)[1]
        left = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi = np.where(left, hi, mid)
    roots = wrap_angle(0.5 * (lo + hi)).reshape(n2, 2)

    chains = np.empty((2, n2))
    chains[:, 0] = roots[0]
    for j in range(1, n2):
        a, b = roots[j]
        prev = chains[:, j - 1]
        keep = (abs(wrap_angle(a - prev[0])) + abs(wrap_angle(b - prev[1]))
                <= abs(wrap_angle(b - prev[0])) + abs(wrap_angle(a - prev[1])))
        chains[:, j] = (a, b) if keep else (b, a)
    return theta2, chains


def _third_root_offsets(params, theta2, theta3):
    """Signed position of the third IK root relative to the double root.

    At a singular sample the IK quartic written in t = tan((theta3' - theta3)/2)
    has a double root at t = 0, so it reads ``t**2 (a4 t**2 + a3 t + a2)`` up to
    rounding in a1, a0.  The third root passes through zero exactly when
    ``a2`` changes sign.  Returns the root of the quadratic factor nearest to
    zero (NaN when complex), ``a2`` normalised per sample, and the image.
    """
    rho, z = cross_section(params, theta2, theta3)
    c = quartic_coefficients(params, rho * rho, z, theta3)
    c = c / np.max(np.abs(c), axis=1, keepdims=True)
    a4, a3, a2 = c[:, 0], c[:, 1], c[:, 2]
    disc = a3 * a3 - 4 * a4 * a2
    root = np.sqrt(np.where(disc >= 0, disc, np.nan))
    den = a3 + np.where(a3 >= 0, 1.0, -1.0) * root
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(den != 0, -2 * a2 / den, np.nan)
    return small, a2, rho, z


def cusp_brute(params, grid=DEFAULT_CUSP_GRID, tols=(0.05, 0.15, 0.5), strict=True):
    """Count cusps by scanning the singular set for triple IK roots.

    A cusp lies between two consecutive samples of a chain where the third
    root changes sign, provided it comes within the cluster tolerance of
    the double root at one of the two samples.  The sign is read from the ``a2`` coefficient, which is
    continuous along a chain, so the two remaining roots swapping order
    cannot fake a crossing.  The count is repeated for each tolerance in ``tols`` (one
    decade); if it varies, :class:`UnstableCountError` is raised when
    ``strict`` is set.
    """
    theta2, chains = singular_chains(params, grid)
    n = theta2.size
    offsets = []
    lead = []
    max_rho = []
    for ci in range(2):
        off, a2, rho, _ = _third_root_offsets(params, theta2, chains[ci])
        offsets.append(off)
        lead.append(a2)
        max_rho.append(rho.max())

    def crossings(ci, tol):
        off, a2 = offsets[ci], lead[ci]
        nxt = np.roll(np.arange(n), -1)
        near = np.fmin(np.abs(off), np.abs(off[nxt]))
        hit = (np.sign(a2) * np.sign(a2[nxt]) < 0) & (near <= tol)
        return np.nonzero(hit)[0]

    counts_by_tol = {tol: sum(crossings(ci, tol).size for ci in range(2))
                     for tol in tols}
    chain_counts = []
    locations = []
    for ci in range(2):
        hits = crossings(ci, tols[0])
        chain_counts.append(int(hits.size))
        a2 = lead[ci]
        for i in hits:
            j = (i + 1) % n
            w = a2[i] / (a2[i] - a2[j])
            t2 = theta2[i] + w * wrap_angle(theta2[j] - theta2[i])
            t3 = chains[ci, i] + w * wrap_angle(chains[ci, j] - chains[ci, i])
            r, zz = cross_section(params, t2, t3)
            locations.append(CrossSectionPoint(float(r), float(zz)))
    result = BruteCuspResult(counts_by_tol[tols[0]], locations, chain_counts,
                             int(np.argmax(max_rho)), counts_by_tol)
    if strict and not result.stable:
        raise UnstableCountError(f"cusp count varies with tolerance: {counts_by_tol}",
                                 counts_by_tol)
    return result


# -- empirical domain ---------------------------------------------------------

@dataclass
class DomainEvidence:
    arity: int
    cusp_count: int
    cusps_split: bool
    has_hole: bool
    cusps: BruteCuspResult


def _count_batch(params, rho, z):
    """IK counts for many cross-section points; -1 where two roots nearly merge."""
    shift = np.arctan2(z, rho) + 0.7
    ev = quartic_eigenvalues(quartic_coefficients(params, rho * rho, z, shift))
    n = np.sum(ev.imag == 0.0, axis=1)
    # guard against near-double roots masquerading as real pairs
    gaps = np.abs(ev[:, :, None] - ev[:, None, :]) + np.eye(4)[None] * 1e9
    near = gaps.min(axis=(1, 2)) < 1e-4
    return np.where(near, -1, n)


def _arity(params, n=64):
    t2, t3 = np.meshgrid(np.linspace(-np.pi, np.pi, n, endpoint=False) + 0.01,
                         np.linspace(-np.pi, np.pi, n, endpoint=False) + 0.02)
    rho, z = cross_section(params, t2.ravel(), t3.ravel())
    counts = _count_batch(params, rho, z)
    return int(counts.max())


def _no_real_root(coeffs):
    """Rows of an ``(N, 5)`` quartic array with no real root.

    Sign test on the discriminant and the two auxiliary invariants of the
    quartic; much cheaper than eigenvalues on large pixel grids.
    """
    c = coeffs / np.max(np.abs(coeffs), axis=1, keepdims=True)
    a, b, cc, d, e = c.T
    disc = (256 * a**3 * e**3 - 192 * a**2 * b * d * e**2 - 128 * a**2 * cc**2 * e**2
            + 144 * a**2 * cc * d**2 * e - 27 * a**2 * d**4 + 144 * a * b**2 * cc * e**2
            - 6 * a * b**2 * d**2 * e - 80 * a * b * cc**2 * d * e + 18 * a * b * cc * d**3
            + 16 * a * cc**4 * e - 4 * a * cc**3 * d**2 - 27 * b**4 * e**2
            + 18 * b**3 * cc * d * e - 4 * b**3 * d**3 - 4 * b**2 * cc**3 * e
            + b**2 * cc**2 * d**2)
    p = 8 * a * cc - 3 * b**2
    dd = (64 * a**3 * e - 16 * a**2 * cc**2 + 16 * a * b**2 * cc
          - 16 * a**2 * b * d - 3 * b**4)
    return (disc > 0) & ((p > 0) | (dd > 0))


def _has_hole(params, n=None):
    """Whether some 0-IKS region of the half cross-section is enclosed.

    The grid must resolve the workspace walls, whose thickness scales with
    d4, so the default resolution grows with ``reach / d4``.
    """
    if n is None:
        n = int(np.clip(np.ceil(8 * params.reach / params.d4), 128, 1024))
    (r0, r1), (z0, z1) = _workspace_box(params)
    rr, zz = np.meshgrid(np.linspace(r0, r1, n), np.linspace(z0, z1, 2 * n))
    rho, z = rr.ravel(), zz.ravel()
    coeffs = quartic_coefficients(params, rho * rho, z, np.arctan2(z, rho) + 0.7)
    empty = _no_real_root(coeffs).reshape(rr.shape)
    labels, nlab = ndimage.label(empty)
    border = set(np.unique(np.concatenate([labels[0], labels[-1],
                                           labels[:, 0], labels[:, -1]])))
    sizes = np.bincount(labels.ravel(), minlength=nlab + 1)
    # isolated empty cells are sampling noise at pinch points of the boundary
    return any(lab not in border and sizes[lab] > 2 for lab in range(1, nlab + 1))


def domain_evidence(params, grid=DEFAULT_CUSP_GRID):
    cusps = cusp_brute(params, grid)
    arity = _arity(params)
    return DomainEvidence(arity, cusps.count, cusps.split, _has_hole(params), cusps)


def empirical_domain(params, grid=DEFAULT_CUSP_GRID):
    """Domain read off the workspace itself rather than the surface formulas."""
    ev = domain_evidence(params, grid)
    matches = match_semantics(ev.arity, ev.cusp_count, ev.cusps_split, ev.has_hole)
    if len(matches) != 1:
        raise NoMatchError(f"evidence matches {matches or 'no domain'}", ev)
    return matches[0]


# -- surface localisation -----------------------------------------------------

_SIDES = {
    "C1": (Domain.D1, Domain.D2),
    "C2": (Domain.D2, Domain.D3),
    "C3": (Domain.D3, Domain.D4),
    "C4": (Domain.D3, Domain.D5),
}


def _cusp_signature(params, grid):
    res = cusp_brute(params, grid, strict=False)
    return res.count, res.split


def _default_bracket(d2, d3, r2, surface):
    # halfway to the neighbouring surfaces, at most 20 % away
    values = surfaces(d2, d3, r2).as_dict()
    if surface not in values:
        raise ValueError(f"{surface} is undefined for d3={d3}, d2={d2}")
    if surface == "C1":
        # wide enough to hold either form of C1
        return (1e-3 * d2, 0.5 * (values["C1"] + values["C2"]))
    ordered = sorted(values.values())
    v = values[surface]
    i = ordered.index(v)
    lo = max(0.8 * v, 0.5 * (v + ordered[i - 1]))
    hi = min(1.2 * v, 0.5 * (v + ordered[i + 1])) if i + 1 < len(ordered) else 1.2 * v
    return (lo, hi)


def transition_bisect(d2, d3, r2, surface, bracket=None, tol=1e-4,
                      grid=DEFAULT_CUSP_GRID):
    """Locate a separating surface by bisection on the observed cusp pattern.

    ``bracket`` is a ``(lo, hi)`` interval of d4 whose ends show different
    cusp patterns; by default it is built around the analytic surface value
    wide enough to contain both forms of C1.
    """
    if surface not in _SIDES:
        raise ValueError(f"unknown surface {surface!r}")
    if bracket is None:
        bracket = _default_bracket(d2, d3, r2, surface)
    lo, hi = bracket

    def sig(d4):
        return _cusp_signature(DhParams(d2, d3, d4, r2), grid)

    s_lo, s_hi = sig(lo), sig(hi)
    if s_lo == s_hi:
        raise ValueError(f"bracket {bracket} does not straddle a transition ({s_lo})")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if sig(mid) == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
