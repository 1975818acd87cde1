"""Real roots of polynomials of degree <= 4, with multiplicity clusters.

Coefficients are given highest degree first (``numpy.roots`` order).

Multiple roots are located through the derivative chain: a root of
multiplicity ``m`` is a simple root of the ``(m-1)``-th derivative, which can
be computed to full precision.  Whether the roots of ``p`` actually cluster
around such a candidate is decided from the Taylor coefficients of ``p`` at
the candidate, after discounting their floating-point noise.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DegeneratePolynomialError

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RootCluster:
    value: float
    multiplicity: int


def _trim(coeffs):
    c = np.asarray(coeffs, dtype=float).ravel()
    if c.size == 0 or not np.all(np.isfinite(c)):
        raise DegeneratePolynomialError("coefficients must be finite and non-empty")
    scale = np.max(np.abs(c))
    if scale == 0.0:
        raise DegeneratePolynomialError("identically zero polynomial")
    c = c / scale
    nz = np.nonzero(np.abs(c) > 64 * EPS)[0]
    return c[nz[0]:]


def taylor_coefficients(coeffs, x):
    """Taylor coefficients ``p^(k)(x)/k!`` for k = 0..n, and their rounding noise."""
    c = np.asarray(coeffs, dtype=float)
    n = c.size - 1
    a = np.zeros(n + 1)
    noise = np.zeros(n + 1)
    ax = abs(x)
    for k in range(n + 1):
        for i in range(k, n + 1):
            term = c[n - i] * comb(i, k) * x ** (i - k)
            a[k] += term
            noise[k] += abs(c[n - i]) * comb(i, k) * ax ** (i - k)
    noise *= 8 * (n + 1) * EPS
    return a, noise


def cluster_radius(coeffs, center, multiplicity):
    """Radius of the disc around ``center`` holding ``multiplicity`` roots.

    Estimated from the Taylor expansion ``sum a_k e^k`` at ``center``: the
    ``m`` small roots satisfy ``|e| <= 2 max_{k<m} |a_k / a_m|^(1/(m-k))``.
    Taylor coefficients below their rounding noise count as zero.  Returns
    ``inf`` when the m-th coefficient itself is lost in noise.
    """
    a, noise = taylor_coefficients(coeffs, center)
    m = multiplicity
    if m >= a.size or abs(a[m]) <= noise[m]:
        return np.inf
    r = 0.0
    for k in range(m):
        eff = max(abs(a[k]) - noise[k], 0.0)
        r = max(r, (eff / abs(a[m])) ** (1.0 / (m - k)))
    return 2.0 * r


def _newton_real(c, x, iters=30):
    dc = np.polyder(c)
    for _ in range(iters):
        f = np.polyval(c, x)
        df = np.polyval(dc, x)
        if df == 0.0:
            break
        step = f / df
        x_new = x - step
        if abs(np.polyval(c, x_new)) > abs(f):
            break
        x = x_new
        if abs(step) <= 4 * EPS * (1.0 + abs(x)):
            break
    return x


def quartic_real_roots(coeffs, tol_cluster=1e-6):
    """Sorted real roots of a polynomial of degree <= 4.

    Roots closer than ``tol_cluster`` are merged into one
    :class:`RootCluster` whose ``multiplicity`` counts them.  A pair of complex
    conjugate roots closer than ``tol_cluster`` to the real axis is reported
    as a real double root, which is what a caller probing a workspace
    boundary needs to see.

    Raises :class:`DegeneratePolynomialError` for an identically zero input.

    >>> [(r.value, r.multiplicity) for r in quartic_real_roots([1, 2, -3, -4, 4])]
    [(-2.0, 2), (1.0, 2)]
    """
    c = _trim(coeffs)
    n = c.size - 1
    if n > 4:
        raise ValueError("degree must not exceed 4")
    if n == 0:
        return []

    remaining = list(np.roots(c).astype(complex))
    clusters = []

    for m in range(n, 1, -1):
        d = np.polyder(c, m - 1)
        for cand in sorted(np.real(np.roots(d))):
            if any(abs(cand - cl.value) <= tol_cluster for cl in clusters):
                continue
            if cluster_radius(c, cand, m) > tol_cluster:
                continue
            cand = _newton_real(d, cand)
            if len(remaining) < m:
                continue
            order = np.argsort([abs(z - cand) for z in remaining])
            for idx in sorted(order[:m], reverse=True):
                remaining.pop(idx)
            clusters.append(RootCluster(float(cand), m))

    for z in remaining:
        if abs(z.imag) <= tol_cluster * (1.0 + abs(z.real)):
            x = _newton_real(c, z.real)
            clusters.append(RootCluster(float(x), 1))

    clusters.sort(key=lambda cl: cl.value)
    # simple roots that polished onto each other
    merged = []
    for cl in clusters:
        if merged and abs(cl.value - merged[-1].value) <= tol_cluster:
            prev = merged.pop()
            cl = RootCluster(prev.value, prev.multiplicity + cl.multiplicity)
        merged.append(cl)
    return merged


def quartic_eigenvalues(coeffs):
    """Roots of each row of an ``(N, 5)`` quartic coefficient array.

    Vectorised companion-matrix eigenvalues.  Rows must have a
    non-negligible leading coefficient.
    """
    c = np.asarray(coeffs, dtype=float)
    c = c / c[:, :1]
    comp = np.zeros((c.shape[0], 4, 4))
    comp[:, 0, :] = -c[:, 1:]
    comp[:, 1, 0] = comp[:, 2, 1] = comp[:, 3, 2] = 1.0
    return np.linalg.eigvals(comp)


def real_root_count_batch(coeffs):
    """Number of real roots for each row of an ``(N, 5)`` quartic array.

    An eigenvalue counts as real when LAPACK returns it with exactly zero
    imaginary part, which it does for real eigenvalues of a real matrix.
    """
    return np.sum(quartic_eigenvalues(coeffs).imag == 0.0, axis=1)
