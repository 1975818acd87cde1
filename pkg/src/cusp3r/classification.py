"""Separating surfaces of the design space and the five workspace topologies.

With ``S = d3**2 + r2**2``, ``A = sqrt((d3 + d2)**2 + r2**2)`` and
``B = sqrt((d3 - d2)**2 + r2**2)``, the surfaces (values of d4) are::

    C1 = sqrt((S - (S**2 - (d3**2 - r2**2) d2**2) / (A B)) / 2)
    C2 = d3 A / (d2 + d3)
    C3 = d3 B / (d3 - d2)          for d3 > d2
    C4 = d3 B / (d2 - d3)          for d3 < d2

C1 is where two cusps and a node merge into points with four equal IK
solutions; C2, C3 and C4 are tangencies between a singular line and a
singularity curve.  A second form of C1, with numerator ``S**2 - S d2**2``,
is available as ``c1_variant="alternative"`` for comparison only; it does
not track the appearance of cusps.
"""

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NonGenericError

C1_VARIANTS = ("standard", "alternative")


@dataclass(frozen=True)
class DomainSemantics:
    arity: int
    cusp_count: int
    cusps_split: Optional[bool]
    has_hole: Optional[bool]


class Domain(enum.Enum):
    D1 = 1
    D2 = 2
    D3 = 3
    D4 = 4
    D5 = 5

    @property
    def semantics(self):
        return _SEMANTICS[self]

    def __str__(self):
        return self.name


# None means "not part of the definition"
_SEMANTICS = {
    Domain.D1: DomainSemantics(arity=2, cusp_count=0, cusps_split=None, has_hole=True),
    Domain.D2: DomainSemantics(arity=4, cusp_count=4, cusps_split=False, has_hole=None),
    Domain.D3: DomainSemantics(arity=4, cusp_count=2, cusps_split=False, has_hole=None),
    Domain.D4: DomainSemantics(arity=4, cusp_count=4, cusps_split=True, has_hole=None),
    Domain.D5: DomainSemantics(arity=4, cusp_count=0, cusps_split=None, has_hole=False),
}


def match_semantics(arity, cusp_count, cusps_split, has_hole):
    """Domains whose semantics record is consistent with the evidence."""
    out = []
    for dom, sem in _SEMANTICS.items():
        if sem.arity != arity or sem.cusp_count != cusp_count:
            continue
        if sem.cusps_split is not None and sem.cusps_split != cusps_split:
            continue
        if sem.has_hole is not None and sem.has_hole != has_hole:
            continue
        out.append(dom)
    return out


@dataclass(frozen=True)
class SeparatingSurfaces:
    a: float
    b: float
    c1: float
    c2: float
    c3: Optional[float]
    c4: Optional[float]

    def as_dict(self):
        """Defined surfaces only, keyed ``"C1"`` .. ``"C4"``."""
        out = {"C1": self.c1, "C2": self.c2}
        if self.c3 is not None:
            out["C3"] = self.c3
        if self.c4 is not None:
            out["C4"] = self.c4
        return out


def surfaces(d2, d3, r2, c1_variant="standard"):
    if c1_variant not in C1_VARIANTS:
        raise ValueError(f"c1_variant must be one of {C1_VARIANTS}")
    a = float(np.hypot(d3 + d2, r2))
    b = float(np.hypot(d3 - d2, r2))
    s = d3 * d3 + r2 * r2
    if c1_variant == "standard":
        num = s * s - (d3 * d3 - r2 * r2) * d2 * d2
    else:
        num = s * s - s * d2 * d2
    radicand = 0.5 * (s - num / (a * b)) if a * b > 0 else 0.0
    c1 = float(np.sqrt(max(radicand, 0.0)))
    c2 = d3 * a / (d2 + d3)
    c3 = d3 * b / (d3 - d2) if d3 > d2 else None
    c4 = d3 * b / (d2 - d3) if d3 < d2 else None
    return SeparatingSurfaces(a, b, c1, c2, c3, c4)


def distance_to_nearest_surface(params, c1_variant="standard"):
    """``(surface id, d4 - C_i)`` for the surface closest to ``params.d4``."""
    surf = surfaces(params.d2, params.d3, params.r2, c1_variant).as_dict()
    name = min(surf, key=lambda k: abs(params.d4 - surf[k]))
    return name, params.d4 - surf[name]


def _check_generic(params, margin, c1_variant):
    if abs(params.d3 - params.d2) <= margin * params.d2:
        raise NonGenericError("d3 = d2: C3 and C4 are undefined",
                              {"surface": "d3=d2", "gap": params.d3 - params.d2})
    surf = surfaces(params.d2, params.d3, params.r2, c1_variant)
    for name, value in surf.as_dict().items():
        if abs(params.d4 - value) <= margin * value:
            raise NonGenericError(f"d4 lies on separating surface {name}",
                                  {"surface": name, "gap": params.d4 - value})
    return surf


def classify_domain(params, margin=1e-6, c1_variant="standard", n_samples=2048):
    """Workspace-topology domain of a generic manipulator.

    Raises :class:`NonGenericError` within relative ``margin`` of a surface
    or of d3 = d2.  For d3 < d2 between C2 and C4 the surfaces alone do not
    fix the label; it is read from the cusp count and cusp placement of the
    traced singularity curves.
    """
    surf = _check_generic(params, margin, c1_variant)
    d4 = params.d4
    if d4 < surf.c1:
        return Domain.D1
    if d4 < surf.c2:
        return Domain.D2
    if surf.c3 is not None:
        return Domain.D3 if d4 < surf.c3 else Domain.D4
    if d4 > surf.c4:
        return Domain.D5
    return _domain_from_cusps(params, n_samples)


def _domain_from_cusps(params, n_samples):
    from .singularity import Boundary, find_cusps

    cusps = find_cusps(params, n_samples)
    n_ext = sum(1 for c in cusps if c.boundary is Boundary.EXTERNAL)
    split = 0 < n_ext < len(cusps)
    if len(cusps) == 2 and not split:
        return Domain.D3
    if len(cusps) == 4 and split:
        return Domain.D4
    raise NonGenericError(
        f"{len(cusps)} cusps ({n_ext} external) fit neither D3 nor D4",
        {"cusp_count": len(cusps), "external": n_ext})


def is_cuspidal(params, c1_variant="standard"):
    """Whether the manipulator can change posture without meeting a singularity.

    Closed-form test on the lengths: ``d4 > C1`` and, when ``d3 < d2``,
    ``d4 < C4``.  Invariant under uniform scaling of all four lengths.
    """
    surf = surfaces(params.d2, params.d3, params.r2, c1_variant)
    if params.d4 <= surf.c1:
        return False
    return params.d3 >= params.d2 or params.d4 < surf.c4
