"""One-stop analysis of a design: analytic label, cusps and oracle cross-check."""

from dataclasses import dataclass, field
from typing import Optional

from .classification import (Domain, classify_domain, distance_to_nearest_surface,
                             is_cuspidal, match_semantics, surfaces)
from .errors import NonGenericError, UnstableCountError
from .singularity import find_cusps


@dataclass
class TopologyReport:
    """Everything known about one manipulator.

    ``domain_analytic`` is ``None`` when the parameters are non-generic, in
    which case ``nongeneric`` holds the reason.  ``domain_empirical`` is only
    filled in when the oracle was asked for.
    """

    params: object
    domain_analytic: Optional[Domain]
    cusps: list
    cuspidal: bool
    surfaces: dict
    nearest_surface: tuple
    nongeneric: Optional[str] = None
    domain_empirical: Optional[Domain] = None
    empirical_error: Optional[str] = None
    evidence: dict = field(default_factory=dict)

    @property
    def generic(self):
        return self.nongeneric is None

    @property
    def agreement(self):
        """Oracle and formulas agree; ``None`` when either label is missing."""
        if self.domain_analytic is None or self.domain_empirical is None:
            return None
        return self.domain_analytic is self.domain_empirical


def analyze(params, empirical=False, margin=1e-6, n_samples=2048):
    surf = surfaces(params.d2, params.d3, params.r2).as_dict()
    nearest = distance_to_nearest_surface(params)
    nongeneric = None
    try:
        domain = classify_domain(params, margin=margin, n_samples=n_samples)
    except NonGenericError as exc:
        domain, nongeneric = None, str(exc)
    try:
        cusps = find_cusps(params, n_samples)
    except NonGenericError as exc:
        cusps = []
        nongeneric = nongeneric or str(exc)

    report = TopologyReport(params, domain, cusps, is_cuspidal(params), surf,
                            nearest, nongeneric)
    if empirical:
        from .oracle import domain_evidence

        try:
            ev = domain_evidence(params)
        except UnstableCountError as exc:
            report.empirical_error = str(exc)
            return report
        report.evidence = {"arity": ev.arity, "cusp_count": ev.cusp_count,
                           "cusps_split": ev.cusps_split, "has_hole": ev.has_hole}
        matches = match_semantics(ev.arity, ev.cusp_count, ev.cusps_split,
                                  ev.has_hole)
        if len(matches) == 1:
            report.domain_empirical = matches[0]
        else:
            report.empirical_error = f"evidence matches {matches or 'no domain'}"
    return report
