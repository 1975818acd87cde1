"""Command-line front end.

Every command prints a JSON run report to stdout (or ``--out`` for
``classify`` and ``check``).  Plot and sweep commands also write an SVG and
a CSV next to the ``--out`` stem.  All numbers in JSON and CSV are written
with 17 significant digits so that reruns are byte-identical; only the
``run.wall_time_ms`` field varies between runs.

Exit codes: 0 ok, 1 usage error, 2 non-generic parameters, 3 validation
failure.
"""

import argparse
import csv
import io
import json
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .classification import (classify_domain, is_cuspidal, match_semantics,
                             surfaces)
from .errors import (NoMatchError, NonGenericError, NonGenericWarning,
                     UnstableCountError)
from .kinematics import (CartesianPoint, DhParams, JointConfig, forward_kinematics,
                         solve_ik, wrap_angle)
from .oracle import domain_evidence, empirical_domain, transition_bisect
from .report import analyze
from .singularity import (classify_boundaries, find_cusps, trace_singularity_curves)
from .svgplot import Figure, fmt, split_on_jumps

EXIT_OK, EXIT_USAGE, EXIT_NONGENERIC, EXIT_VALIDATION = 0, 1, 2, 3

DOMAIN_COLOURS = {
    "D1": "#d9d9d9",
    "D2": "#9ecae1",
    "D3": "#a1d99b",
    "D4": "#fdae6b",
    "D5": "#bcbddc",
}
SURFACE_COLOURS = {"C1": "#08519c", "C2": "#006d2c", "C3": "#a63603", "C4": "#54278f"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- serialisation -------------------------------------------------------------

def _floats_to_tokens(obj, table):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, np.floating)):
        table.append(fmt(obj))
        return f"\x00{len(table) - 1}\x00"
    if isinstance(obj, dict):
        return {k: _floats_to_tokens(v, table) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_floats_to_tokens(v, table) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj):
    """JSON with every float written to 17 significant digits."""
    table = []
    text = json.dumps(_floats_to_tokens(obj, table), indent=2)
    for i, num in enumerate(table):
        text = text.replace(f'"\\u0000{i}\\u0000"', num, 1)
    return text + "\n"


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _write(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return str(path)


def _artifact_paths(out, fmt_choice):
    stem = Path(out)
    if stem.suffix in (".svg", ".csv", ".json"):
        stem = stem.with_suffix("")
    wanted = ("svg", "csv") if fmt_choice in (None, "json") else (fmt_choice,)
    return {kind: stem.with_name(stem.name + "." + kind) for kind in wanted}


# -- argument types ------------------------------------------------------------

def _positive(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (np.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a positive real, got {text}")
    return v


def _nonnegative(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (np.isfinite(v) and v >= 0):
        raise argparse.ArgumentTypeError(f"must be a non-negative real, got {text}")
    return v


def _finite(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not np.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite, got {text}")
    return v


def _samples(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 256:
        raise argparse.ArgumentTypeError("--samples must be at least 256")
    return v


def _resolution(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 32:
        raise argparse.ArgumentTypeError("--resolution below 32 is too coarse")
    return v


def _count(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _params(args):
    return DhParams(args.d2, args.d3, args.d4, args.r2)


def _params_dict(p):
    return {"d2": p.d2, "d3": p.d3, "d4": p.d4, "r2": p.r2}


def _run_block(args, start, artifacts=(), seed=None):
    return {
        "command": args.command,
        "version": __version__,
        "seed": seed,
        "artifacts": list(artifacts),
        "wall_time_ms": int(round(1000 * (time.perf_counter() - start))),
    }


# -- classify --------------------------------------------------------------------

def _cusp_dict(c):
    return {"rho": c.location.rho, "z": c.location.z, "theta2": c.theta2,
            "theta3": c.theta3, "boundary": c.boundary.value}


def report_payload(report):
    """The deterministic part of a classify report."""
    out = {
        "params": _params_dict(report.params),
        "domain_analytic": str(report.domain_analytic) if report.generic else "NonGeneric",
        "cuspidal": report.cuspidal,
        "cusp_count": len(report.cusps),
        "surfaces": {k.lower(): v for k, v in report.surfaces.items()},
        "nearest_surface": {"id": report.nearest_surface[0],
                            "gap": report.nearest_surface[1]},
        "generic": report.generic,
        "cusps": [_cusp_dict(c) for c in report.cusps],
    }
    if not report.generic:
        out["nongeneric_reason"] = report.nongeneric
    if report.domain_empirical is not None or report.empirical_error is not None:
        out["domain_empirical"] = (str(report.domain_empirical)
                                   if report.domain_empirical is not None else None)
        out["agreement"] = report.agreement
        out["evidence"] = report.evidence
        if report.empirical_error is not None:
            out["empirical_error"] = report.empirical_error
    return out


def cmd_classify(args):
    start = time.perf_counter()
    report = analyze(_params(args), empirical=args.empirical, margin=args.margin,
                     n_samples=args.samples)
    payload = report_payload(report)
    artifacts = []
    if args.out:
        artifacts.append(str(args.out))
    payload["run"] = _run_block(args, start, artifacts)
    text = dumps(payload)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    if not report.generic:
        return EXIT_NONGENERIC
    if report.agreement is False:
        return EXIT_VALIDATION
    return EXIT_OK


# -- joint-space plot ------------------------------------------------------------

def jointspace_rows(params, n_samples):
    rows = []
    for b in trace_singularity_curves(params, n_samples):
        # drop the repeated closing sample so every row lies in [-pi, pi)
        t2 = wrap_angle(b.theta2[:-1])
        t3 = wrap_angle(b.theta3[:-1])
        rows.extend((float(a), float(c), b.kind.value) for a, c in zip(t2, t3))
    return rows


def jointspace_svg(params, n_samples):
    fig = Figure((-np.pi, np.pi), (-np.pi, np.pi),
                 title=f"singular set  d2={fmt(params.d2)} d3={fmt(params.d3)} "
                       f"d4={fmt(params.d4)} r2={fmt(params.r2)}",
                 xlabel="theta2 (rad)", ylabel="theta3 (rad)")
    ticks = [(-np.pi, "-π"), (-np.pi / 2, "-π/2"), (0.0, "0"),
             (np.pi / 2, "π/2"), (np.pi, "π")]
    fig.ticks(ticks, ticks)
    styles = {
        "curve+": {"stroke": "#08519c", "stroke_width": 2},
        "curve-": {"stroke": "#a50f15", "stroke_width": 2},
        "line+": {"stroke": "#252525", "stroke_width": 1.5, "stroke_dasharray": "6 4"},
        "line-": {"stroke": "#737373", "stroke_width": 1.5, "stroke_dasharray": "6 4"},
    }
    for b in trace_singularity_curves(params, n_samples):
        for xs, ys in split_on_jumps(b.theta2, wrap_angle(b.theta3)):
            fig.polyline(xs, ys, **{"class": b.kind.value,
                                    "data-branch": b.kind.value},
                         **styles[b.kind.value])
    return fig.tostring()


def cmd_plot_jointspace(args):
    start = time.perf_counter()
    params = _params(args)
    paths = _artifact_paths(args.out, args.format)
    written = []
    if "csv" in paths:
        rows = jointspace_rows(params, args.samples)
        written.append(_write(paths["csv"], _csv_text(["theta2", "theta3", "branch_kind"], rows)))
    if "svg" in paths:
        written.append(_write(paths["svg"], jointspace_svg(params, args.samples)))
    kinds = [b.kind.value for b in trace_singularity_curves(params, args.samples)]
    payload = {"params": _params_dict(params), "branches": kinds,
               "run": _run_block(args, start, written)}
    sys.stdout.write(dumps(payload))
    return EXIT_OK


# -- workspace plot ----------------------------------------------------------------

def workspace_data(params, n_samples):
    """Boundary samples, cusps and isolated points of the half cross-section."""
    branches = trace_singularity_curves(params, n_samples)
    bset = classify_boundaries(params, branches, strict=False)
    cusps = find_cusps(params, max(n_samples, 2048))
    return bset, cusps


def workspace_rows(bset, cusps):
    rows = []
    for role, polys in (("internal", bset.internal), ("external", bset.external)):
        for poly in polys:
            rows.extend((float(r), float(z), role) for r, z in poly[:-1])
    for c in cusps:
        rows.append((c.location.rho, c.location.z, "cusp"))
    for p in bset.isolated_points:
        rows.append((p.rho, p.z, "isolated"))
    return rows


def workspace_svg(params, bset, cusps):
    pts = np.vstack(bset.internal + bset.external)
    rmax = 1.05 * float(pts[:, 0].max())
    zmax = 1.05 * float(np.abs(pts[:, 1]).max())
    ext = max(rmax, 2 * zmax)
    fig = Figure((0.0, ext), (-ext / 2, ext / 2),
                 title=f"half cross-section  d2={fmt(params.d2)} d3={fmt(params.d3)} "
                       f"d4={fmt(params.d4)} r2={fmt(params.r2)}",
                 xlabel="rho", ylabel="z")
    xt = np.linspace(0.0, ext, 5)
    yt = np.linspace(-ext / 2, ext / 2, 5)
    fig.ticks([(v, f"{v:.3g}") for v in xt], [(v, f"{v:.3g}") for v in yt])
    for poly in bset.external:
        fig.polyline(poly[:, 0], poly[:, 1], stroke="#000000", stroke_width=2,
                     **{"class": "external"})
    for poly in bset.internal:
        fig.polyline(poly[:, 0], poly[:, 1], stroke="#2171b5", stroke_width=1.5,
                     stroke_dasharray="5 3", **{"class": "internal"})
    for c in cusps:
        fig.marker(c.location.rho, c.location.z, "circle", 5, fill="#e6550d",
                   **{"class": "cusp", "data-rho": fmt(c.location.rho),
                      "data-z": fmt(c.location.z), "data-boundary": c.boundary.value})
    for p in bset.isolated_points:
        fig.marker(p.rho, p.z, "square", 4, fill="#31a354",
                   **{"class": "isolated", "data-rho": fmt(p.rho), "data-z": fmt(p.z)})
    fig.legend([("external", "#000000"), ("internal", "#2171b5"),
                ("cusp", "#e6550d"), ("isolated point", "#31a354")])
    return fig.tostring()


def cmd_plot_workspace(args):
    start = time.perf_counter()
    params = _params(args)
    bset, cusps = workspace_data(params, args.samples)
    paths = _artifact_paths(args.out, args.format)
    written = []
    if "csv" in paths:
        written.append(_write(paths["csv"], _csv_text(["rho", "z", "role"],
                                                      workspace_rows(bset, cusps))))
    if "svg" in paths:
        written.append(_write(paths["svg"], workspace_svg(params, bset, cusps)))
    payload = {
        "params": _params_dict(params),
        "cusps": [_cusp_dict(c) for c in cusps],
        "isolated_points": [{"rho": p.rho, "z": p.z} for p in bset.isolated_points],
        "internal_branch": bset.internal_kind.value,
        "external_branch": bset.external_kind.value,
        "run": _run_block(args, start, written),
    }
    sys.stdout.write(dumps(payload))
    return EXIT_OK


# -- sweep -----------------------------------------------------------------------

def cell_centres(lo, hi, n):
    return lo + (np.arange(n) + 0.5) * (hi - lo) / n


def sweep_labels(r2, resolution, d3_range=(0.0, 4.0), d4_range=(0.0, 4.0), d2=1.0,
                 empirical=False, n_samples=512):
    """Domain labels on a grid of cell centres; ``labels[i, j]`` is at
    ``(d3[i], d4[j])``.

    Non-generic cells get the label ``"NG"``; with ``empirical`` set, cells
    the oracle cannot label get ``"??"``.
    """
    d3s = cell_centres(*d3_range, resolution)
    d4s = cell_centres(*d4_range, resolution)
    labels = np.empty((resolution, resolution), dtype="<U2")
    cusp = np.zeros((resolution, resolution), dtype=bool)
    for i, d3 in enumerate(d3s):
        for j, d4 in enumerate(d4s):
            p = DhParams(d2, float(d3), float(d4), r2)
            cusp[i, j] = is_cuspidal(p)
            try:
                if empirical:
                    labels[i, j] = str(empirical_domain(p))
                else:
                    labels[i, j] = str(classify_domain(p, n_samples=n_samples))
            except NonGenericError:
                labels[i, j] = "NG"
            except (NoMatchError, UnstableCountError):
                labels[i, j] = "??"
    return d3s, d4s, labels, cusp


def surface_curves(r2, d3_range, d4_range, d2=1.0, n=801):
    """Overlay curves as ``{name: [(d3 array, d4 array), ...]}`` inside the box."""
    d3 = np.linspace(max(d3_range[0], 1e-6), d3_range[1], n)
    cols = {"C1": [], "C2": [], "C3": [], "C4": []}
    for v in d3:
        s = surfaces(d2, float(v), r2)
        cols["C1"].append(s.c1)
        cols["C2"].append(s.c2)
        cols["C3"].append(np.nan if s.c3 is None else s.c3)
        cols["C4"].append(np.nan if s.c4 is None else s.c4)
    out = {}
    for name, vals in cols.items():
        vals = np.array(vals)
        ok = np.isfinite(vals) & (vals >= d4_range[0]) & (vals <= d4_range[1])
        pieces = []
        idx = np.nonzero(ok)[0]
        if idx.size:
            breaks = np.nonzero(np.diff(idx) > 1)[0] + 1
            for seg in np.split(idx, breaks):
                if seg.size > 1:
                    pieces.append((d3[seg], vals[seg]))
        out[name] = pieces
    return out


def sweep_svg(d3s, d4s, labels, r2, d3_range, d4_range, d2=1.0):
    fig = Figure(d3_range, d4_range, title=f"domains at r2={fmt(r2)}",
                 xlabel="d3", ylabel="d4")
    h3 = (d3_range[1] - d3_range[0]) / len(d3s)
    h4 = (d4_range[1] - d4_range[0]) / len(d4s)
    for i, d3 in enumerate(d3s):
        # merge vertical runs of equal labels into one rectangle
        j = 0
        while j < len(d4s):
            k = j
            while k + 1 < len(d4s) and labels[i, k + 1] == labels[i, j]:
                k += 1
            lab = labels[i, j]
            fig.rect(d3 - h3 / 2, d3 + h3 / 2, d4s[j] - h4 / 2, d4s[k] + h4 / 2,
                     fill=DOMAIN_COLOURS.get(lab, "#ffffff"), stroke="none",
                     **{"data-domain": lab})
            j = k + 1
    for name, pieces in surface_curves(r2, d3_range, d4_range, d2).items():
        for xs, ys in pieces:
            fig.polyline(xs, ys, parent=fig.overlay, stroke=SURFACE_COLOURS[name],
                         stroke_width=1.5, **{"class": "surface", "data-surface": name})
    ticks = [(v, f"{v:.3g}") for v in np.linspace(d3_range[0], d3_range[1], 5)]
    yticks = [(v, f"{v:.3g}") for v in np.linspace(d4_range[0], d4_range[1], 5)]
    fig.ticks(ticks, yticks)
    fig.legend([(k, v) for k, v in DOMAIN_COLOURS.items()]
               + [(k, v) for k, v in SURFACE_COLOURS.items()])
    return fig.tostring()


def cmd_sweep(args):
    start = time.perf_counter()
    d3_range, d4_range = tuple(args.d3_range), tuple(args.d4_range)
    for lo, hi in (d3_range, d4_range):
        if not (0 <= lo < hi):
            raise UsageError("ranges must satisfy 0 <= lo < hi")
    d3s, d4s, labels, cusp = sweep_labels(args.r2, args.resolution, d3_range, d4_range,
                                          args.d2, args.empirical)
    paths = _artifact_paths(args.out, args.format)
    written = []
    if "csv" in paths:
        rows = [(float(d3s[i]), float(d4s[j]), labels[i, j],
                 "true" if cusp[i, j] else "false")
                for i in range(len(d3s)) for j in range(len(d4s))]
        written.append(_write(paths["csv"], _csv_text(["d3", "d4", "domain", "cuspidal"],
                                                      rows)))
    if "svg" in paths:
        written.append(_write(paths["svg"], sweep_svg(d3s, d4s, labels, args.r2,
                                                      d3_range, d4_range, args.d2)))
    values, counts = np.unique(labels, return_counts=True)
    payload = {
        "r2": args.r2, "d2": args.d2, "resolution": args.resolution,
        "d3_range": list(d3_range), "d4_range": list(d4_range),
        "empirical": args.empirical,
        "label_counts": {str(v): int(c) for v, c in zip(values, counts)},
        "run": _run_block(args, start, written),
    }
    sys.stdout.write(dumps(payload))
    return EXIT_OK


# -- check -----------------------------------------------------------------------

def random_designs(n, seed, low=0.1, high=4.0, d2=1.0):
    """``n`` designs with d3, d4, r2 uniform in ``(low, high]``."""
    rng = np.random.default_rng(seed)
    draws = high - rng.uniform(0.0, high - low, size=(n, 3))
    return [DhParams(d2, *map(float, row)) for row in draws]


def check_design(params):
    """Agreement invariants for one design.

    Returns ``(status, detail)`` with status ``"ok"``, ``"nongeneric"``,
    ``"inconclusive"`` (oracle count unstable) or ``"fail"``.
    """
    detail = {"params": _params_dict(params)}
    try:
        domain = classify_domain(params)
        cusps = find_cusps(params)
    except NonGenericError as exc:
        detail["reason"] = str(exc)
        return "nongeneric", detail
    try:
        ev = domain_evidence(params)
    except UnstableCountError as exc:
        detail["counts_by_tol"] = {fmt(k): v for k, v in exc.counts.items()}
        return "inconclusive", detail
    matches = match_semantics(ev.arity, ev.cusp_count, ev.cusps_split, ev.has_hole)
    cuspidal = is_cuspidal(params)
    checks = {
        "domain_agrees": matches == [domain],
        "cuspidal_iff_cusps": cuspidal == (len(cusps) >= 1),
        "cusp_count_matches_domain": len(cusps) == domain.semantics.cusp_count,
        "oracle_cusp_count_agrees": ev.cusp_count == len(cusps),
    }
    detail.update({
        "domain_analytic": str(domain),
        "domain_empirical": [str(m) for m in matches],
        "cuspidal": cuspidal,
        "cusp_count": len(cusps),
        "evidence": {"arity": ev.arity, "cusp_count": ev.cusp_count,
                     "cusps_split": ev.cusps_split, "has_hole": ev.has_hole},
        "checks": checks,
    })
    return ("ok" if all(checks.values()) else "fail"), detail


def c1_verdict(d2=1.0, d3=2.0, r2=1.0):
    """Which closed form of C1 the observed appearance of cusps follows."""
    empirical = transition_bisect(d2, d3, r2, "C1")
    forms = {v: surfaces(d2, d3, r2, v).c1 for v in ("standard", "alternative")}
    rel = {v: abs(empirical - c) / c for v, c in forms.items()}
    best = min(rel, key=rel.get)
    return {"d2": d2, "d3": d3, "r2": r2, "empirical": empirical,
            "forms": forms, "relative_error": rel,
            "verdict": best if rel[best] <= 1e-3 else None}


def run_check(designs, max_inconclusive=0.05, with_c1=True):
    tally = {"ok": 0, "nongeneric": 0, "inconclusive": 0, "fail": 0}
    failures, flagged = [], []
    for p in designs:
        status, detail = check_design(p)
        tally[status] += 1
        if status == "fail":
            failures.append(detail)
        elif status != "ok":
            flagged.append(dict(detail, status=status))
    result = {"draws": len(designs), "tally": tally, "failures": failures,
              "flagged": flagged}
    passed = not failures and tally["inconclusive"] <= max_inconclusive * max(len(designs), 1)
    if with_c1:
        c1 = c1_verdict()
        result["c1_check"] = c1
        passed = passed and c1["verdict"] == "standard"
    result["passed"] = passed
    return result


def cmd_check(args):
    start = time.perf_counter()
    designs = random_designs(args.draws, args.seed)
    result = run_check(designs)
    result["seed"] = args.seed
    result["run"] = _run_block(args, start, [str(args.out)] if args.out else [],
                               seed=args.seed)
    text = dumps(result)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if result["passed"] else EXIT_VALIDATION


# -- fk / ik ------------------------------------------------------------------------

def cmd_fk(args):
    start = time.perf_counter()
    angles = np.array([args.theta1, args.theta2, args.theta3], dtype=float)
    if args.degrees:
        angles = np.deg2rad(angles)
    params = _params(args)
    q = JointConfig(*angles)
    p = forward_kinematics(params, q)
    payload = {"params": _params_dict(params),
               "joints": {"theta1": q.theta1, "theta2": q.theta2, "theta3": q.theta3},
               "point": {"x": p.x, "y": p.y, "z": p.z},
               "rho": float(np.hypot(p.x, p.y)),
               "run": _run_block(args, start)}
    sys.stdout.write(dumps(payload))
    return EXIT_OK


def cmd_ik(args):
    start = time.perf_counter()
    params = _params(args)
    res = solve_ik(params, CartesianPoint(args.x, args.y, args.z))
    payload = {"params": _params_dict(params),
               "point": {"x": args.x, "y": args.y, "z": args.z},
               "count": len(res),
               "solutions": [{"theta1": q.theta1, "theta2": q.theta2, "theta3": q.theta3,
                              "multiplicity": m}
                             for q, m in zip(res.solutions, res.multiplicities)],
               "near_singular": res.near_singular,
               "double_root": res.double_root,
               "run": _run_block(args, start)}
    sys.stdout.write(dumps(payload))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="cusp3r",
                     description="Workspace topology of orthogonal 3R manipulators.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    lengths = _Parser(add_help=False)
    lengths.add_argument("--d2", type=_positive, default=1.0, help="default 1")
    lengths.add_argument("--d3", type=_positive, required=True)
    lengths.add_argument("--d4", type=_positive, required=True)
    lengths.add_argument("--r2", type=_nonnegative, required=True)

    def common(p, fmt_choices, out_required=False, samples=1024):
        p.add_argument("--out", required=out_required,
                       help="output file (or stem for SVG + CSV pairs)")
        p.add_argument("--format", choices=fmt_choices, default=None)
        p.add_argument("--samples", type=_samples, default=samples,
                       help="theta2 samples along each singular curve")

    p = sub.add_parser("classify", parents=[lengths], help="domain, cusps, cuspidality")
    common(p, ["json"], samples=2048)
    p.add_argument("--empirical", action="store_true",
                   help="also label the design with the brute-force oracle")
    p.add_argument("--margin", type=_positive, default=1e-6,
                   help="relative distance to a surface treated as on it")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("plot-jointspace", parents=[lengths],
                       help="singular curves and lines in (theta2, theta3)")
    common(p, ["json", "svg", "csv"], out_required=True)
    p.set_defaults(func=cmd_plot_jointspace)

    p = sub.add_parser("plot-workspace", parents=[lengths],
                       help="half cross-section with boundaries, cusps, isolated points")
    common(p, ["json", "svg", "csv"], out_required=True)
    p.set_defaults(func=cmd_plot_workspace)

    p = sub.add_parser("sweep", help="domain map over (d3, d4) at fixed r2")
    p.add_argument("--d2", type=_positive, default=1.0)
    p.add_argument("--r2", type=_nonnegative, default=1.0)
    p.add_argument("--resolution", type=_resolution, default=200)
    p.add_argument("--d3-range", type=_nonnegative, nargs=2, default=(0.0, 4.0),
                   metavar=("LO", "HI"))
    p.add_argument("--d4-range", type=_nonnegative, nargs=2, default=(0.0, 4.0),
                   metavar=("LO", "HI"))
    p.add_argument("--empirical", action="store_true",
                   help="label cells with the oracle (slow)")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["json", "svg", "csv"], default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", help="oracle agreement on seeded random designs")
    p.add_argument("--draws", type=_count, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json"], default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fk", parents=[lengths], help="forward kinematics")
    for name in ("--theta1", "--theta2", "--theta3"):
        p.add_argument(name, type=_finite, required=True)
    p.add_argument("--degrees", action="store_true", help="joint angles in degrees")
    p.set_defaults(func=cmd_fk)

    p = sub.add_parser("ik", parents=[lengths], help="all inverse kinematic solutions")
    for name in ("--x", "--y", "--z"):
        p.add_argument(name, type=_finite, required=True)
    p.set_defaults(func=cmd_ik)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonGenericWarning)
            return args.func(args)
    except NonGenericError as exc:
        sys.stderr.write(f"non-generic parameters: {exc}\n")
        return EXIT_NONGENERIC
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"cusp3r: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
