"""Command-line front end.

Every subcommand ingests CSV, builds relevance/support arrays, computes
cohesion and writes::

    cohesion.csv     full cohesion matrix (labels in first row and column)
    depths.csv       label,local_depth
    threshold.json   threshold bound, exact threshold, conservation residual
    graph.<ext>      strong-tie graph in each requested format

Defaults can be overridden through ``PALD_*`` environment variables (see
``pald --help``).  Failures exit nonzero and print ``error[<category>]``.
"""

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .classical import (check_dissimilarity, classical_cohesion, relevance_from_distances,
                        support_from_distances)
from .combine import combine_distances, combine_triplet_arrays
from .core import DENSE_CAP, cohesion, conservation_residual, local_depths, threshold_bound, threshold_exact
from .errors import ConfigError, ConservationError, IngestError, PaldError
from .event import EXACT_LIMIT, MC_SAMPLES, EventTable, competitiveness, event_arrays, signed_differential
from .graph import FORMATS, export, layout, strong_graph
from .structure import (concentration_profile, equivalent_ordinal_structure, is_concentrated,
                        is_sufficiently_separated)
from .uncertain import (UncertainPoints1D, sweep_records, uncertain_arrays, uncertain_arrays_mc)

log = logging.getLogger("pald")

PIPELINES = ("distances", "combine-d", "combine-rq", "events", "uncertain")
EXIT_CODES = {
    "config": 2,
    "ingest": 3,
    "dimension": 4,
    "validation": 4,
    "invalid-pair": 4,
    "conservation": 5,
    "io": 6,
    "error": 1,
}


# -- ingestion -------------------------------------------------------------------

def _text(data):
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise IngestError(f"input is not UTF-8: {exc}") from None
    return data


def _rows(data):
    return [row for row in csv.reader(io.StringIO(_text(data))) if any(c.strip() for c in row)]


def _number(cell, where):
    try:
        value = float(cell)
    except ValueError:
        raise IngestError(f"non-numeric cell {cell!r} at {where}") from None
    if not math.isfinite(value):
        raise IngestError(f"non-finite cell {cell!r} at {where}")
    return value


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def parse_distance_csv(data):
    """Square labelled matrix -> ``(labels, D)``; asymmetric tables are fine."""
    rows = _rows(data)
    if not rows:
        raise IngestError("empty distance table")
    labels = [c.strip() for c in rows[0][1:]]
    n = len(labels)
    if n == 0:
        raise IngestError("distance table header has no labels")
    if len(set(labels)) != n:
        dupes = sorted({lab for lab in labels if labels.count(lab) > 1})
        raise IngestError(f"duplicate labels: {', '.join(dupes)}")
    if len(rows) - 1 != n:
        raise IngestError(f"expected {n} data rows for {n} labels, found {len(rows) - 1}")
    D = np.empty((n, n))
    for i, row in enumerate(rows[1:]):
        line = i + 2
        if len(row) != n + 1:
            raise IngestError(f"line {line}: ragged row with {len(row)} cells, expected {n + 1}")
        if row[0].strip() != labels[i]:
            raise IngestError(f"line {line}: row label {row[0].strip()!r} does not match column label {labels[i]!r}")
        for j, cell in enumerate(row[1:]):
            D[i, j] = _number(cell, f"line {line}, row {labels[i]!r}, column {labels[j]!r}")
    return labels, D


def parse_event_csv(data):
    """Long-format events ``x,y,value[,weight]`` (header row required)."""
    rows = _rows(data)
    if not rows:
        raise IngestError("empty event table")
    header = [c.strip().lower() for c in rows[0]]
    if len(header) not in (3, 4) or _is_number(rows[0][2]):
        raise IngestError("event table needs a header row: x,y,value[,weight]")
    records = []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise IngestError(f"line {line}: expected {len(header)} cells, found {len(row)}")
        value = _number(row[2], f"line {line}, column 'value'")
        if value < 0:
            raise IngestError(f"line {line}: event values must be nonnegative")
        weight = _number(row[3], f"line {line}, column 'weight'") if len(row) == 4 else 1.0
        if weight <= 0:
            raise IngestError(f"line {line}: nonpositive weight {weight}")
        records.append((row[0].strip(), row[1].strip(), value, weight))
    return EventTable.from_records(records)


def parse_score_csv(data):
    """Game scores ``x,y,score_x,score_y`` -> ``(EventTable, node_values)``.

    Each game becomes one competitiveness event; node values are each
    entity's mean signed proportional point differential.
    """
    rows = _rows(data)
    if not rows or len(rows[0]) != 4 or _is_number(rows[0][2]):
        raise IngestError("score table needs a header row: x,y,score_x,score_y")
    records = []
    diffs = {}
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != 4:
            raise IngestError(f"line {line}: expected 4 cells, found {len(row)}")
        x, y = row[0].strip(), row[1].strip()
        sx = _number(row[2], f"line {line}, column 'score_x'")
        sy = _number(row[3], f"line {line}, column 'score_y'")
        try:
            records.append((x, y, competitiveness(sx, sy), 1.0))
        except PaldError as exc:
            raise IngestError(f"line {line}: {exc}") from None
        diffs.setdefault(x, []).append(signed_differential(sx, sy))
        diffs.setdefault(y, []).append(signed_differential(sy, sx))
    table = EventTable.from_records(records)
    values = [math.fsum(diffs[lab]) / len(diffs[lab]) for lab in table.labels]
    return table, values


def parse_points_csv(data):
    """``label,value[,value...]`` rows (optional header) -> ``(labels, points)``."""
    rows = _rows(data)
    if rows and len(rows[0]) >= 2 and not _is_number(rows[0][1]):
        rows = rows[1:]
    if len(rows) < 2:
        raise IngestError("need at least two points")
    width = len(rows[0])
    labels, pts = [], []
    for line, row in enumerate(rows, start=1):
        if len(row) != width or width < 2:
            raise IngestError(f"line {line}: ragged row")
        labels.append(row[0].strip())
        pts.append([_number(c, f"line {line}, column {k + 2}") for k, c in enumerate(row[1:])])
    if len(set(labels)) != len(labels):
        raise IngestError("duplicate point labels")
    return labels, np.array(pts)


def format_matrix_csv(labels, M):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["", *labels])
    for label, row in zip(labels, M):
        writer.writerow([label, *(repr(float(v)) for v in row)])
    return buf.getvalue()


# -- configuration -------------------------------------------------------------

def _env(name, default, cast):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        raise ConfigError(f"environment variable {name}={raw!r} is not valid") from None


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _threshold(text):
    if text == "auto":
        return text
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("threshold must be 'auto' or a number") from None
    if value < 0:
        raise argparse.ArgumentTypeError("threshold must be nonnegative")
    return value


def _formats(text):
    fmts = [f.strip() for f in text.split(",") if f.strip()]
    for f in fmts:
        if f not in FORMATS:
            raise argparse.ArgumentTypeError(f"unknown format {f!r}; choose from {', '.join(FORMATS)}")
    return fmts


@dataclass
class RunConfig:
    pipeline: str
    inputs: list
    out_dir: Path
    weights: list = None
    sweep_last: list = None
    layout_source: int = None
    epsilon: float = None
    epsilon_sweep: list = None
    monte_carlo: bool = False
    from_scores: bool = False
    independent_draws: bool = False
    seed: int = None
    mc_samples: int = MC_SAMPLES
    exact_limit: int = EXACT_LIMIT
    threshold: object = "auto"
    formats: list = field(default_factory=lambda: ["json", "edge-csv"])
    jobs: int = 1
    dense_cap: int = DENSE_CAP
    layout_iterations: int = 300

    def __post_init__(self):
        if self.pipeline not in PIPELINES:
            raise ConfigError(f"unknown pipeline {self.pipeline!r}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if self.pipeline in ("combine-d", "combine-rq"):
            if self.weights is None:
                self.weights = [1.0] * len(self.inputs)
            if len(self.weights) != len(self.inputs):
                raise ConfigError(f"{len(self.inputs)} inputs but {len(self.weights)} weights")
        if self.pipeline == "uncertain":
            if (self.epsilon is None) == (self.epsilon_sweep is None):
                raise ConfigError("give exactly one of --epsilon or --epsilon-sweep")
            if self.monte_carlo and self.seed is None:
                raise ConfigError("Monte Carlo uncertainty needs --seed")


# -- pipeline steps ------------------------------------------------------------

def _read(path):
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data if isinstance(data, bytes) else data.encode("utf-8"))


def _check_conservation(C, where=""):
    n = C.shape[0]
    resid = conservation_residual(C)
    log.info("conservation%s: sum C = %.15g, n/2 = %g, residual = %.3g", where, float(C.sum()), n / 2, resid)
    if resid > 1e-9 * n:
        raise ConservationError(f"total cohesion deviates from n/2 by {resid:.3g}")
    return resid


def _write_result(out, labels, C, t_exact, cfg, node_values=None, coords=None):
    resid = _check_conservation(C, f" [{out.name}]")
    _write(out / "cohesion.csv", format_matrix_csv(labels, C))
    depths = local_depths(C)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "local_depth"])
    for label, d in zip(labels, depths):
        writer.writerow([label, repr(float(d))])
    _write(out / "depths.csv", buf.getvalue())
    report = {
        "n": len(labels),
        "threshold_bound": threshold_bound(C),
        "threshold_exact": t_exact,
        "total_cohesion": math.fsum(C.ravel()),
        "conservation_residual": resid,
    }
    _write(out / "threshold.json", json.dumps(report, indent=2) + "\n")
    G = strong_graph(C, labels, cfg.threshold, node_values)
    log.info("%d strong ties above threshold %.6g", len(G.edges), G.threshold)
    if "svg" in cfg.formats and coords is None:
        coords = layout(G, seed=cfg.seed or 0, iterations=cfg.layout_iterations)
    for fmt in cfg.formats:
        ext = {"edge-csv": "edges.csv"}.get(fmt, fmt)
        _write(out / f"graph.{ext}", export(G, fmt, coords))
    return G


def _sweep_dir(prefix, value):
    return f"{prefix}_{format(value, 'g')}"


def _run_distances(cfg):
    labels, D = parse_distance_csv(_read(cfg.inputs[0]))
    R = relevance_from_distances(D, dense_cap=cfg.dense_cap)
    Q = support_from_distances(D, dense_cap=cfg.dense_cap)
    C = classical_cohesion(D, jobs=cfg.jobs, dense_cap=cfg.dense_cap)
    t = threshold_exact(R, Q, jobs=cfg.jobs, validate=False)
    _write_result(cfg.out_dir, labels, C, t, cfg)


def _load_matrices(cfg):
    tables = [parse_distance_csv(_read(p)) for p in cfg.inputs]
    labels = tables[0][0]
    for path, (other, _) in zip(cfg.inputs, tables):
        if other != labels:
            raise IngestError(f"{path}: labels differ from {cfg.inputs[0]}")
    return labels, [D for _, D in tables]


def _run_combine(cfg):
    labels, Ds = _load_matrices(cfg)
    weight_sets = [(None, list(cfg.weights))]
    if cfg.sweep_last:
        weight_sets = [(v, list(cfg.weights[:-1]) + [v]) for v in cfg.sweep_last]

    coords = None
    if cfg.layout_source is not None:
        k = cfg.layout_source - 1
        if not 0 <= k < len(Ds):
            raise ConfigError(f"--layout-source must be between 1 and {len(Ds)}")
        base = strong_graph(classical_cohesion(Ds[k], jobs=cfg.jobs, dense_cap=cfg.dense_cap), labels, cfg.threshold)
        coords = layout(base, seed=cfg.seed or 0, iterations=cfg.layout_iterations)

    if cfg.pipeline == "combine-rq":
        Rs = [relevance_from_distances(D, dense_cap=cfg.dense_cap) for D in Ds]
        Qs = [support_from_distances(D, dense_cap=cfg.dense_cap) for D in Ds]

    for value, w in weight_sets:
        log.info("weights %s", ",".join(format(x, "g") for x in w))
        if cfg.pipeline == "combine-d":
            D = combine_distances(Ds, w)
            R = relevance_from_distances(D, dense_cap=cfg.dense_cap)
            Q = support_from_distances(D, dense_cap=cfg.dense_cap)
        else:
            R = combine_triplet_arrays(Rs, w)
            Q = combine_triplet_arrays(Qs, w)
        C = cohesion(R, Q, jobs=cfg.jobs)
        t = threshold_exact(R, Q, jobs=cfg.jobs, validate=False)
        out = cfg.out_dir if value is None else cfg.out_dir / _sweep_dir("w", value)
        _write_result(out, labels, C, t, cfg, coords=coords)


def _run_events(cfg):
    data = _read(cfg.inputs[0])
    node_values = None
    if cfg.from_scores:
        table, node_values = parse_score_csv(data)
    else:
        table = parse_event_csv(data)
    if table.max_combinations() > cfg.exact_limit and cfg.seed is None:
        raise ConfigError("event lists exceed --exact-limit, so Monte Carlo is needed: pass --seed")
    R, Q = event_arrays(table, exact_limit=cfg.exact_limit, samples=cfg.mc_samples, seed=cfg.seed,
                        independent_draws=cfg.independent_draws, jobs=cfg.jobs)
    C = cohesion(R, Q, jobs=cfg.jobs)
    t = threshold_exact(R, Q, jobs=cfg.jobs, validate=False)
    _write_result(cfg.out_dir, list(table.labels), C, t, cfg, node_values=node_values)


def _run_uncertain(cfg):
    labels, pts = parse_points_csv(_read(cfg.inputs[0]))
    if pts.shape[1] > 1 and not cfg.monte_carlo:
        raise ConfigError("multi-dimensional points need --monte-carlo (and --seed)")
    eps_list = [cfg.epsilon] if cfg.epsilon is not None else list(cfg.epsilon_sweep)
    if any(e <= 0 for e in eps_list):
        raise ConfigError("epsilon values must be positive")
    if any(b <= a for a, b in zip(eps_list, eps_list[1:])):
        raise ConfigError("--epsilon-sweep must be strictly increasing")
    sweep = []
    for eps in eps_list:
        if cfg.monte_carlo:
            R, Q = uncertain_arrays_mc(pts, eps, samples=cfg.mc_samples, seed=cfg.seed, jobs=cfg.jobs)
        else:
            R, Q = uncertain_arrays(UncertainPoints1D(pts[:, 0], eps), jobs=cfg.jobs)
        C = cohesion(R, Q, jobs=cfg.jobs, tol=1e-6)
        t = threshold_exact(R, Q, jobs=cfg.jobs, validate=False)
        out = cfg.out_dir if cfg.epsilon is not None else cfg.out_dir / _sweep_dir("eps", eps)
        _write_result(out, labels, C, t, cfg)
        sweep.append((eps, C))
    if cfg.epsilon_sweep is not None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["epsilon", "x_label", "w_label", "cohesion"])
        for eps, xl, wl, c in sweep_records(sweep, labels):
            writer.writerow([repr(eps), xl, wl, repr(c)])
        _write(cfg.out_dir / "sweep.csv", buf.getvalue())


def run(cfg):
    """Execute one pipeline; raises :class:`PaldError` subclasses on failure."""
    {
        "distances": _run_distances,
        "combine-d": _run_combine,
        "combine-rq": _run_combine,
        "events": _run_events,
        "uncertain": _run_uncertain,
    }[cfg.pipeline](cfg)


def diagnose(path, set_a, set_b, tol=0.0):
    """Separation/concentration report for a labelled partition of a distance table."""
    labels, D = parse_distance_csv(_read(path))
    index = {lab: i for i, lab in enumerate(labels)}
    try:
        A = [index[a] for a in set_a]
        B = [index[b] for b in set_b]
    except KeyError as exc:
        raise IngestError(f"unknown label {exc.args[0]!r}") from None
    D = check_dissimilarity(D)
    R = relevance_from_distances(D)
    Q = support_from_distances(D)

    def show(check):
        if check:
            return {"holds": True}
        return {"holds": False, "condition": check.condition,
                "index": [labels[i] for i in check.index], "value": check.value}

    report = {
        "A_separated_from_B": show(is_sufficiently_separated(R, Q, A, B, tol=tol)),
        "B_separated_from_A": show(is_sufficiently_separated(R, Q, B, A, tol=tol)),
        "B_concentrated_wrt_A": show(is_concentrated(R, Q, A, B, tol=tol)),
        "A_concentrated_wrt_B": show(is_concentrated(R, Q, B, A, tol=tol)),
    }
    if report["B_concentrated_wrt_A"]["holds"]:
        f = concentration_profile(R, A, B)
        report["B_relevance_profile"] = {f"{labels[a]}|{labels[a2]}": float(f[i, j])
                                         for i, a in enumerate(A) for j, a2 in enumerate(A)}
    if len(A) == len(B):
        report["equivalent_ordinal_structure"] = show(equivalent_ordinal_structure(R, Q, A, B))
    return report


def export_from_csv(path, out_dir, formats, threshold="auto", seed=0, iterations=300, node_values=None):
    """Graph exports from a previously written ``cohesion.csv``."""
    labels, C = parse_distance_csv(_read(path))
    G = strong_graph(C, labels, threshold, node_values)
    coords = layout(G, seed=seed, iterations=iterations) if "svg" in formats else None
    for fmt in formats:
        ext = {"edge-csv": "edges.csv"}.get(fmt, fmt)
        _write(Path(out_dir) / f"graph.{ext}", export(G, fmt, coords))
    return G


# -- argument parsing ----------------------------------------------------------

def build_parser():
    jobs = _env("PALD_JOBS", 1, int)
    seed = _env("PALD_SEED", None, int)
    mc_samples = _env("PALD_MC_SAMPLES", MC_SAMPLES, int)
    exact_limit = _env("PALD_EXACT_LIMIT", EXACT_LIMIT, int)
    dense_cap = _env("PALD_DENSE_CAP", DENSE_CAP, int)
    formats = _env("PALD_FORMATS", "json,edge-csv", str)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", type=Path, default=Path("."),
                        help="output directory (default: current directory)")
    common.add_argument("--formats", type=_formats, default=_formats(formats),
                        help=f"graph formats from {','.join(FORMATS)} "
                             f"(default: {formats}; env PALD_FORMATS)")
    common.add_argument("--threshold", type=_threshold, default="auto",
                        help="strong-tie threshold: 'auto' (bound from the diagonal) or a number (default: auto)")
    common.add_argument("--jobs", type=int, default=jobs,
                        help=f"worker threads (default: {jobs}; env PALD_JOBS)")
    common.add_argument("--seed", type=int, default=seed,
                        help=f"random seed for Monte Carlo and layout (default: {seed}; env PALD_SEED)")
    common.add_argument("--mc-samples", type=int, default=mc_samples,
                        help=f"Monte Carlo samples per triple (default: {mc_samples}; env PALD_MC_SAMPLES)")
    common.add_argument("--exact-limit", type=int, default=exact_limit,
                        help=f"largest enumerated event combination count (default: {exact_limit}; env PALD_EXACT_LIMIT)")
    common.add_argument("--dense-cap", type=int, default=dense_cap,
                        help=f"largest n stored densely (default: {dense_cap}; env PALD_DENSE_CAP)")
    common.add_argument("--layout-iterations", type=int, default=300,
                        help="Fruchterman-Reingold iterations for svg output (default: 300)")

    parser = argparse.ArgumentParser(prog="pald", description="Generalized partitioned local depth (cohesion networks).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default="INFO", help="logging level (default: INFO)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distances", parents=[common], help="cohesion from one distance table")
    p.add_argument("input")

    for name, text in (("combine-d", "combine distance matrices, then cohesion"),
                       ("combine-rq", "combine relevance/support arrays, then cohesion")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("inputs", nargs="+")
        p.add_argument("--weights", type=_float_list, default=None,
                       help="relative nonnegative weights v1,v2,... (default: equal)")
        p.add_argument("--sweep-last", type=_float_list, default=None,
                       help="run once per value substituted for the last weight; outputs go to w_<value>/")
        p.add_argument("--layout-source", type=int, default=None,
                       help="1-based input whose own network fixes the svg layout")

    p = sub.add_parser("events", parents=[common], help="cohesion from per-pair event lists")
    p.add_argument("input")
    p.add_argument("--from-scores", action="store_true",
                   help="input rows are x,y,score_x,score_y game scores")
    p.add_argument("--independent-draws", action="store_true",
                   help="draw the x-y event separately for each half of the relevance test")

    p = sub.add_parser("uncertain", parents=[common], help="cohesion under uniform measurement noise")
    p.add_argument("input")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--epsilon", type=float)
    g.add_argument("--epsilon-sweep", type=_float_list)
    p.add_argument("--monte-carlo", action="store_true",
                   help="Monte Carlo instead of quadrature (required for multi-dimensional points)")

    p = sub.add_parser("diagnose", help="separation/concentration report for a partition")
    p.add_argument("input")
    p.add_argument("--set-a", required=True, help="comma-separated labels")
    p.add_argument("--set-b", required=True, help="comma-separated labels")
    p.add_argument("--tol", type=float, default=0.0)
    p.add_argument("--out-dir", type=Path, default=None)

    p = sub.add_parser("export", help="graph exports from a cohesion.csv")
    p.add_argument("input")
    p.add_argument("--out-dir", type=Path, default=Path("."))
    p.add_argument("--formats", type=_formats, default=_formats(formats))
    p.add_argument("--threshold", type=_threshold, default="auto")
    p.add_argument("--seed", type=int, default=seed or 0)
    p.add_argument("--layout-iterations", type=int, default=300)
    return parser


def config_from_args(args):
    kw = dict(
        pipeline=args.command,
        out_dir=args.out_dir,
        seed=args.seed,
        mc_samples=args.mc_samples,
        exact_limit=args.exact_limit,
        threshold=args.threshold,
        formats=args.formats,
        jobs=args.jobs,
        dense_cap=args.dense_cap,
        layout_iterations=args.layout_iterations,
    )
    if args.command in ("combine-d", "combine-rq"):
        kw.update(inputs=args.inputs, weights=args.weights, sweep_last=args.sweep_last,
                  layout_source=args.layout_source)
    else:
        kw["inputs"] = [args.input]
    if args.command == "events":
        kw.update(from_scores=args.from_scores, independent_draws=args.independent_draws)
    if args.command == "uncertain":
        kw.update(epsilon=args.epsilon, epsilon_sweep=args.epsilon_sweep, monte_carlo=args.monte_carlo)
    return RunConfig(**kw)


def main(argv=None):
    try:
        parser = build_parser()
    except PaldError as exc:
        print(f"pald: error[{exc.category}]: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.category, 1)
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.INFO),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)
    try:
        if args.command == "diagnose":
            report = diagnose(args.input, [s.strip() for s in args.set_a.split(",") if s.strip()],
                              [s.strip() for s in args.set_b.split(",") if s.strip()], args.tol)
            text = json.dumps(report, indent=2) + "\n"
            if args.out_dir is not None:
                _write(args.out_dir / "diagnose.json", text)
            sys.stdout.write(text)
        elif args.command == "export":
            export_from_csv(args.input, args.out_dir, args.formats, args.threshold, args.seed,
                            args.layout_iterations)
        else:
            run(config_from_args(args))
    except PaldError as exc:
        print(f"pald: error[{exc.category}]: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.category, 1)
    except ValueError as exc:
        print(f"pald: error[validation]: {exc}", file=sys.stderr)
        return EXIT_CODES["validation"]
    except OSError as exc:
        print(f"pald: error[io]: {exc}", file=sys.stderr)
        return EXIT_CODES["io"]
    return 0


if __name__ == "__main__":
    sys.exit(main())
