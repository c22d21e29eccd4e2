"""Command-line front end.

Usage::

    almostnorlund CONFIG.toml [--output PREFIX] [--verbose]

Writes ``PREFIX.csv`` (``PREFIX_<preset>.csv`` for ``corollaries``) and
``PREFIX.json``, prints a table to stderr and exits with

0 all checks passed, 1 a check failed, 2 configuration error, 3 numeric error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import RunConfig, parse_config
from .errors import ConfigError, NumericError
from .fourier import conjugate_function_pv, fourier_coefficients
from .lipnorms import grid
from .means import conjugate_transform
from .verify import corollary_suite, rate_experiment, reference_conjugate
from .weights import build_convolution, check_regularity, classify_variation

log = logging.getLogger("almostnorlund")

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
# smallest horizon for the numerical regularity check in ``means``
REGULARITY_HORIZON = 256


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, (int, str)) else repr(float(v)) for v in row])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


# commands ------------------------------------------------------------------------
# each returns (passed, {suffix: csv_text}, summary_dict, table_lines)


def _classify(cfg: RunConfig):
    c = cfg.classify
    rep = classify_variation(cfg.build_sequence(), c.variation_class, c.N, c.tail_horizon, c.K)
    rows = [(n, s, d, s / d) for n, s, d in zip(rep.n_values, rep.sums, rep.denominators)]
    summary = {"sequence": cfg.sequence, **rep.summary(), "pass": rep.holds}
    table = [f"{k:>22}: {v}" for k, v in summary.items()]
    return rep.holds, {"": _csv(("n", "variation_sum", "c_n", "ratio"), rows)}, summary, table


def _conjugate(cfg: RunConfig):
    f = cfg.build_signal()
    x = grid(cfg.verify.x_points)
    res = conjugate_function_pv(f, x, cfg.build_pv())
    ref = f.exact_conjugate(x) if f.exact_conjugate is not None else None
    tol = cfg.verify.pv_tolerance
    if ref is not None:
        diff = np.abs(res.value - ref)
        passed = bool(np.all(diff <= tol))
        rows = zip(x, res.value, res.error, ref, diff)
        header = ("x", "pv_value", "pv_error_estimate", "reference", "abs_difference")
        worst = float(diff.max())
    else:
        passed = bool(np.all(res.error <= tol))
        rows = zip(x, res.value, res.error)
        header = ("x", "pv_value", "pv_error_estimate")
        worst = float(res.error.max())
    summary = {"signal": cfg.signal, "points": len(x), "max_deviation": worst,
               "tolerance": tol, "reference": ref is not None, "pass": passed}
    table = [f"{k:>14}: {v}" for k, v in summary.items()]
    return passed, {"": _csv(header, rows)}, summary, table


def _means(cfg: RunConfig):
    f = cfg.build_signal()
    spec = cfg.build_method()
    nmax = cfg.n_values[-1]
    shift = spec.r_shift if spec.mode == "almost" else 0
    if f.exact_expansion is not None:
        e = f.exact_expansion(nmax + shift)
    else:
        e = fourier_coefficients(f, nmax + shift, cfg.quadrature.coefficient_grid)
    x = grid(cfg.verify.x_points)
    conj = reference_conjugate(f, cfg.build_pv())(x)
    reg = check_regularity(spec.p, spec.q, max(nmax, REGULARITY_HORIZON))
    table_ = build_convolution(spec.p, spec.q, nmax)
    rows, table = [], []
    for n in cfg.n_values:
        vals = conjugate_transform(e, spec, n, x)
        rows.extend((n, xi, v, c, v - c) for xi, v, c in zip(x, vals, conj))
        worst = float(np.max(np.abs(vals - conj)))
        table.append(f"n={n:>6}  R_n={table_.R[n]:.6g}  max|f~ - t~_n|={worst:.6g}")
    passed = bool(reg.vanishing_verified and math.isfinite(reg.bounded_ratio))
    summary = {"signal": cfg.signal, "method": spec.name, "mode": spec.mode,
               "r_shift": spec.r_shift, "bounded_ratio": reg.bounded_ratio,
               "vanishing_verified": reg.vanishing_verified, "pass": passed}
    return passed, {"": _csv(("n", "x", "transform", "reference", "difference"), rows)}, \
        summary, table + [f"{k:>18}: {v}" for k, v in summary.items()]


def _rate_kwargs(cfg: RunConfig):
    q = cfg.quadrature
    return dict(x_grid=q.grid_points, slope_tolerance=cfg.verify.slope_tolerance,
                coefficient_grid=q.coefficient_grid, pv=cfg.build_pv())


def _report_table(rep):
    lines = [f"[{rep.label or 'rates'}] {rep.signal} | {rep.method} | r={rep.norm_r} "
             f"| normalizer {rep.normalizer}_n",
             f"{'n':>7} {'R_n':>12} {'P_n':>12} {'Q_n':>12} {'error':>14}"]
    for n, R, P, Q, err, _ in rep.rows():
        lines.append(f"{n:>7} {R:>12.6g} {P:>12.6g} {Q:>12.6g} {err:>14.6g}")
    slope = "n/a" if rep.fitted_slope is None else f"{rep.fitted_slope:.4f}"
    lines.append(f"fitted slope {slope}  theoretical {rep.theoretical_slope:.4f}  "
                 f"tolerance {rep.slope_tolerance}  degenerate {rep.degenerate}  "
                 f"pass {rep.passed}")
    return lines


def _rates(cfg: RunConfig):
    rep = rate_experiment(cfg.build_signal(), cfg.build_method(), cfg.build_lip(),
                          cfg.n_values, **_rate_kwargs(cfg))
    return rep.passed, {"": rep.to_csv()}, rep.summary(), _report_table(rep)


def _corollaries(cfg: RunConfig):
    spec = cfg.build_method()
    reports = corollary_suite(cfg.build_signal(), cfg.build_lip(), cfg.n_values, spec.p, spec.q,
                              spec.mode, spec.r_shift, **_rate_kwargs(cfg))
    files = {f"_{r.label}": r.to_csv() for r in reports}
    summary = {"reports": [r.summary() for r in reports],
               "pass": all(r.passed for r in reports)}
    table = [line for r in reports for line in _report_table(r) + [""]]
    return summary["pass"], files, summary, table


COMMANDS = {
    "classify": _classify,
    "conjugate": _conjugate,
    "means": _means,
    "rates": _rates,
    "corollaries": _corollaries,
}


def run(cfg: RunConfig, stderr=None) -> int:
    """Execute ``cfg``, write its outputs and return the exit status."""
    stderr = stderr or sys.stderr
    try:
        passed, files, summary, table = COMMANDS[cfg.command](cfg)
    except NumericError as exc:
        print(f"numeric error ({type(exc).__name__}): {exc}", file=stderr)
        return EXIT_NUMERIC
    prefix = Path(cfg.output)
    try:
        prefix.parent.mkdir(parents=True, exist_ok=True)
        for suffix, text in files.items():
            with open(f"{prefix}{suffix}.csv", "w", newline="\n", encoding="utf-8") as fh:
                fh.write(text)
        with open(f"{prefix}.json", "w", newline="\n", encoding="utf-8") as fh:
            json.dump(_jsonable({"command": cfg.command, **summary}), fh, indent=2,
                      sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"cannot write output: {exc}", file=stderr)
        return EXIT_CONFIG
    for line in table:
        print(line, file=stderr)
    print("PASS" if passed else "FAIL", file=stderr)
    return EXIT_PASS if passed else EXIT_FAIL


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="almostnorlund",
        description="Almost generalized Norlund means of conjugate Fourier series.")
    parser.add_argument("config", help="TOML run configuration")
    parser.add_argument("--output", help="output path prefix (overrides the config)")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        text = Path(args.config).read_text(encoding="utf-8")
        cfg = parse_config(text)
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.output:
        cfg = replace(cfg, output=args.output)
    log.info("running %s (backend %s)", cfg.command, _backend())
    return run(cfg)


def _backend():
    from . import _kernels
    return _kernels.BACKEND


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
