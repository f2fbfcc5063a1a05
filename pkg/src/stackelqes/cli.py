"""Command-line front end.

Exit codes: 0 ok, 1 verification or check failed, 2 invalid input,
3 not algebraizable, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .exceptions import (ClosureViolation, EvaluationOutOfDomain, InvalidParams, NonConvergence,
                         NotAlgebraizable, ZeroVector)
from .models import MODEL_IDS, MODELS, build, catalog
from .operator_core import HeunOperator
from .report import FLOAT_FORMAT, dumps, eigenpair_rows, solve_report, sweep_rows, write_csv
from .sl2 import DEFAULT_TOL, check_algebraizable, find_all_n
from .verification import (FD_POINTS, FD_R_MAX, Grid, default_grid, duality_check, fd_convergence,
                           fd_spectrum, ode_residual)

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

log = logging.getLogger("stackelqes")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ALGEBRA, EXIT_NUMERIC = 0, 1, 2, 3, 4
FD_TOL = 1e-3
HEUN_NAMES = [f"a{i}" for i in range(5)] + [f"b{i}" for i in range(4)] + [f"c{i}" for i in range(3)]


class UsageError(Exception):
    pass


def _setup_logging():
    level = {"debug": logging.DEBUG, "info": logging.INFO, "warn": logging.WARNING,
             "warning": logging.WARNING}.get(os.environ.get("QES_LOG", "warn").lower(), logging.WARNING)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("stackelqes")
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------

def _parse_value(text: str):
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        out[name.strip()] = value.strip()
    return out


def _load_config(path) -> dict:
    if not path:
        return {}
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"bad config {path}: {exc}") from None


def _settings(args) -> dict:
    """Merge config file values with command-line flags (flags win)."""
    cfg = _load_config(getattr(args, "config", None))
    model_cfg = cfg.get("model", {})
    params = {k: str(v) for k, v in cfg.get("params", {}).items()}
    params.update(_parse_params(getattr(args, "param", None)))
    solver = cfg.get("solver", {})
    verify = cfg.get("verify", {})
    model = args.model or model_cfg.get("id") or model_cfg.get("name")
    n = args.n if args.n is not None else model_cfg.get("n")
    tol = args.tol if args.tol is not None else solver.get("tol", DEFAULT_TOL)
    grid = args.grid if getattr(args, "grid", None) else verify.get("grid")
    return {"model": model, "n": n, "params": params, "tol": float(tol), "grid": grid,
            "verify": verify}


def _require_model(model):
    if not model:
        raise UsageError("--model is required")
    if model not in MODELS:
        raise UsageError(f"unknown model {model!r}; choose from {', '.join(MODEL_IDS)}")
    return model


def _single_n(n) -> int:
    if n is None:
        raise UsageError("--n is required")
    try:
        value = float(n)
    except (TypeError, ValueError):
        raise UsageError(f"--n must be a nonnegative integer, got {n!r}") from None
    if value != int(value) or value < 0:
        raise UsageError(f"--n must be a nonnegative integer, got {n!r}")
    return int(value)


def _n_range(n) -> list[int]:
    """``"3"`` or inclusive ``"lo:hi"``; ``hi < lo`` gives an empty range."""
    if n is None:
        raise UsageError("--n is required")
    text = str(n)
    if ":" not in text:
        return [_single_n(text)]
    lo, hi = (part.strip() for part in text.split(":", 1))
    lo_n, hi_n = _single_n(lo), _single_n(hi) if hi else None
    if hi_n is None:
        raise UsageError("--n range needs an upper bound")
    return list(range(lo_n, hi_n + 1))


def _param_axis(value: str) -> list[float]:
    """``"x"``, ``"x1,x2,..."`` or ``"start:stop:count"`` (inclusive linspace)."""
    if "," in value:
        return [_parse_value(v) for v in value.split(",") if v.strip()]
    if value.count(":") == 2:
        lo, hi, cnt = value.split(":")
        count = _parse_value(cnt)
        if count != int(count) or count < 0:
            raise UsageError(f"bad count in {value!r}")
        return [float(v) for v in np.linspace(_parse_value(lo), _parse_value(hi), int(count))]
    return [_parse_value(value)]


def _grid(text) -> Grid | None:
    if not text:
        return None
    try:
        return Grid.parse(str(text))
    except (ValueError, EvaluationOutOfDomain) as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# psi sampling
# --------------------------------------------------------------------------

def _write_psi(problem, report, grid, directory, tag):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    sol = problem.solve()
    written = []
    for i, (lam, y, flag) in enumerate(zip(sol.eigenvalues, sol.eigen_polys, report["flags"])):
        if not flag["physical"]:
            continue
        use = grid or default_grid(problem, lam)
        r = use.nodes()
        psi = problem.wavefunction(y, lam)(r)
        lines = ["r\tpsi"] + [f"{format(float(a), FLOAT_FORMAT)}\t{format(float(b), FLOAT_FORMAT)}"
                              for a, b in zip(r, psi)]
        path = directory / f"psi_{tag}_k{i}.tsv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(str(path))
    for path in written:
        log.info("wrote %s", path)
    return written


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_catalog(args) -> int:
    entries = catalog()
    if args.format == "csv":
        rows = [{"model": e["model"], "variable": e["variable"],
                 "multiplier_exponent": e["multiplier_exponent"],
                 "eigenvalue_role": e["eigenvalue_role"],
                 "constrained_parameter": e["constrained_parameter"],
                 "params": [p["name"] for p in e["params"]]} for e in entries]
        _emit(write_csv(list(rows[0]), rows), args.out)
    else:
        _emit(dumps(entries) + "\n", args.out)
    return EXIT_OK


def _tag(model, n, index=None):
    return f"{model}_n{n}" if index is None else f"{model}_{index:04d}_n{n}"


def cmd_solve(args) -> int:
    s = _settings(args)
    model = _require_model(s["model"])
    n = _single_n(s["n"])
    problem = build(model, s["params"], n, s["tol"])
    if not problem.certificate.passed:
        raise NotAlgebraizable(f"residuals {problem.certificate.residuals}")
    report = solve_report(problem, s["tol"])
    if args.format == "csv":
        header, rows = eigenpair_rows(report)
        _emit(write_csv(header, rows), args.out)
    else:
        _emit(dumps(report) + "\n", args.out)
    if args.emit_psi:
        _write_psi(problem, report, _grid(s["grid"]), args.emit_psi, _tag(model, n))
    return EXIT_OK


def _heun_from_args(args, params) -> HeunOperator:
    values = [0.0] * 12
    if args.coeffs:
        parts = [p for p in args.coeffs.replace(" ", "").split(",") if p]
        if len(parts) != 12:
            raise UsageError(f"--coeffs needs 12 values a0..a4,b0..b3,c0..c2, got {len(parts)}")
        values = [_parse_value(p) for p in parts]
    for name, value in params.items():
        if name not in HEUN_NAMES:
            raise UsageError(f"unknown coefficient {name!r}; use a0..a4, b0..b3, c0..c2")
        values[HEUN_NAMES.index(name)] = _parse_value(value)
    return HeunOperator.from_coefficients(values)


def cmd_check(args) -> int:
    cfg = _load_config(args.config)
    params = {k: str(v) for k, v in cfg.get("params", {}).items()}
    params.update(_parse_params(args.param))
    tol = args.tol if args.tol is not None else cfg.get("solver", {}).get("tol", DEFAULT_TOL)
    h = _heun_from_args(args, params)
    coeffs = dict(zip(HEUN_NAMES, h.coefficients()))
    if args.scan is not None:
        found = find_all_n(h, int(args.scan), tol)
        out = {"coefficients": coeffs, "scan_max": int(args.scan), "tol": tol,
               "algebraizable_n": found, "passed": bool(found)}
    else:
        n = _single_n(args.n if args.n is not None else cfg.get("model", {}).get("n"))
        cert = check_algebraizable(h, n, tol)
        out = {"coefficients": coeffs, **cert.as_dict()}
    if args.format == "csv":
        row = {k: v for k, v in out.items() if k != "coefficients"}
        row.update(coeffs)
        _emit(write_csv(list(row), [row]), args.out)
    else:
        _emit(dumps(out) + "\n", args.out)
    return EXIT_OK if out["passed"] else EXIT_FAIL


def cmd_verify(args) -> int:
    s = _settings(args)
    model = _require_model(s["model"])
    n = _single_n(s["n"])
    fam = MODELS[model]
    params = dict(s["params"])
    override = params.pop(fam.constrained, None)
    override = None if override is None else _parse_value(override)
    vcfg = s["verify"]
    tol = float(args.residual_tol if args.residual_tol is not None else vcfg.get("tol", 1e-8))
    fd_points = int(args.fd_points or vcfg.get("fd_points", FD_POINTS))
    fd_r_max = float(args.fd_r_max or vcfg.get("fd_r_max", FD_R_MAX))
    fd_tol = float(vcfg.get("fd_tol", FD_TOL))
    run_fd = fam.fd_supported and not args.no_fd and vcfg.get("fd", True)
    grid = _grid(s["grid"])

    problem = build(model, params, n, s["tol"])
    if not problem.certificate.passed:
        raise NotAlgebraizable(f"residuals {problem.certificate.residuals}")
    sol = problem.solve(s["tol"])
    pairs = []
    for i, (lam, y) in enumerate(zip(sol.eigenvalues, sol.eigen_polys)):
        if problem.verifiable(lam):
            pairs.append((i, lam, y, problem.interpret(lam)))
    if override is not None and pairs:
        # a supplied constrained value is checked against the eigenpair it is closest to
        pairs = [min(pairs, key=lambda p: abs(p[3].value - override))]

    results, ok = [], True
    for i, lam, y, rec in pairs:
        ode = ode_residual(problem, None, None, (lam, y), grid, tol, constrained_value=override)
        entry = {"index": i, "eigenvalue": lam, "constrained_parameter": rec.parameter,
                 "constrained_value": rec.value if override is None else override,
                 "ode_residual": ode.as_dict()}
        passed = ode.passed
        if override is None:
            dual = duality_check(problem, None, None, (lam, y), 100, 1e-9)
            entry["duality"] = dual.as_dict()
            passed = passed and dual.passed
        if run_fd and override is None:
            conv = fd_convergence(problem, None, None, lam, fd_points, fd_r_max)
        elif run_fd:
            levels = fd_spectrum(problem, None, None, lam, fd_r_max, fd_points,
                                 constrained_value=override)
            target = problem.energy(lam)
            idx = int(np.argmin([abs(v - target) for v in levels]))
            conv = {"target": target, "index": idx, "value": levels[idx],
                    "error": abs(levels[idx] - target), "points": fd_points}
        if run_fd:
            conv["pass"] = bool(conv["error"] <= fd_tol)
            conv["tol"] = fd_tol
            entry["fd"] = conv
            passed = passed and conv["pass"]
        entry["pass"] = bool(passed)
        ok = ok and passed
        results.append(entry)
    out = {"tool": "stackelqes", "version": __version__, "model": model,
           "params": {k: v for k, v in sorted(problem.params.items())}, "n": n,
           "eigenpairs": results, "pass": bool(ok)}
    if args.format == "csv":
        rows = [{"index": e["index"], "eigenvalue": e["eigenvalue"],
                 "constrained_value": e["constrained_value"],
                 "ode_residual": e["ode_residual"]["max_rel_residual"],
                 "duality_residual": e.get("duality", {}).get("max_rel_residual"),
                 "fd_error": e.get("fd", {}).get("error"),
                 "fd_ratio": e.get("fd", {}).get("ratio"), "pass": e["pass"]} for e in results]
        header = ["index", "eigenvalue", "constrained_value", "ode_residual", "duality_residual",
                  "fd_error", "fd_ratio", "pass"]
        _emit(write_csv(header, rows), args.out)
    else:
        _emit(dumps(out) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _sweep_points(s):
    model = _require_model(s["model"])
    ns = _n_range(s["n"])
    axes = {name: _param_axis(value) for name, value in s["params"].items()}
    names = list(axes)
    combos = list(itertools.product(*(axes[k] for k in names))) if names else [()]
    points = []
    for combo in combos:
        for n in ns:
            points.append((model, n, dict(zip(names, combo))))
    return points, names


def _solve_point(point, tol):
    model, n, params = point
    problem = build(model, params, n, tol)
    if not problem.certificate.passed:
        raise NotAlgebraizable(f"{model} n={n}: residuals {problem.certificate.residuals}")
    return problem, solve_report(problem, tol)


def cmd_sweep(args) -> int:
    s = _settings(args)
    points, names = _sweep_points(s)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            solved = list(pool.map(lambda p: _solve_point(p, s["tol"]), points))
    else:
        solved = [_solve_point(p, s["tol"]) for p in points]
    reports = [rep for _, rep in solved]
    if args.format == "csv":
        header, rows = sweep_rows(reports, names)
        _emit(write_csv(header, rows), args.out)
    else:
        _emit(dumps(reports) + "\n", args.out)
    if args.emit_psi:
        grid = _grid(s["grid"])
        for idx, (problem, rep) in enumerate(solved):
            _write_psi(problem, rep, grid, args.emit_psi, _tag(problem.model, problem.n, idx))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _common(p, model=True):
    if model:
        p.add_argument("--model", help="catalog model id")
    p.add_argument("--n", help="quantum number (sweep: inclusive range lo:hi)")
    p.add_argument("--param", action="append", metavar="NAME=VALUE",
                   help="model parameter; repeatable")
    p.add_argument("--config", help="TOML file with [model], [params], [solver], [verify]")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--tol", type=float, help="algebraization / closure tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stackelqes",
                                     description="Quasi-exactly solvable spectra via Stackel duality")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one model at one n")
    _common(p)
    p.add_argument("--grid", help="rmin:rmax:points for --emit-psi")
    p.add_argument("--emit-psi", nargs="?", const=".", metavar="DIR",
                   help="write r<TAB>psi files for admissible eigenpairs")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="test a raw Heun coefficient set for algebraizability")
    _common(p, model=False)
    p.add_argument("--coeffs", help="comma-separated a0..a4,b0..b3,c0..c2")
    p.add_argument("--scan", type=int, metavar="NMAX", help="report every n <= NMAX that passes")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run the residual, duality and finite-difference oracles")
    _common(p)
    p.add_argument("--grid", help="rmin:rmax:points for the residual grid (log-spaced)")
    p.add_argument("--residual-tol", type=float, help="ODE residual tolerance (default 1e-8)")
    p.add_argument("--fd-points", type=int)
    p.add_argument("--fd-r-max", type=float)
    p.add_argument("--no-fd", action="store_true", help="skip the finite-difference oracle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="solve over an n-range and/or a parameter grid")
    _common(p)
    p.add_argument("--grid", help="rmin:rmax:points for --emit-psi")
    p.add_argument("--emit-psi", nargs="?", const=".", metavar="DIR")
    p.add_argument("--jobs", type=int, default=1, help="worker threads (output order is fixed)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("catalog", help="list models and their parameter schemas")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, InvalidParams, EvaluationOutOfDomain) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except (NotAlgebraizable, ClosureViolation) as exc:
        log.error("not algebraizable: %s", exc)
        return EXIT_ALGEBRA
    except (NonConvergence, ZeroVector, np.linalg.LinAlgError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
