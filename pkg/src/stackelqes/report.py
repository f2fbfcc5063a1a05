"""Solve reports and their deterministic JSON / CSV serialization."""

from __future__ import annotations

import csv
import io
import math
from numbers import Number

from . import __version__
from .models import PreparedProblem
from .sl2 import DEFAULT_TOL

FLOAT_FORMAT = ".17g"


def _num(x):
    """JSON-ready number: complex becomes {"re", "im"}, non-finite becomes None."""
    if isinstance(x, complex):
        return {"re": _num(x.real), "im": _num(x.imag)}
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    x = float(x)
    return x if math.isfinite(x) else None


def _poly_coeffs(y):
    return [_num(c) for c in y.coeffs]


def solve_report(problem: PreparedProblem, tol: float = DEFAULT_TOL) -> dict:
    """Run the eigenproblem and collect everything a caller may want to keep."""
    sol = problem.solve(tol)
    eigenvalues, polys, flags, constraints, energies = [], [], [], [], []
    for lam, y, flag in zip(sol.eigenvalues, sol.eigen_polys, sol.flags):
        rec = problem.interpret(lam)
        physical = flag.physical and rec.admissible
        reason = flag.reason or rec.reason
        eigenvalues.append(_num(lam))
        polys.append(_poly_coeffs(y))
        flags.append({"physical": physical, "reason": reason, "degenerate": flag.degenerate})
        extras = {k: _num(v) for k, v in sorted(rec.extras.items())}
        constraints.append({"parameter": rec.parameter, "value": _num(rec.value), **extras})
        if problem.energy_depends_on_eigenvalue:
            energies.append(_num(problem.energy(lam)))
        else:
            energies.append(_num(problem.energy()))
    cert = problem.certificate
    return {
        "tool": "stackelqes",
        "version": __version__,
        "model": problem.model,
        "params": {k: _num(v) for k, v in sorted(problem.params.items())},
        "n": problem.n,
        "energy": None if problem.energy_depends_on_eigenvalue and problem.n > 0
        else _num(problem.energy()),
        "dual_energy": _num(problem.dual_energy),
        "eigenvalue_role": problem.eigenvalue_role,
        "constrained_parameter": problem.constrained_parameter,
        "certificate": {"passed": cert.passed, "residuals": [_num(r) for r in cert.residuals],
                        "scale": _num(cert.scale), "tol": _num(cert.tol)},
        "eigenvalues": eigenvalues,
        "eigen_polynomials": polys,
        "flags": flags,
        "constraints": constraints,
        "energies": energies,
        "gauge": {k: _num(v) for k, v in problem.gauge.as_dict().items()},
    }


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------

def _encode_str(s: str) -> str:
    import json

    return json.dumps(s, ensure_ascii=True)


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written at 17 significant digits.

    The standard library's encoder uses ``repr``, which is also exact but
    varies in length; a fixed format keeps byte-identical output trivially
    auditable.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        text = format(obj, FLOAT_FORMAT)
        if all(ch not in text for ch in ".en"):
            text += ".0"
        return text
    if isinstance(obj, complex):
        return dumps(_num(obj), indent, _level)
    if isinstance(obj, str):
        return _encode_str(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_encode_str(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (Number, type(None))) and not isinstance(v, complex) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, Number):
        return dumps(float(obj), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# --------------------------------------------------------------------------
# CSV
# --------------------------------------------------------------------------

def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, dict) and set(x) == {"re", "im"}:
        re, im = x["re"], x["im"]
        return f"{format(re, FLOAT_FORMAT)}{'+' if im >= 0 else '-'}{format(abs(im), FLOAT_FORMAT)}j"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, FLOAT_FORMAT)
    if isinstance(x, (list, tuple)):
        return " ".join(_cell(v) for v in x)
    return str(x)


def write_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(col)) for col in header])
    return buf.getvalue()


def eigenpair_rows(report: dict) -> tuple[list, list]:
    """One CSV row per eigenpair of a single solve report."""
    header = ["model", "n", "index", "eigenvalue", "physical", "reason", "degenerate",
              "constrained_parameter", "constrained_value", "energy", "eigen_polynomial"]
    rows = []
    for i, lam in enumerate(report["eigenvalues"]):
        flag = report["flags"][i]
        rows.append({"model": report["model"], "n": report["n"], "index": i, "eigenvalue": lam,
                     "physical": flag["physical"], "reason": flag["reason"],
                     "degenerate": flag["degenerate"],
                     "constrained_parameter": report["constraints"][i]["parameter"],
                     "constrained_value": report["constraints"][i]["value"],
                     "energy": report["energies"][i],
                     "eigen_polynomial": report["eigen_polynomials"][i]})
    return header, rows


def sweep_rows(reports: list[dict], param_names: list[str]) -> tuple[list, list]:
    """One CSV row per sweep point."""
    header = ["model", "n", *param_names, "energy", "eigenvalues", "physical",
              "constrained_parameter", "constrained_values"]
    rows = []
    for rep in reports:
        row = {"model": rep["model"], "n": rep["n"], "energy": rep["energy"],
               "eigenvalues": rep["eigenvalues"],
               "physical": [f["physical"] for f in rep["flags"]],
               "constrained_parameter": rep["constrained_parameter"],
               "constrained_values": [c["value"] for c in rep["constraints"]]}
        row.update({k: rep["params"].get(k) for k in param_names})
        rows.append(row)
    return header, rows
