"""Independent checks of the algebraic pipeline.

* ``ode_residual`` rebuilds psi from the gauge factor and the eigenpolynomial
  and plugs it, with exact derivatives, into the original radial equation.
* ``duality_check`` evaluates both sides of the Stackel duality pointwise.
* ``fd_spectrum`` discretizes the radial Schrodinger operator with a
  three-point stencil and returns its lowest eigenvalues as energies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .exceptions import EvaluationOutOfDomain, NonConvergence
from .models import PreparedProblem, build
from .operator_core import Polynomial

RESIDUAL_FLOOR = 1e-12


@dataclass(frozen=True)
class Grid:
    r_min: float
    r_max: float
    points: int
    spacing: str = "log"

    def __post_init__(self):
        if not (0 < self.r_min < self.r_max):
            raise EvaluationOutOfDomain("grid needs 0 < r_min < r_max")
        if int(self.points) != self.points or self.points < 2:
            raise ValueError("grid needs at least 2 points")
        if self.spacing not in ("log", "uniform"):
            raise ValueError("spacing must be 'log' or 'uniform'")

    def nodes(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.r_min, self.r_max, int(self.points))
        return np.linspace(self.r_min, self.r_max, int(self.points))

    @classmethod
    def parse(cls, text: str, spacing: str = "log") -> Grid:
        """``"rmin:rmax:points"``."""
        try:
            lo, hi, pts = text.split(":")
            return cls(float(lo), float(hi), int(pts), spacing)
        except ValueError as exc:
            raise ValueError(f"bad grid {text!r}: expected rmin:rmax:points") from exc


DEFAULT_POINTS = 1000


def default_grid(problem: PreparedProblem, eigenvalue=None) -> Grid:
    lo, hi = problem.default_grid_bounds(eigenvalue)
    return Grid(lo, hi, DEFAULT_POINTS, "log")


@dataclass(frozen=True)
class ResidualReport:
    max_rel_residual: float
    argmax: float
    samples: int
    passed: bool
    tol: float
    detail: dict | None = None

    def as_dict(self) -> dict:
        out = {"max_rel_residual": self.max_rel_residual, "argmax": self.argmax,
               "samples": self.samples, "pass": self.passed, "tol": self.tol}
        if self.detail:
            out.update(self.detail)
        return out


def _relative(lhs_terms, rhs):
    """Pointwise |sum(lhs) - rhs| over the largest individual term, floored."""
    total = np.sum(lhs_terms, axis=0) - rhs
    sizes = np.max(np.abs(np.vstack([*lhs_terms, rhs])), axis=0)
    floor = RESIDUAL_FLOOR * float(np.max(sizes)) if sizes.size else 0.0
    return np.abs(total) / np.maximum(sizes, max(floor, np.finfo(float).tiny))


def _report(rel, r, tol, detail=None):
    idx = int(np.argmax(rel))
    worst = float(rel[idx])
    return ResidualReport(worst, float(r[idx]), int(r.size), bool(worst <= tol), tol, detail)


def _as_problem(model, params, n) -> PreparedProblem:
    if isinstance(model, PreparedProblem):
        return model
    return build(model, params, n)


def ode_residual(model, params, n, eigenpair, grid: Grid | None = None, tol: float = 1e-8,
                 constrained_value=None) -> ResidualReport:
    """Residual of the original radial equation at one eigenpair.

    ``eigenpair`` is ``(eigenvalue, y)``.  ``constrained_value`` overrides
    the parameter implied by the eigenvalue (used for sensitivity runs).
    ``model`` may also be a ``PreparedProblem``, in which case ``params`` and
    ``n`` are ignored.
    """
    problem = _as_problem(model, params, n)
    lam, y = eigenpair
    grid = grid or default_grid(problem, lam)
    r = grid.nodes()
    psi, dpsi, d2psi = problem.wavefunction(y, lam).derivatives(r, scaled=True)
    eq = problem.radial_equation(lam, constrained_value)
    lhs, rhs = eq.terms(r, psi, dpsi, d2psi)
    return _report(_relative(lhs, rhs), r, tol)


def duality_check(model, params, n, eigenpair, sample_points: int = 100,
                  tol: float = 1e-9) -> ResidualReport:
    """Check H'y = lambda y and the dual (H - coupling x^-mu) y = E y pointwise.

    The samples are log-spaced over the model's default grid, expressed in
    the working variable of ``H``.  The report carries the worse of the two
    residuals; each is in ``detail``.
    """
    problem = _as_problem(model, params, n)
    lam, y = eigenpair
    lo, hi = problem.default_grid_bounds(lam)
    gauge = problem.gauge_for(lam)
    x = gauge.substitution(np.geomspace(lo, hi, int(sample_points)))[0]

    hp = problem.hprime.to_laurent()
    y0, y1, y2 = y(x), y.deriv(1)(x), y.deriv(2)(x)
    prime_terms = [hp.p2(x) * y2, hp.p1(x) * y1, hp.p0(x) * y0]
    rel_prime = _relative(prime_terms, lam * y0)

    h = problem.h
    mu = problem.multiplier.exponent
    dual_terms = [h.p2(x) * y2, h.p1(x) * y1, h.p0(x) * y0, -lam * x ** (-float(mu)) * y0]
    rel_dual = _relative(dual_terms, problem.dual_energy * y0)

    worst = np.maximum(rel_prime, rel_dual)
    detail = {"hprime_residual": float(np.max(rel_prime)), "dual_residual": float(np.max(rel_dual))}
    return _report(worst, x, tol, detail)


# --------------------------------------------------------------------------
# Finite differences
# --------------------------------------------------------------------------

FD_POINTS = 20000
FD_R_MAX = 30.0


def fd_radial_eigenvalues(form, r_max: float = FD_R_MAX, points: int = FD_POINTS, k: int = 6):
    """Lowest ``k`` eigenvalues of -u'' + W u with u(r_max) = 0.

    Spherical problems use vertices r_i = r_min + i h with u(r_min) = 0.  Cylindrical
    problems are discretized in R = u / sqrt(r) on cell centres with a flux
    form of -(1/r)(r R')' + nu^2/r^2 R, which is second order for every nu
    and needs no wall at the origin.
    """
    points = int(points)
    k = min(int(k), points)
    if form.geometry == "spherical":
        h = (r_max - form.r_min) / (points + 1)
        r = form.r_min + h * np.arange(1, points + 1)
        diag = 2.0 / h**2 + form.potential(r)
        off = np.full(points - 1, -1.0 / h**2)
    elif form.geometry == "cylindrical":
        h = r_max / points
        r = h * (np.arange(1, points + 1) - 0.5)
        faces = h * np.arange(points + 1)
        diag = (faces[1:] + faces[:-1]) / (r * h**2) + form.nu**2 / r**2 + form.potential(r)
        off = -faces[1:-1] / (h**2 * np.sqrt(r[:-1] * r[1:]))
    else:
        raise ValueError(f"unknown geometry {form.geometry!r}")
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
        raise NonConvergence("potential is not finite on the grid")
    try:
        vals = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, k - 1))
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
    return vals


def fd_spectrum(model, params, n, eigenvalue, r_max: float = FD_R_MAX, points: int = FD_POINTS,
                k: int = 6, constrained_value=None) -> list[float]:
    """Lowest ``k`` FD energies of the radial problem fixed by one eigenpair.

    The constrained parameter is the one implied by ``eigenvalue`` unless
    ``constrained_value`` is given.  Energies are in the units of
    ``energy(...)``.
    """
    problem = _as_problem(model, params, n)
    fam = problem.family
    if not fam.fd_supported:
        raise NotImplementedError(f"{problem.model}: finite-difference oracle not supported")
    value = problem.interpret(eigenvalue).value if constrained_value is None else constrained_value
    form = fam.fd_form(dict(problem.params), problem.n, value)
    vals = fd_radial_eigenvalues(form, r_max, points, k)
    return [float(form.to_energy(v)) for v in vals]


@dataclass(frozen=True)
class FDMatch:
    target: float
    index: int
    value: float
    error: float
    points: int


def fd_match(model, params, n, eigenvalue, target=None, r_max: float = FD_R_MAX,
             points: int = FD_POINTS, k: int = 6) -> FDMatch:
    """The FD level nearest to the closed-form energy and its index in the spectrum."""
    problem = _as_problem(model, params, n)
    if target is None:
        target = problem.energy(eigenvalue)
    levels = fd_spectrum(problem, None, None, eigenvalue, r_max, points, k)
    idx = int(np.argmin([abs(v - target) for v in levels]))
    return FDMatch(float(target), idx, levels[idx], abs(levels[idx] - target), int(points))


def fd_convergence(model, params, n, eigenvalue, points: int = FD_POINTS,
                   r_max: float = FD_R_MAX, k: int = 6) -> dict:
    """Errors at N/2 and N points and their ratio (about 4 for a second-order scheme)."""
    coarse = fd_match(model, params, n, eigenvalue, None, r_max, points // 2, k)
    fine = fd_match(model, params, n, eigenvalue, None, r_max, points, k)
    ratio = coarse.error / fine.error if fine.error > 0 else float("inf")
    return {"target": fine.target, "index": fine.index, "value": fine.value,
            "error": fine.error, "coarse_error": coarse.error, "ratio": ratio, "points": points}


def sample_wavefunction(problem: PreparedProblem, y: Polynomial, eigenvalue, grid: Grid):
    """(r, psi(r)) on a grid, psi unnormalized."""
    r = grid.nodes()
    return r, problem.wavefunction(y, eigenvalue)(r)
