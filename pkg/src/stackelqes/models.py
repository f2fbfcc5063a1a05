"""Catalog of the seven quasi-exactly solvable model families.

Each family knows its gauge-transformed operator ``H`` (in the working
variable), the Stackel multiplier that clears the coupling's pole, the
quantization rule that fixes the energy in terms of ``n``, what the Jacobi
eigenvalue means physically, the gauge factor that rebuilds the wavefunction,
and the original radial equation used by the verification oracles.

Conventions: hbar = 1, masses as in each family's reduced radial equation.
Constrained parameters (the ones fixed by the Jacobi eigenvalue) are not
inputs: they are produced by :func:`interpret_eigenvalue`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from collections.abc import Callable, Mapping

import numpy as np

from .exceptions import EvaluationOutOfDomain, InvalidParams
from .operator_core import LaurentOperator, LaurentPoly, Polynomial
from .sl2 import DEFAULT_TOL, AlgebraizationCertificate, check_algebraizable
from .solver import SpectralSolution, build_jacobi, eigensolve
from .stackel import DualProblem, StackelMultiplier, stackel_transform

MODEL_IDS = (
    "hydrogen2d",
    "hooke_oscillator",
    "hooke_magnetic",
    "electrons_sphere",
    "inverse_quartic",
    "inverse_sextic",
    "newtonian_cosmology",
)

ZERO_TOL = 1e-9


# --------------------------------------------------------------------------
# Gauge factor and wavefunctions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GaugeFactor:
    """g(r) = r**mu_ln * exp(q2 r^2 + q1 r + q_m1 / r + q_m2 / r^2).

    The polynomial factor is evaluated at ``scale * r**power``.
    """

    mu_ln: float = 0.0
    q2: float = 0.0
    q1: float = 0.0
    q_m1: float = 0.0
    q_m2: float = 0.0
    power: int = 1
    scale: float = 1.0

    @property
    def decays_at_infinity(self) -> bool:
        return self.q2 < 0 or (self.q2 == 0 and self.q1 < 0)

    @property
    def normalizable_hint(self) -> bool:
        """The sign test q2 <= 0 and q_m2 <= 0; reported, never enforced."""
        return self.q2 <= 0 and self.q_m2 <= 0

    def exponent(self, r):
        return (self.mu_ln * np.log(r) + self.q2 * r**2 + self.q1 * r
                + self.q_m1 / r + self.q_m2 / r**2)

    def __call__(self, r):
        return np.exp(self.exponent(r))

    def log_derivatives(self, r):
        """(g'/g, (g'/g)') as arrays."""
        d1 = self.mu_ln / r + 2 * self.q2 * r + self.q1 - self.q_m1 / r**2 - 2 * self.q_m2 / r**3
        d2 = -self.mu_ln / r**2 + 2 * self.q2 + 2 * self.q_m1 / r**3 + 6 * self.q_m2 / r**4
        return d1, d2

    def substitution(self, r):
        """s(r), s'(r), s''(r) for s = scale * r**power."""
        p = self.power
        s = self.scale * r**p
        ds = self.scale * p * r ** (p - 1)
        d2s = self.scale * p * (p - 1) * r ** (p - 2) if p > 1 else np.zeros_like(r)
        return s, ds, d2s

    def as_dict(self) -> dict:
        return {"mu_ln": self.mu_ln, "q2": self.q2, "q1": self.q1, "q_m1": self.q_m1,
                "q_m2": self.q_m2, "power": self.power, "scale": self.scale}


@dataclass(frozen=True)
class Wavefunction:
    """psi(r) = g(r) * y(s(r)) with closed-form first and second derivatives."""

    gauge: GaugeFactor
    y: Polynomial

    def derivatives(self, r, scaled: bool = False):
        """Return (psi, psi', psi'').

        With ``scaled=True`` every value is divided by g(r); relative
        quantities are unchanged and nothing underflows.
        """
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise EvaluationOutOfDomain("wavefunctions are defined on r > 0 only")
        s, ds, d2s = self.gauge.substitution(r)
        y0 = self.y(s)
        y1 = self.y.deriv(1)(s)
        y2 = self.y.deriv(2)(s)
        big_y = y0
        big_y1 = y1 * ds
        big_y2 = y2 * ds**2 + y1 * d2s
        phi1, phi2 = self.gauge.log_derivatives(r)
        psi = big_y
        dpsi = phi1 * big_y + big_y1
        d2psi = big_y2 + 2 * phi1 * big_y1 + (phi2 + phi1**2) * big_y
        if scaled:
            return psi, dpsi, d2psi
        g = self.gauge(r)
        return g * psi, g * dpsi, g * d2psi

    def __call__(self, r):
        return self.derivatives(r)[0]


# --------------------------------------------------------------------------
# Original radial equations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RadialEquation:
    """kinetic(r) psi'' + drift(r) psi' + sum_i V_i(r) psi = rhs * psi."""

    kinetic: Callable
    drift: Callable
    potentials: tuple
    rhs: float

    def terms(self, r, psi, dpsi, d2psi):
        """(list of LHS term arrays, RHS array)."""
        lhs = [self.kinetic(r) * d2psi, self.drift(r) * dpsi]
        lhs += [v(r) * psi for _, v in self.potentials]
        return lhs, self.rhs * psi


def _const(c):
    return lambda r: np.full_like(np.asarray(r, dtype=float), c)


@dataclass(frozen=True)
class FDForm:
    """Schrodinger form -u'' + W(r) u = lam u used by the finite-difference oracle.

    ``geometry`` is ``"cylindrical"`` (u = sqrt(r) R, centrifugal (m^2 - 1/4)/r^2
    handled by a flux discretization with ``nu = |m|``) or ``"spherical"``
    (u(r_min) = 0, everything in W).
    """

    geometry: str
    nu: float
    potential: Callable
    to_energy: Callable
    r_min: float = 0.0


# --------------------------------------------------------------------------
# Constraint record
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstraintRecord:
    eigenvalue: complex | float
    parameter: str
    value: complex | float | None
    admissible: bool
    reason: str = ""
    extras: Mapping = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"eigenvalue": self.eigenvalue, "parameter": self.parameter, "value": self.value,
                "admissible": self.admissible, "reason": self.reason, "extras": dict(self.extras)}


# --------------------------------------------------------------------------
# Model families
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str  # "float" or "int"
    description: str
    default: float | int | None = None


def _lp(d):
    return LaurentPoly(d)


class _Model:
    id: str = ""
    variable: str = "r"
    multiplier: int = 1
    role: str = "alpha"
    constrained: str = "alpha"
    zero_reason: str | None = None
    schema: tuple = ()
    fd_supported: bool = False

    # -- parameters ------------------------------------------------------
    def validate(self, params: Mapping) -> dict:
        known = {p.name: p for p in self.schema}
        unknown = set(params) - set(known)
        if unknown:
            raise InvalidParams(f"{self.id}: unknown parameter(s) {sorted(unknown)}")
        out = {}
        for spec in self.schema:
            if spec.name in params:
                raw = params[spec.name]
            elif spec.default is not None:
                raw = spec.default
            else:
                raise InvalidParams(f"{self.id}: missing parameter {spec.name!r}")
            try:
                val = float(raw)
            except (TypeError, ValueError):
                raise InvalidParams(f"{self.id}: {spec.name}={raw!r} is not a number") from None
            if not math.isfinite(val):
                raise InvalidParams(f"{self.id}: {spec.name} must be finite")
            if spec.kind == "int":
                if val != int(val):
                    raise InvalidParams(f"{self.id}: {spec.name} must be an integer")
                val = int(val)
            out[spec.name] = val
        self.check_domain(out)
        return out

    def check_domain(self, p: dict) -> None:
        pass

    def derived(self, p: dict) -> dict:
        return {}

    # -- pipeline pieces ---------------------------------------------------
    def operator(self, p: dict, n: int) -> LaurentOperator:
        raise NotImplementedError

    def dual_energy(self, p: dict, n: int) -> float:
        raise NotImplementedError

    def energy(self, p: dict, n: int, eigenvalue=None) -> float:
        raise NotImplementedError

    @property
    def energy_depends_on_eigenvalue(self) -> bool:
        return False

    def constraint(self, p: dict, n: int, lam) -> ConstraintRecord:
        raise NotImplementedError

    def gauge(self, p: dict, n: int, lam=None) -> GaugeFactor:
        raise NotImplementedError

    def radial_equation(self, p: dict, n: int, lam, value) -> RadialEquation:
        raise NotImplementedError

    def default_grid_bounds(self, p: dict, n: int, lam) -> tuple:
        return (0.05, 12.0)

    def fd_form(self, p: dict, n: int, value) -> FDForm:
        raise NotImplementedError(f"{self.id}: finite-difference oracle not supported")

    def _real_record(self, lam, value, extras=None, admissible=True, reason=""):
        if isinstance(lam, complex) and lam.imag != 0:
            return ConstraintRecord(lam, self.constrained, value, False, "complex", extras or {})
        return ConstraintRecord(lam, self.constrained, value, admissible, reason, extras or {})


class _CoulombFamily(_Model):
    """Shared shape of the three Coulomb-coupled oscillator problems (coupling Z)."""

    role = "Z"
    constrained = "Z"
    zero_reason = "coupling vanishes"
    fd_supported = True

    def frequency(self, p) -> float:
        raise NotImplementedError

    def drift_constant(self, p) -> float:
        raise NotImplementedError

    def operator(self, p, n):
        w = self.frequency(p)
        return LaurentOperator(_lp({0: 1.0}), _lp({1: -2 * w, -1: self.drift_constant(p)}), _lp({}))

    def dual_energy(self, p, n):
        return -2.0 * n * self.frequency(p)

    def constraint(self, p, n, lam):
        if not isinstance(lam, complex) and abs(lam) <= ZERO_TOL * max(1.0, self.frequency(p)):
            return ConstraintRecord(lam, "Z", lam, False, self.zero_reason)
        return self._real_record(lam, lam)


class Hydrogen2D(_CoulombFamily):
    id = "hydrogen2d"
    schema = (
        ParamSpec("omega_L", "float", "Larmor frequency, > 0"),
        ParamSpec("m", "int", "angular momentum quantum number"),
    )

    def check_domain(self, p):
        if p["omega_L"] <= 0:
            raise InvalidParams("hydrogen2d: omega_L must be > 0")

    def frequency(self, p):
        return p["omega_L"]

    def drift_constant(self, p):
        return 2 * abs(p["m"]) + 1.0

    def energy(self, p, n, eigenvalue=None):
        m = p["m"]
        return p["omega_L"] * (n + abs(m) + 1 + m)

    def gauge(self, p, n, lam=None):
        return GaugeFactor(mu_ln=abs(p["m"]) + 0.5, q2=-p["omega_L"] / 2)

    def radial_equation(self, p, n, lam, value):
        w, m = p["omega_L"], p["m"]
        e = self.energy(p, n)
        return RadialEquation(
            kinetic=_const(-1.0), drift=_const(0.0),
            potentials=(("centrifugal", lambda r: (m * m - 0.25) / r**2),
                        ("oscillator", lambda r: w * w * r**2),
                        ("coulomb", lambda r: value / r)),
            rhs=2 * (e - m * w),
        )

    def fd_form(self, p, n, value):
        w, m = p["omega_L"], p["m"]
        return FDForm("cylindrical", abs(m), lambda r: w * w * r**2 + value / r,
                      lambda lam: lam / 2 + m * w)


class HookeOscillator(_CoulombFamily):
    id = "hooke_oscillator"
    schema = (
        ParamSpec("omega_r", "float", "relative-motion oscillator frequency, > 0"),
        ParamSpec("l", "int", "orbital angular momentum, >= 0"),
    )

    def check_domain(self, p):
        if p["omega_r"] <= 0:
            raise InvalidParams("hooke_oscillator: omega_r must be > 0")
        if p["l"] < 0:
            raise InvalidParams("hooke_oscillator: l must be >= 0")

    def frequency(self, p):
        return p["omega_r"]

    def drift_constant(self, p):
        return 2.0 * (p["l"] + 1)

    def energy(self, p, n, eigenvalue=None):
        return (2 * n + 2 * p["l"] + 3) * p["omega_r"]

    def gauge(self, p, n, lam=None):
        return GaugeFactor(mu_ln=p["l"] + 1.0, q2=-p["omega_r"] / 2)

    def radial_equation(self, p, n, lam, value):
        w, l = p["omega_r"], p["l"]
        return RadialEquation(
            kinetic=_const(-1.0), drift=_const(0.0),
            potentials=(("oscillator", lambda r: w * w * r**2),
                        ("coulomb", lambda r: value / r),
                        ("centrifugal", lambda r: l * (l + 1) / r**2)),
            rhs=self.energy(p, n),
        )

    def fd_form(self, p, n, value):
        w, l = p["omega_r"], p["l"]
        return FDForm("spherical", l + 0.5,
                      lambda r: w * w * r**2 + value / r + l * (l + 1) / r**2,
                      lambda lam: lam)


class HookeMagnetic(_CoulombFamily):
    id = "hooke_magnetic"
    schema = (
        ParamSpec("omega_0", "float", "confinement frequency, >= 0"),
        ParamSpec("omega_L", "float", "Larmor frequency, >= 0"),
        ParamSpec("m", "int", "angular momentum quantum number"),
        ParamSpec("eta", "float", "centre-of-mass energy, added to reported energies", 0.0),
    )

    def check_domain(self, p):
        if p["omega_0"] < 0 or p["omega_L"] < 0:
            raise InvalidParams("hooke_magnetic: omega_0 and omega_L must be >= 0")
        if self.frequency(p) <= 0:
            raise InvalidParams("hooke_magnetic: effective frequency must be > 0")

    def derived(self, p):
        return {"omega_eff": self.frequency(p)}

    def frequency(self, p):
        return 0.5 * math.hypot(p["omega_L"], p["omega_0"])

    def drift_constant(self, p):
        return 2 * abs(p["m"]) + 1.0

    def relative_energy(self, p, n):
        m = p["m"]
        return m * p["omega_L"] + 2 * (n + abs(m) + 1) * self.frequency(p)

    def energy(self, p, n, eigenvalue=None):
        return self.relative_energy(p, n) + p["eta"]

    def gauge(self, p, n, lam=None):
        return GaugeFactor(mu_ln=abs(p["m"]) + 0.5, q2=-self.frequency(p) / 2)

    def radial_equation(self, p, n, lam, value):
        w, m = self.frequency(p), p["m"]
        return RadialEquation(
            kinetic=_const(-1.0), drift=_const(0.0),
            potentials=(("centrifugal", lambda r: (m * m - 0.25) / r**2),
                        ("oscillator", lambda r: w * w * r**2),
                        ("coulomb", lambda r: value / r)),
            rhs=self.relative_energy(p, n) - m * p["omega_L"],
        )

    def fd_form(self, p, n, value):
        w, m = self.frequency(p), p["m"]
        shift = m * p["omega_L"] + p["eta"]
        return FDForm("cylindrical", abs(m), lambda r: w * w * r**2 + value / r,
                      lambda lam: lam + shift)


class ElectronsSphere(_Model):
    id = "electrons_sphere"
    variable = "z"
    role = "-2R"
    constrained = "R"
    schema = (
        ParamSpec("gamma", "float", "inter-electron ODE parameter, != 0"),
        ParamSpec("delta", "float", "inter-electron ODE parameter"),
    )

    def check_domain(self, p):
        if p["gamma"] == 0:
            raise InvalidParams("electrons_sphere: gamma must be nonzero")

    @property
    def energy_depends_on_eigenvalue(self):
        return True

    def operator(self, p, n):
        return LaurentOperator(_lp({2: 1.0, 0: -1.0}), _lp({1: p["delta"], -1: -1.0 / p["gamma"]}),
                               _lp({}))

    def dual_energy(self, p, n):
        return float(n * (n - 1 + p["delta"]))

    def energy(self, p, n, eigenvalue=None):
        scaled = self.dual_energy(p, n)
        if scaled == 0:
            return 0.0
        if eigenvalue is None:
            raise InvalidParams("electrons_sphere: the energy depends on R; pass the eigenvalue")
        if isinstance(eigenvalue, complex):
            return complex(scaled / eigenvalue**2)
        if abs(eigenvalue) <= ZERO_TOL:
            return math.inf
        return scaled / eigenvalue**2

    def constraint(self, p, n, lam):
        radius = -lam / 2 + 0.0
        if isinstance(lam, complex):
            return ConstraintRecord(lam, "R", radius, False, "complex")
        if abs(radius) <= ZERO_TOL:
            return ConstraintRecord(lam, "R", radius, False, "R=0 nonphysical")
        if radius < 0:
            return ConstraintRecord(lam, "R", radius, False, "R<0 nonphysical")
        return ConstraintRecord(lam, "R", radius, True, "")

    def gauge(self, p, n, lam=None):
        if lam is None or isinstance(lam, complex) or lam == 0:
            return GaugeFactor()
        radius = -lam / 2
        return GaugeFactor(scale=1.0 / (2 * radius))

    def radial_equation(self, p, n, lam, value):
        radius = value
        g, dl = p["gamma"], p["delta"]
        e = self.energy(p, n, lam)
        return RadialEquation(
            kinetic=lambda u: u**2 / (4 * radius**2) - 1.0,
            drift=lambda u: dl * u / (4 * radius**2) - 1.0 / (g * u),
            potentials=(("coulomb", lambda u: 1.0 / u),),
            rhs=e,
        )

    def default_grid_bounds(self, p, n, lam):
        diameter = abs(lam) if lam else 2.0
        return (0.025 * diameter, diameter)


class InverseQuartic(_Model):
    id = "inverse_quartic"
    multiplier = 2
    role = "alpha"
    constrained = "b"
    schema = (
        ParamSpec("a", "float", "coefficient of 2a/r"),
        ParamSpec("c", "float", "coefficient of 2c/r^3"),
        ParamSpec("d", "float", "coefficient of 2d/r^4, > 0"),
    )

    def check_domain(self, p):
        if p["d"] <= 0:
            raise InvalidParams("inverse_quartic: d must be > 0")

    def _consts(self, p, n):
        root = math.sqrt(2 * p["d"])
        t = p["c"] / root
        denom = n + 1 + t
        if abs(denom) < 1e-14:
            raise InvalidParams("inverse_quartic: n + 1 + c/sqrt(2d) vanishes")
        return root, t, p["a"] / denom

    def derived(self, p):
        root = math.sqrt(2 * p["d"])
        return {"sqrt2d": root, "c_over_sqrt2d": p["c"] / root}

    def operator(self, p, n):
        root, t, big_b = self._consts(p, n)
        s = 1 + t
        return LaurentOperator(_lp({0: 1.0}), _lp({0: 2 * big_b, -1: 2 * s, -2: 2 * root}),
                               _lp({-1: 2 * big_b * s - 2 * p["a"]}))

    def dual_energy(self, p, n):
        # -(2E + B^2) with E = -B^2/2
        return 0.0

    def energy(self, p, n, eigenvalue=None):
        _, _, big_b = self._consts(p, n)
        return -0.5 * big_b**2

    def constraint(self, p, n, lam):
        root, t, big_b = self._consts(p, n)
        b = 0.5 * (lam + t * (1 + t)) + big_b * root
        return self._real_record(lam, b, {"B": big_b})

    def gauge(self, p, n, lam=None):
        root, t, big_b = self._consts(p, n)
        return GaugeFactor(mu_ln=1 + t, q1=big_b, q_m1=-root)

    def radial_equation(self, p, n, lam, value):
        a, c, d = p["a"], p["c"], p["d"]
        return RadialEquation(
            kinetic=_const(-1.0), drift=_const(0.0),
            potentials=(("r^-1", lambda r: 2 * a / r), ("r^-2", lambda r: 2 * value / r**2),
                        ("r^-3", lambda r: 2 * c / r**3), ("r^-4", lambda r: 2 * d / r**4)),
            rhs=2 * self.energy(p, n),
        )


class InverseSextic(_Model):
    id = "inverse_sextic"
    variable = "z"
    role = "alpha"
    constrained = "L"
    fd_supported = True
    schema = (
        ParamSpec("omega", "float", "oscillator frequency, > 0"),
        ParamSpec("c", "float", "coefficient of 2c/r^4"),
        ParamSpec("d", "float", "coefficient of 2d/r^6, > 0"),
    )

    def check_domain(self, p):
        if p["omega"] <= 0:
            raise InvalidParams("inverse_sextic: omega must be > 0")
        if p["d"] <= 0:
            raise InvalidParams("inverse_sextic: d must be > 0")

    def _consts(self, p):
        root = math.sqrt(2 * p["d"])
        return root, p["c"] / root

    def derived(self, p):
        root, t = self._consts(p)
        return {"sqrt2d": root, "c_over_sqrt2d": t}

    def operator(self, p, n):
        root, t = self._consts(p)
        return LaurentOperator(_lp({1: 1.0}), _lp({0: 2 + t, -1: root, 1: -p["omega"]}), _lp({}))

    def dual_energy(self, p, n):
        return -float(n) * p["omega"]

    def energy(self, p, n, eigenvalue=None):
        _, t = self._consts(p)
        return (2 * n + 2 + t) * p["omega"]

    def constraint(self, p, n, lam):
        root, t = self._consts(p)
        big_l = 4 * lam + t * t + 2 * t + 0.75 - 2 * p["omega"] * root
        if isinstance(lam, complex) and lam.imag != 0:
            return ConstraintRecord(lam, "L", big_l, False, "complex")
        disc = 1 + 4 * big_l
        if disc < 0:
            return ConstraintRecord(lam, "L", big_l, False, "l complex", {"l": None})
        return ConstraintRecord(lam, "L", big_l, True, "", {"l": (-1 + math.sqrt(disc)) / 2})

    def gauge(self, p, n, lam=None):
        root, t = self._consts(p)
        return GaugeFactor(mu_ln=1.5 + t, q2=-p["omega"] / 2, q_m2=-root / 2, power=2)

    def radial_equation(self, p, n, lam, value):
        w, c, d = p["omega"], p["c"], p["d"]
        return RadialEquation(
            kinetic=_const(-1.0), drift=_const(0.0),
            potentials=(("centrifugal", lambda r: value / r**2), ("oscillator", lambda r: w * w * r**2),
                        ("r^-4", lambda r: 2 * c / r**4), ("r^-6", lambda r: 2 * d / r**6)),
            rhs=2 * self.energy(p, n),
        )

    def fd_form(self, p, n, value):
        w, c, d = p["omega"], p["c"], p["d"]
        # wall where the gauge factor exp(-sqrt(2d)/(2 r^2)) is below e^-40
        wall = math.sqrt(math.sqrt(2 * d) / 80)
        return FDForm("spherical", 0.5,
                      lambda r: value / r**2 + w * w * r**2 + 2 * c / r**4 + 2 * d / r**6,
                      lambda lam: lam / 2, r_min=wall)


class NewtonianCosmology(_Model):
    id = "newtonian_cosmology"
    variable = "x"
    role = "alpha"
    constrained = "B4"
    schema = (
        ParamSpec("B2", "float", "coefficient of r"),
        ParamSpec("B3", "float", "coefficient of r^2, < 0"),
        ParamSpec("B5", "float", "coefficient of 1/r^2, <= 1/4"),
    )

    def check_domain(self, p):
        if p["B3"] >= 0:
            raise InvalidParams("newtonian_cosmology: B3 must be < 0")
        if 1 - 4 * p["B5"] < 0:
            raise InvalidParams("newtonian_cosmology: B5 must be <= 1/4")

    def _consts(self, p):
        tau = (-p["B3"]) ** 0.25
        w = math.sqrt(1 - 4 * p["B5"])
        return tau, w, p["B2"] / tau**3

    def derived(self, p):
        tau, w, beta = self._consts(p)
        return {"tau": tau, "sqrt_1_minus_4B5": w}

    def operator(self, p, n):
        tau, w, beta = self._consts(p)
        return LaurentOperator(_lp({0: 1.0}), _lp({-1: 1 - w, 0: beta, 1: -2.0}), _lp({}))

    def dual_energy(self, p, n):
        return -2.0 * n

    def energy(self, p, n, eigenvalue=None):
        """The quantized B1 (2 mu E / hbar^2 up to the A_d offset)."""
        tau, w, beta = self._consts(p)
        return tau**2 * (2 * n + 2 - w) - p["B2"] ** 2 / (4 * tau**4)

    def constraint(self, p, n, lam):
        tau, w, beta = self._consts(p)
        b4 = -tau * (lam + beta * (1 - w) / 2)
        return self._real_record(lam, b4)

    def gauge(self, p, n, lam=None):
        tau, w, beta = self._consts(p)
        return GaugeFactor(mu_ln=(1 - w) / 2, q2=-tau**2 / 2, q1=p["B2"] / (2 * tau**2), scale=tau)

    def radial_equation(self, p, n, lam, value):
        b1 = self.energy(p, n)
        b2, b3, b5 = p["B2"], p["B3"], p["B5"]
        return RadialEquation(
            kinetic=_const(1.0), drift=_const(0.0),
            potentials=(("B1", _const(b1)), ("B2", lambda r: b2 * r), ("B3", lambda r: b3 * r**2),
                        ("B4", lambda r: value / r), ("B5", lambda r: b5 / r**2)),
            rhs=0.0,
        )


MODELS = {cls.id: cls() for cls in (Hydrogen2D, HookeOscillator, HookeMagnetic, ElectronsSphere,
                                     InverseQuartic, InverseSextic, NewtonianCosmology)}


def get_model(model: str) -> _Model:
    try:
        return MODELS[model]
    except KeyError:
        raise InvalidParams(f"unknown model {model!r}; choose from {', '.join(MODEL_IDS)}") from None


def catalog() -> list[dict]:
    """Model ids with their parameter schemas."""
    out = []
    for mid in MODEL_IDS:
        mdl = MODELS[mid]
        out.append({
            "model": mid,
            "variable": mdl.variable,
            "multiplier_exponent": mdl.multiplier,
            "eigenvalue_role": mdl.role,
            "constrained_parameter": mdl.constrained,
            "params": [{"name": s.name, "type": s.kind, "description": s.description,
                        **({"default": s.default} if s.default is not None else {})}
                       for s in mdl.schema],
        })
    return out


# --------------------------------------------------------------------------
# Prepared problems
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PreparedProblem:
    model: str
    params: Mapping
    n: int
    h: LaurentOperator
    multiplier: StackelMultiplier
    dual: DualProblem
    certificate: AlgebraizationCertificate
    gauge: GaugeFactor
    eigenvalue_role: str
    constrained_parameter: str

    @property
    def hprime(self):
        return self.dual.hprime

    @property
    def dual_energy(self) -> float:
        return self.dual.energy

    @property
    def family(self) -> _Model:
        return MODELS[self.model]

    @property
    def energy_depends_on_eigenvalue(self) -> bool:
        return self.family.energy_depends_on_eigenvalue

    def energy(self, eigenvalue=None) -> float:
        return self.family.energy(dict(self.params), self.n, eigenvalue)

    def solve(self, tol: float = DEFAULT_TOL) -> SpectralSolution:
        jac = build_jacobi(self.hprime, self.n, tol)
        return eigensolve(jac, zero_reason=self.family.zero_reason)

    def jacobi(self, tol: float = DEFAULT_TOL):
        return build_jacobi(self.hprime, self.n, tol)

    def interpret(self, eigenvalue) -> ConstraintRecord:
        return self.family.constraint(dict(self.params), self.n, eigenvalue)

    def verifiable(self, eigenvalue) -> bool:
        """Whether the original radial equation makes sense at this eigenvalue.

        Admissible pairs qualify, and so does a vanishing coupling: the free
        problem is unwanted physically but still a valid solution.
        """
        if isinstance(eigenvalue, complex):
            return False
        rec = self.interpret(eigenvalue)
        return rec.admissible or (rec.reason != "" and rec.reason == self.family.zero_reason)

    def gauge_for(self, eigenvalue=None) -> GaugeFactor:
        return self.family.gauge(dict(self.params), self.n, eigenvalue)

    def wavefunction(self, y: Polynomial, eigenvalue=None) -> Wavefunction:
        return Wavefunction(self.gauge_for(eigenvalue), y)

    def radial_equation(self, eigenvalue, value=None) -> RadialEquation:
        if value is None:
            value = self.interpret(eigenvalue).value
        return self.family.radial_equation(dict(self.params), self.n, eigenvalue, value)

    def default_grid_bounds(self, eigenvalue=None) -> tuple:
        return self.family.default_grid_bounds(dict(self.params), self.n, eigenvalue)


def build(model: str, params: Mapping, n: int, tol: float = DEFAULT_TOL) -> PreparedProblem:
    """Compile a catalog model at quantum number n into a ``PreparedProblem``."""
    fam = get_model(model)
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise InvalidParams("n must be a nonnegative integer")
    n = int(n)
    p = fam.validate(params)
    h = fam.operator(p, n)
    mult = StackelMultiplier(fam.multiplier)
    dual = stackel_transform(h, mult, fam.dual_energy(p, n), fam.role)
    cert = check_algebraizable(dual.hprime, n, tol)
    return PreparedProblem(
        model=fam.id,
        params=MappingProxyType(dict(p)),
        n=n,
        h=h,
        multiplier=mult,
        dual=dual,
        certificate=cert,
        gauge=fam.gauge(p, n),
        eigenvalue_role=fam.role,
        constrained_parameter=fam.constrained,
    )


def energy(model: str, params: Mapping, n: int, eigenvalue=None) -> float:
    """Closed-form energy at quantum number n.

    For ``electrons_sphere`` the energy depends on the radius, so the
    Jacobi eigenvalue (-2R) must be supplied when n > 0.  For
    ``newtonian_cosmology`` the value is the quantized B1; see
    :func:`newtonian_physical_energy` for E in physical units.
    """
    fam = get_model(model)
    if int(n) != n or n < 0:
        raise InvalidParams("n must be a nonnegative integer")
    return fam.energy(fam.validate(params), int(n), eigenvalue)


def interpret_eigenvalue(model: str, eigenvalue, params: Mapping, n: int) -> ConstraintRecord:
    fam = get_model(model)
    return fam.constraint(fam.validate(params), int(n), eigenvalue)


def wavefunction(problem: PreparedProblem, y: Polynomial, eigenvalue=None) -> Wavefunction:
    return problem.wavefunction(y, eigenvalue)


# --------------------------------------------------------------------------
# Newtonian cosmology unit conversion
# --------------------------------------------------------------------------

def newtonian_b_parameters(energy: float, mu: float, hbar: float, G: float, Lambda: float,
                           A_d: float, A_q: float, A_v: float, A_m: float, A_r: float) -> dict:
    """B1..B5 from the physical constants of the Newtonian universe potential."""
    k = 8 * math.pi * G * mu**2 / (3 * hbar**2)
    return {
        "B1": 2 * mu * energy / hbar**2 + k * A_d,
        "B2": k * A_q,
        "B3": k * (A_v + Lambda / (8 * math.pi * G)),
        "B4": k * A_m,
        "B5": k * A_r,
    }


def newtonian_physical_energy(params: Mapping, n: int, mu: float = 1.0, hbar: float = 1.0,
                              G: float = 1.0, A_d: float = 0.0) -> float:
    """Energy E of the quantized level from B1 = 2 mu E / hbar^2 + (8 pi G mu^2 / 3 hbar^2) A_d."""
    b1 = energy("newtonian_cosmology", params, n)
    return hbar**2 * b1 / (2 * mu) - 4 * math.pi * G * mu * A_d / 3
