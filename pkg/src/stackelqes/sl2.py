"""sl(2) generators on polynomials of degree <= n and the realization of Heun operators.

The representation used throughout::

    J+ = -x^2 d/dx + n x,    J0 = x d/dx - n/2,    J- = d/dx

acts on span{1, x, ..., x^n}.  A Heun operator is an element of the
enveloping algebra exactly when three linear conditions on its
coefficients hold (``check_algebraizable``).
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .exceptions import NotAlgebraizable
from .operator_core import HeunOperator, LaurentOperator, Polynomial, to_heun

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Sl2Generators:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a nonnegative integer")

    def first_order(self, which: str):
        """(coefficient of d/dx, multiplicative part) as polynomials."""
        n = float(self.n)
        if which == "plus":
            return Polynomial([0.0, 0.0, -1.0]), Polynomial([0.0, n])
        if which == "zero":
            return Polynomial([0.0, 1.0]), Polynomial([-n / 2])
        if which == "minus":
            return Polynomial([1.0]), Polynomial()
        raise ValueError(f"unknown generator {which!r}")

    def matrix(self, which: str) -> np.ndarray:
        return generator_matrix(which, self.n)


def generator_matrix(which: str, n: int) -> np.ndarray:
    """Matrix of J+, J0 or J- on the monomial basis; column k is the image of x^k."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = np.zeros((n + 1, n + 1))
    for k in range(n + 1):
        if which == "plus":
            if k < n:
                m[k + 1, k] = n - k
        elif which == "zero":
            m[k, k] = k - n / 2
        elif which == "minus":
            if k > 0:
                m[k - 1, k] = k
        else:
            raise ValueError(f"unknown generator {which!r}")
    return m


@dataclass(frozen=True)
class AlgebraizationCertificate:
    n: int
    residuals: tuple
    scale: float
    tol: float
    passed: bool

    def as_dict(self) -> dict:
        return {"n": self.n, "residuals": list(self.residuals), "scale": self.scale,
                "tol": self.tol, "passed": self.passed}


def condition_residuals(h: HeunOperator, n: int) -> tuple:
    a, b, c = h.a, h.b, h.c
    r1 = b[3] + 2 * (n - 1) * a[4]
    r2 = c[1] + n * ((n - 1) * a[3] + b[2])
    r3 = c[2] - n * (n - 1) * a[4]
    return (r1, r2, r3)


def check_algebraizable(h: HeunOperator, n: int, tol: float = DEFAULT_TOL) -> AlgebraizationCertificate:
    """Test the three sl(2) conditions at a given n.

    Tolerance is relative to ``h.scale()`` (largest coefficient magnitude, at least 1).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    res = condition_residuals(h, n)
    scale = h.scale()
    passed = all(abs(r) <= tol * scale for r in res)
    return AlgebraizationCertificate(int(n), res, scale, tol, passed)


def find_all_n(h: HeunOperator, n_max: int, tol: float = DEFAULT_TOL) -> list[int]:
    return [n for n in range(n_max + 1) if check_algebraizable(h, n, tol).passed]


def find_n(h: HeunOperator, n_max: int, tol: float = DEFAULT_TOL) -> int | None:
    """Smallest n in 0..n_max at which ``h`` is algebraizable, else None."""
    found = find_all_n(h, n_max, tol)
    return found[0] if found else None


@dataclass(frozen=True)
class Sl2Element:
    """Quadratic element of U[sl(2)] in the ordered monomials used by ``realize_sl2``."""

    n: int
    q_pp: float = 0.0
    q_p0: float = 0.0
    q_00: float = 0.0
    q_0m: float = 0.0
    q_mm: float = 0.0
    l_p: float = 0.0
    l_0: float = 0.0
    l_m: float = 0.0
    k: float = 0.0

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def realize_sl2(h: HeunOperator, n: int, tol: float = DEFAULT_TOL) -> Sl2Element:
    """Express ``h`` through J+, J0, J- at representation label n."""
    cert = check_algebraizable(h, n, tol)
    if not cert.passed:
        raise NotAlgebraizable(f"conditions fail at n={n}: residuals {cert.residuals}")
    a, b, c = h.a, h.b, h.c
    return Sl2Element(
        n=n,
        q_pp=a[4],
        q_p0=-a[3],
        q_00=a[2],
        q_0m=a[1],
        q_mm=a[0],
        l_p=-((3 * n - 2) / 2 * a[3] + b[2]),
        l_0=(n - 1) * a[2] + b[1],
        l_m=n / 2 * a[1] + b[0],
        k=n / 2 * ((n / 2 - 1) * a[2] + b[1]) + c[0],
    )


def _compose(first, second):
    """Product of two first-order operators (p d + q)(r d + s) as (d^2, d, 1) parts."""
    p, q = first
    r, s = second
    return (p * r, p * r.deriv() + p * s + q * r, p * s.deriv() + q * s)


def expand_sl2(e: Sl2Element) -> HeunOperator:
    """Substitute the differential generators and collect a Heun operator."""
    gens = Sl2Generators(e.n)
    jp, j0, jm = (gens.first_order(w) for w in ("plus", "zero", "minus"))
    zero = Polynomial()
    d2, d1, d0 = zero, zero, zero
    quad = ((e.q_pp, jp, jp), (e.q_p0, jp, j0), (e.q_00, j0, j0), (e.q_0m, j0, jm), (e.q_mm, jm, jm))
    for coef, left, right in quad:
        if coef:
            t2, t1, t0 = _compose(left, right)
            d2, d1, d0 = d2 + t2 * coef, d1 + t1 * coef, d0 + t0 * coef
    for coef, (p, q) in ((e.l_p, jp), (e.l_0, j0), (e.l_m, jm)):
        if coef:
            d1, d0 = d1 + p * coef, d0 + q * coef
    d0 = d0 + e.k
    op = LaurentOperator(d2.to_laurent(), d1.to_laurent(), d0.to_laurent())
    return to_heun(op)
