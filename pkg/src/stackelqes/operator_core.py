"""Polynomials, Laurent polynomials and second-order operators built on them.

Everything here is immutable and coefficient-exact: arithmetic is plain
float (or complex) convolution, with no pruning except of exact zeros.
Numerically tiny terms are only removed through an explicit ``chop``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Number
from collections.abc import Iterable, Mapping

import numpy as np
from numpy.polynomial import polynomial as npoly

from .exceptions import DegreeOverflow, NonPolynomial

CHOP_EPS = 1e-12

HEUN_CAPS = (4, 3, 2)


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Polynomial:
    """Dense univariate polynomial, coefficients in ascending powers.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Complex coefficients are allowed (eigenvectors of nonsymmetric
    Jacobi matrices may be complex).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        vals = []
        for c in coeffs:
            c = complex(c) if isinstance(c, complex) or np.iscomplexobj(c) else float(c)
            vals.append(c)
        object.__setattr__(self, "coeffs", _strip(vals))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, k: int, c: Number = 1.0) -> Polynomial:
        return cls([0.0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_complex(self) -> bool:
        return any(isinstance(c, complex) for c in self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0.0

    def __call__(self, x):
        if not self.coeffs:
            return np.zeros_like(np.asarray(x, dtype=float))
        return npoly.polyval(x, np.asarray(self.coeffs))

    def deriv(self, m: int = 1) -> Polynomial:
        if len(self.coeffs) <= m:
            return Polynomial()
        return Polynomial(npoly.polyder(np.asarray(self.coeffs), m))

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self), len(other))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, Number):
            return Polynomial(c * other for c in self.coeffs)
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Number):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def norm(self) -> float:
        return float(np.linalg.norm(np.asarray(self.coeffs))) if self.coeffs else 0.0

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return Polynomial(c / lead for c in self.coeffs)

    def chop(self, eps: float = CHOP_EPS) -> Polynomial:
        """Zero every coefficient below ``eps`` times the largest magnitude."""
        if not self.coeffs:
            return self
        scale = max(abs(c) for c in self.coeffs)
        return Polynomial(0.0 if abs(c) <= eps * scale else c for c in self.coeffs)

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly({k: c for k, c in enumerate(self.coeffs) if c != 0})


def _as_poly(obj) -> Polynomial:
    if isinstance(obj, Polynomial):
        return obj
    if isinstance(obj, Number):
        return Polynomial([obj])
    return Polynomial(obj)


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of c_k x^k with k any integer; zero terms are never stored."""

    terms: Mapping[int, Number] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): v for k, v in sorted(self.terms.items()) if v != 0}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, k: int, c: Number = 1.0) -> LaurentPoly:
        return cls({k: c})

    @classmethod
    def constant(cls, c: Number) -> LaurentPoly:
        return cls({0: c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exponent(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def max_exponent(self) -> int | None:
        return max(self.terms) if self.terms else None

    def coefficient(self, k: int):
        return self.terms.get(k, 0.0)

    def __add__(self, other):
        other = _as_laurent(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0.0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        if isinstance(other, Number):
            return LaurentPoly({k: v * other for k, v in self.terms.items()})
        other = _as_laurent(other)
        out: dict[int, Number] = {}
        for i, u in self.terms.items():
            for j, v in other.terms.items():
                out[i + j] = out.get(i + j, 0.0) + u * v
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, mu: int) -> LaurentPoly:
        """Multiply by x**mu."""
        return LaurentPoly({k + mu: v for k, v in self.terms.items()})

    def __call__(self, x):
        x = np.asarray(x)
        out = np.zeros(x.shape, dtype=complex if self.is_complex else float)
        for k, v in self.terms.items():
            out = out + v * x ** float(k)
        return out

    @property
    def is_complex(self) -> bool:
        return any(isinstance(v, complex) for v in self.terms.values())

    def magnitude(self) -> float:
        return max((abs(v) for v in self.terms.values()), default=0.0)

    def chop(self, eps: float = CHOP_EPS) -> LaurentPoly:
        scale = self.magnitude()
        return LaurentPoly({k: v for k, v in self.terms.items() if abs(v) > eps * scale})

    def to_polynomial(self) -> Polynomial:
        if self.terms and self.min_exponent < 0:
            raise NonPolynomial(f"negative exponent {self.min_exponent} present")
        if not self.terms:
            return Polynomial()
        return Polynomial(self.coefficient(k) for k in range(self.max_exponent + 1))

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        body = " + ".join(f"{v!r}*x^{k}" for k, v in self.terms.items())
        return f"LaurentPoly({body})"


def _as_laurent(obj) -> LaurentPoly:
    if isinstance(obj, LaurentPoly):
        return obj
    if isinstance(obj, Polynomial):
        return obj.to_laurent()
    if isinstance(obj, Number):
        return LaurentPoly.constant(obj)
    if isinstance(obj, Mapping):
        return LaurentPoly(obj)
    raise TypeError(f"cannot interpret {type(obj).__name__} as a Laurent polynomial")


@dataclass(frozen=True)
class LaurentOperator:
    """The operator p2(x) d^2/dx^2 + p1(x) d/dx + p0(x)."""

    p2: LaurentPoly = field(default_factory=LaurentPoly)
    p1: LaurentPoly = field(default_factory=LaurentPoly)
    p0: LaurentPoly = field(default_factory=LaurentPoly)

    def __post_init__(self):
        for name in ("p2", "p1", "p0"):
            object.__setattr__(self, name, _as_laurent(getattr(self, name)))

    def minus_constant(self, value: Number) -> LaurentOperator:
        """Return ``self - value * Id``."""
        return LaurentOperator(self.p2, self.p1, self.p0 - value)

    def __add__(self, other: LaurentOperator) -> LaurentOperator:
        return LaurentOperator(self.p2 + other.p2, self.p1 + other.p1, self.p0 + other.p0)

    def __sub__(self, other: LaurentOperator) -> LaurentOperator:
        return LaurentOperator(self.p2 - other.p2, self.p1 - other.p1, self.p0 - other.p0)

    def terms_at(self, y: Polynomial, x):
        """Pointwise values of the three terms p2*y'', p1*y', p0*y."""
        return (self.p2(x) * y.deriv(2)(x), self.p1(x) * y.deriv(1)(x), self.p0(x) * y(x))

    def max_coefficient(self) -> float:
        return max(self.p2.magnitude(), self.p1.magnitude(), self.p0.magnitude())


@dataclass(frozen=True)
class HeunOperator:
    """X d^2 + Y d + Z with deg X <= 4, deg Y <= 3, deg Z <= 2.

    ``a``, ``b``, ``c`` hold the ascending coefficients of X, Y and Z.
    """

    a: tuple = (0.0,) * 5
    b: tuple = (0.0,) * 4
    c: tuple = (0.0,) * 3

    def __post_init__(self):
        for name, size in zip("abc", (5, 4, 3)):
            vals = tuple(getattr(self, name))
            if len(vals) > size:
                if any(v != 0 for v in vals[size:]):
                    raise DegreeOverflow(f"{name} has more than {size} coefficients")
                vals = vals[:size]
            vals = vals + (0.0,) * (size - len(vals))
            object.__setattr__(self, name, tuple(float(v) for v in vals))

    @classmethod
    def from_coefficients(cls, values) -> HeunOperator:
        """Build from the flat list a0..a4, b0..b3, c0..c2."""
        values = list(values)
        if len(values) != 12:
            raise ValueError(f"expected 12 coefficients, got {len(values)}")
        return cls(tuple(values[:5]), tuple(values[5:9]), tuple(values[9:]))

    def coefficients(self) -> tuple:
        return self.a + self.b + self.c

    def scale(self) -> float:
        """max(|a_k|, |b_k|, |c_k|, 1), the reference magnitude for tolerances."""
        return max([1.0] + [abs(v) for v in self.coefficients()])

    def to_laurent(self) -> LaurentOperator:
        mk = lambda vals: LaurentPoly(dict(enumerate(vals)))
        return LaurentOperator(mk(self.a), mk(self.b), mk(self.c))

    def allclose(self, other: HeunOperator, rtol: float = 1e-12) -> bool:
        diff = np.abs(np.subtract(self.coefficients(), other.coefficients()))
        return bool(np.all(diff <= rtol * max(self.scale(), other.scale())))


def apply_operator(op: LaurentOperator, y: Polynomial) -> LaurentPoly:
    """Return p2*y'' + p1*y' + p0*y by exact coefficient convolution."""
    y = _as_poly(y)
    return op.p2 * y.deriv(2) + op.p1 * y.deriv(1) + op.p0 * y


def multiply_by_monomial(op: LaurentOperator, mu: int) -> LaurentOperator:
    """Left-multiply every coefficient of ``op`` by x**mu."""
    return LaurentOperator(op.p2.shift(mu), op.p1.shift(mu), op.p0.shift(mu))


def to_heun(op: LaurentOperator) -> HeunOperator:
    """Read off the Heun coefficients of a polynomial-coefficient operator.

    Raises
    ------
    NonPolynomial
        If any coefficient still carries a negative power of x.
    DegreeOverflow
        If deg p2 > 4, deg p1 > 3 or deg p0 > 2.
    """
    out = []
    for name, poly, cap in zip(("p2", "p1", "p0"), (op.p2, op.p1, op.p0), HEUN_CAPS):
        if poly.terms and poly.min_exponent < 0:
            raise NonPolynomial(
                f"{name} has a term x^{poly.min_exponent}; the multiplier does not clear the pole"
            )
        if poly.terms and poly.max_exponent > cap:
            raise DegreeOverflow(f"{name} has degree {poly.max_exponent} > {cap}")
        vals = [poly.coefficient(k) for k in range(cap + 1)]
        if any(isinstance(v, complex) for v in vals):
            raise TypeError("Heun coefficients must be real")
        out.append(tuple(vals))
    return HeunOperator(*out)
