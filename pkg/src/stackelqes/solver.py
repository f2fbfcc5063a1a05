"""Jacobi-matrix eigenproblem for an algebraizable Heun operator."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ClosureViolation, NonConvergence, ZeroVector
from .operator_core import CHOP_EPS, HeunOperator, Polynomial

log = logging.getLogger(__name__)

MAX_DIM = 64
DEGENERACY_TOL = 1e-9
ZERO_SNAP = 1e-13


@dataclass(frozen=True)
class JacobiMatrix:
    """Banded matrix of H' on {1, x, ..., x^n}; column k holds the image of x^k."""

    n: int
    dense: np.ndarray = field(repr=False)
    leak: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        arr = np.array(self.dense, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "dense", arr)

    def entry(self, i: int, k: int) -> float:
        if 0 <= i <= self.n and 0 <= k <= self.n:
            return float(self.dense[i, k])
        return 0.0

    @property
    def bands(self) -> dict:
        return {off: np.diagonal(self.dense, offset=-off).copy() for off in range(-2, 3)}

    @property
    def trace(self) -> float:
        return float(np.trace(self.dense))


def jacobi_entries(h: HeunOperator, n: int, k: int) -> dict:
    """The five nonzero entries in column k, keyed by row index."""
    a, b, c = h.a, h.b, h.c
    return {
        k - 2: k * (k - 1) * a[0],
        k - 1: k * ((k - 1) * a[1] + b[0]),
        k: c[0] + k * b[1] + k * (k - 1) * a[2],
        k + 1: (k - n) * ((n + k - 1) * a[3] + b[2]),
        k + 2: (n - k) * (n - k - 1) * a[4],
    }


def raw_action_matrix(h: HeunOperator, n: int) -> np.ndarray:
    """Coefficients of H' x^k for k <= n without assuming the sl(2) conditions.

    Shape (n+3, n+1): rows n+1 and n+2 hold whatever leaks out of the space.
    """
    a, b, c = h.a, h.b, h.c
    out = np.zeros((n + 3, n + 1))
    for k in range(n + 1):
        for j in range(5):
            if k + j - 2 >= 0:
                out[k + j - 2, k] += a[j] * k * (k - 1)
        for j in range(4):
            if k + j - 1 >= 0:
                out[k + j - 1, k] += b[j] * k
        for j in range(3):
            out[k + j, k] += c[j]
    return out


def build_jacobi(h: HeunOperator, n: int, tol: float = 1e-9) -> JacobiMatrix:
    """Assemble the (n+1)x(n+1) Jacobi matrix and verify closure.

    Raises ``ClosureViolation`` when H' maps x^n or x^(n-1) outside the
    polynomial space by more than ``tol`` times the coefficient scale.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n + 1 > MAX_DIM:
        raise ValueError(f"matrix dimension {n + 1} exceeds the supported {MAX_DIM}")
    m = np.zeros((n + 1, n + 1))
    for k in range(n + 1):
        for i, v in jacobi_entries(h, n, k).items():
            if 0 <= i <= n:
                m[i, k] = v
    raw = raw_action_matrix(h, n)
    leak = float(np.max(np.abs(raw[n + 1:, :]))) if n >= 0 else 0.0
    scale = h.scale()
    if leak > tol * scale:
        raise ClosureViolation(f"H' leaks {leak:.3e} out of P_{n + 1}")
    return JacobiMatrix(n, m, leak, scale)


@dataclass(frozen=True)
class EigenFlag:
    physical: bool = True
    reason: str = ""
    degenerate: bool = False


@dataclass(frozen=True)
class SpectralSolution:
    eigenvalues: tuple
    eigen_polys: tuple
    flags: tuple

    def __len__(self):
        return len(self.eigenvalues)

    def real_pairs(self):
        """(index, eigenvalue, poly) for every real eigenpair."""
        for i, (lam, y) in enumerate(zip(self.eigenvalues, self.eigen_polys)):
            if not isinstance(lam, complex):
                yield i, lam, y


def eigenvector_to_polynomial(v, eps: float = CHOP_EPS) -> Polynomial:
    """y(x) = sum v_k x^k scaled so its leading (non-negligible) coefficient is 1."""
    v = np.asarray(v)
    mags = np.abs(v)
    top = mags.max() if v.size else 0.0
    if top == 0:
        raise ZeroVector("eigenvector has no nonzero entry")
    lead = int(np.nonzero(mags > eps * top)[0][-1])
    coeffs = v[: lead + 1] / v[lead]
    if np.iscomplexobj(coeffs) and np.all(coeffs.imag == 0):
        coeffs = coeffs.real
    return Polynomial(coeffs)


def _ordering(values, scale):
    quant = 1e-10 * scale

    def key(i):
        z = complex(values[i])
        return (round(z.real / quant), z.imag)

    return sorted(range(len(values)), key=key)


def eigensolve(m: JacobiMatrix, zero_reason: str | None = None) -> SpectralSolution:
    """All n+1 eigenpairs, ordered by real part then imaginary part.

    Complex eigenvalues are kept and flagged non-physical.  When
    ``zero_reason`` is given, a vanishing eigenvalue is flagged with it.
    Coincident eigenvalues get an orthonormal basis of the numerical
    eigenspace where one exists, and are flagged degenerate.
    """
    a = np.asarray(m.dense)
    if not np.all(np.isfinite(a)):
        raise NonConvergence("matrix has non-finite entries")
    try:
        vals, vecs = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
    mscale = max(float(np.max(np.abs(a))) if a.size else 0.0, 1.0)
    order = _ordering(vals, mscale)
    vals = vals[order]
    vecs = vecs[:, order]

    degenerate = np.zeros(len(vals), dtype=bool)
    i = 0
    while i < len(vals):
        j = i + 1
        while j < len(vals) and abs(vals[j] - vals[i]) <= DEGENERACY_TOL * mscale:
            j += 1
        if j - i > 1:
            degenerate[i:j] = True
            lam = np.mean(vals[i:j])
            _, s, vh = np.linalg.svd(a - lam * np.eye(len(a)))
            null = vh[s <= np.sqrt(DEGENERACY_TOL) * mscale].conj().T
            if null.shape[1] >= j - i:
                vecs[:, i:j] = null[:, : j - i]
            else:
                log.debug("defective eigenvalue %s: geometric multiplicity %d < %d",
                          lam, null.shape[1], j - i)
        i = j

    eigenvalues, polys, flags = [], [], []
    for idx, lam in enumerate(vals):
        lam = complex(lam)
        # rounding noise around an exact zero (odd-symmetric spectra) becomes 0
        if abs(lam.real) <= ZERO_SNAP * mscale:
            lam = complex(0.0, lam.imag)
        if abs(lam.imag) <= ZERO_SNAP * mscale:
            lam = complex(lam.real, 0.0)
        vec = vecs[:, idx]
        if lam.imag == 0:
            lam_out = lam.real
            if np.iscomplexobj(vec) and np.all(np.abs(vec.imag) <= ZERO_SNAP * np.abs(vec).max()):
                vec = vec.real
        else:
            lam_out = lam
        y = eigenvector_to_polynomial(vec)
        if isinstance(lam_out, complex):
            flag = EigenFlag(False, "complex", bool(degenerate[idx]))
        elif zero_reason and abs(lam_out) <= DEGENERACY_TOL * mscale:
            flag = EigenFlag(False, zero_reason, bool(degenerate[idx]))
        else:
            flag = EigenFlag(True, "", bool(degenerate[idx]))
        eigenvalues.append(lam_out)
        polys.append(y)
        flags.append(flag)
    return SpectralSolution(tuple(eigenvalues), tuple(polys), tuple(flags))


def characteristic_poly(m: JacobiMatrix | np.ndarray) -> Polynomial:
    """Monic characteristic polynomial det(lambda I - A) by Faddeev-LeVerrier.

    Coefficients are ascending; with integer entries every step stays integral.
    """
    a = np.asarray(m.dense if isinstance(m, JacobiMatrix) else m, dtype=float)
    size = a.shape[0]
    coeffs = [0.0] * size + [1.0]
    mk = np.zeros_like(a)
    eye = np.eye(size)
    for k in range(1, size + 1):
        mk = a @ mk + coeffs[size - k + 1] * eye
        coeffs[size - k] = -np.trace(a @ mk) / k
    return Polynomial(coeffs)


def eigen_residual(h: HeunOperator, eigenvalue, y: Polynomial) -> float:
    """||H'y - lambda y|| relative to the size of the individual terms (coefficient norm)."""
    op = h.to_laurent()
    parts = (op.p2 * y.deriv(2), op.p1 * y.deriv(1), op.p0 * y, y.to_laurent() * eigenvalue)
    image = parts[0] + parts[1] + parts[2] - parts[3]
    norm = lambda lp: float(np.linalg.norm(list(lp.terms.values()))) if lp.terms else 0.0
    scale = sum(norm(p) for p in parts)
    return norm(image) / max(scale, 1e-300)
