import numpy as np
import pytest

from stackelqes import (ClosureViolation, HeunOperator, JacobiMatrix, Polynomial, ZeroVector, build,
                        build_jacobi, characteristic_poly, eigen_residual, eigensolve,
                        eigenvector_to_polynomial)
from stackelqes.models import MODEL_IDS

from conftest import draw_params

HYDROGEN_N1 = HeunOperator.from_coefficients([0, 1, 0, 0, 0, 1, 0, -1, 0, 0, 1, 0])


def test_hydrogen_worked_example():
    m = build_jacobi(HYDROGEN_N1, 1)
    assert m.dense.tolist() == [[0, 1], [1, 0]]
    sol = eigensolve(m)
    assert sol.eigenvalues == (-1.0, 1.0)
    assert sol.eigen_polys[0] == Polynomial([-1.0, 1.0])
    assert sol.eigen_polys[1] == Polynomial([1.0, 1.0])


def test_hydrogen_n2_spectrum():
    # omega_L = 1/3, m = 0  ->  {-2, 0, 2}
    p = build("hydrogen2d", {"omega_L": 1 / 3, "m": 0}, 2)
    vals = p.solve().eigenvalues
    assert np.allclose(vals, [-2.0, 0.0, 2.0], atol=1e-12)
    assert p.solve().flags[1].reason == "coupling vanishes"


def test_one_by_one_zero():
    sol = eigensolve(JacobiMatrix(0, np.zeros((1, 1))))
    assert sol.eigenvalues == (0.0,)
    assert sol.eigen_polys[0] == Polynomial([1.0])


def test_closure_violation():
    with pytest.raises(ClosureViolation):
        build_jacobi(HeunOperator.from_coefficients([0, 1, 0, 0, 0, 1, 0, -1, 0, 0, 2, 0]), 1)


def test_size_cap():
    with pytest.raises(ValueError):
        build_jacobi(HeunOperator(), 64)


def test_complex_eigenvalues_flagged():
    m = JacobiMatrix(1, np.array([[0.0, -1.0], [1.0, 0.0]]))
    sol = eigensolve(m)
    assert all(isinstance(v, complex) for v in sol.eigenvalues)
    assert [f.reason for f in sol.flags] == ["complex", "complex"]
    assert sol.eigenvalues[0].imag < sol.eigenvalues[1].imag


def test_degenerate_eigenspace():
    sol = eigensolve(JacobiMatrix(1, np.eye(2) * 3.0))
    assert all(f.degenerate for f in sol.flags)
    assert sol.eigen_polys[0] != sol.eigen_polys[1]


def test_char_poly_small():
    assert characteristic_poly(np.array([[0.0, 1.0], [1.0, 0.0]])) == Polynomial([-1.0, 0.0, 1.0])


def test_eigenvector_to_polynomial():
    assert eigenvector_to_polynomial([1.0, 1.0]) == Polynomial([1.0, 1.0])
    assert eigenvector_to_polynomial([-1.0, 0.0, 1.0]) == Polynomial([-1.0, 0.0, 1.0])
    assert eigenvector_to_polynomial([0.0, 0.0, 2.0]) == Polynomial([0.0, 0.0, 1.0])
    with pytest.raises(ZeroVector):
        eigenvector_to_polynomial([0.0, 0.0])


@pytest.mark.parametrize("model", MODEL_IDS)
def test_model_invariants(model, rng):
    for n in range(9):
        p = build(model, draw_params(model, rng), n)
        jac = p.jacobi()
        h = p.hprime
        # trace identity
        expect = sum(h.c[0] + k * h.b[1] + k * (k - 1) * h.a[2] for k in range(n + 1))
        assert jac.trace == pytest.approx(expect, rel=1e-14, abs=1e-14)
        assert jac.leak <= 1e-9 * jac.scale
        sol = eigensolve(jac)
        for lam, y in zip(sol.eigenvalues, sol.eigen_polys):
            assert eigen_residual(h, lam, y) <= 1e-10
        # second route: companion-matrix roots of the Faddeev-LeVerrier polynomial
        roots = np.roots(characteristic_poly(jac).coeffs[::-1]) if n > 0 else np.array([jac.dense[0, 0]])
        got = np.sort_complex(np.array(sol.eigenvalues, dtype=complex))
        ref = np.sort_complex(roots.astype(complex))
        scale = max(1.0, np.max(np.abs(ref)))
        assert np.allclose(got, ref, atol=1e-9 * scale, rtol=0) or _multiset_close(got, ref, 1e-7 * scale)


def _multiset_close(a, b, tol):
    left = list(b)
    for z in a:
        j = min(range(len(left)), key=lambda i: abs(left[i] - z))
        if abs(left[j] - z) > tol:
            return False
        left.pop(j)
    return True


def test_ordering_is_deterministic():
    p = build("newtonian_cosmology", {"B2": 0.3, "B3": -1.0, "B5": 0.1}, 4)
    a, b = p.solve(), p.solve()
    assert a.eigenvalues == b.eigenvalues
    reals = [v.real if isinstance(v, complex) else v for v in a.eigenvalues]
    assert reals == sorted(reals)
