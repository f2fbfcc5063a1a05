
import numpy as np
import pytest

from stackelqes import (EvaluationOutOfDomain, Grid, Polynomial, build, duality_check, fd_match,
                        fd_spectrum, ode_residual)
from stackelqes.models import MODEL_IDS
from stackelqes.verification import fd_convergence

from conftest import draw_params

H2D = ("hydrogen2d", {"omega_L": 0.5, "m": 0})


def test_grid_validation_and_parse():
    g = Grid.parse("0.05:12:1000")
    assert (g.r_min, g.r_max, g.points, g.spacing) == (0.05, 12.0, 1000, "log")
    assert g.nodes()[0] == pytest.approx(0.05) and g.nodes()[-1] == pytest.approx(12)
    with pytest.raises(EvaluationOutOfDomain):
        Grid(0.0, 1.0, 10)
    with pytest.raises(ValueError):
        Grid(0.1, 1.0, 1)
    with pytest.raises(ValueError):
        Grid.parse("1:2")


def test_hydrogen_residual_example():
    rep = ode_residual(*H2D, 1, (1.0, Polynomial([1.0, 1.0])), Grid(0.05, 12, 1000))
    assert rep.passed and rep.max_rel_residual <= 1e-8 and rep.samples == 1000


def test_free_hooke_residual():
    rep = ode_residual("hooke_oscillator", {"omega_r": 1, "l": 0}, 0, (0.0, Polynomial([1.0])))
    assert rep.max_rel_residual <= 1e-10


def test_perturbed_coupling_fails():
    rep = ode_residual(*H2D, 1, (1.0, Polynomial([1.0, 1.0])), constrained_value=1.01)
    assert rep.max_rel_residual > 1e-3 and not rep.passed


def test_wrong_polynomial_fails():
    rep = ode_residual(*H2D, 1, (1.0, Polynomial([-1.0, 1.0])))
    assert not rep.passed


def test_duality_examples():
    rep = duality_check(*H2D, 1, (1.0, Polynomial([1.0, 1.0])), 100)
    assert rep.detail["hprime_residual"] <= 1e-10 and rep.detail["dual_residual"] <= 1e-10
    rep = duality_check("hooke_oscillator", {"omega_r": 1, "l": 0}, 0, (0.0, Polynomial([1.0])))
    assert rep.max_rel_residual <= 1e-15
    p = build("electrons_sphere", {"gamma": 1.0, "delta": 2.0}, 2)
    sol = p.solve()
    i = int(np.argmin(sol.eigenvalues))
    rep = duality_check(p, None, None, (sol.eigenvalues[i], sol.eigen_polys[i]))
    assert rep.max_rel_residual <= 1e-9


@pytest.mark.parametrize("model", MODEL_IDS)
def test_oracles_agree_on_pass_fail(model, rng):
    p = build(model, draw_params(model, rng), 2)
    for _, lam, y in p.solve().real_pairs():
        if not p.verifiable(lam):
            continue
        ode = ode_residual(p, None, None, (lam, y))
        dual = duality_check(p, None, None, (lam, y))
        assert ode.passed == dual.passed == True
        bad = Polynomial(list(y.coeffs[:-1]) + [y.coeffs[-1] * 1.1]) if y.degree > 0 else y * 1.0
        if y.degree > 0:
            assert ode_residual(p, None, None, (lam, bad)).passed == duality_check(p, None, None, (lam, bad)).passed == False


def test_fd_hydrogen_example():
    m = fd_match(*H2D, 1, 1.0)
    assert m.error <= 1e-3 and m.target == 1.0


def test_fd_hooke_examples():
    prm = {"omega_r": 1, "l": 0}
    assert fd_match("hooke_oscillator", prm, 1, 2.0).error <= 1e-3
    levels = fd_spectrum("hooke_oscillator", prm, 0, 0.0, k=3)
    assert levels[0] == pytest.approx(3.0, abs=1e-3)
    assert levels[1] == pytest.approx(7.0, abs=1e-2)


def test_fd_hooke_higher_l():
    prm = {"omega_r": 0.8, "l": 2}
    p = build("hooke_oscillator", prm, 1)
    lam = max(p.solve().eigenvalues)
    assert fd_match(p, None, None, lam).error <= 1e-3


def test_fd_not_supported():
    with pytest.raises(NotImplementedError):
        fd_spectrum("inverse_quartic", {"a": -1, "c": 0, "d": 1}, 1, 1.0)


@pytest.mark.parametrize("model,params", [
    ("hydrogen2d", {"omega_L": 0.7, "m": 2}),
    ("hydrogen2d", {"omega_L": 1.1, "m": -1}),
    ("hooke_magnetic", {"omega_0": 1.0, "omega_L": 0.6, "m": -2, "eta": 0.3}),
    ("inverse_sextic", {"omega": 1.0, "c": 0.4, "d": 0.3}),
])
def test_fd_contains_qes_level(model, params):
    p = build(model, params, 1)
    for _, lam, _y in p.solve().real_pairs():
        if not p.interpret(lam).admissible:
            continue
        conv = fd_convergence(p, None, None, lam, points=8000, k=8)
        assert conv["error"] <= 1e-3
        assert 3.0 <= conv["ratio"] <= 5.0


def test_fd_index_reports_excited_level():
    # QES levels need not be the ground state; the nearest FD level is matched
    p = build("hydrogen2d", {"omega_L": 0.5, "m": 0}, 2)
    lam = min(p.solve().eigenvalues)
    m = fd_match(p, None, None, lam, k=8)
    assert m.error <= 1e-3
    assert m.target == pytest.approx(1.5)
