import math

import numpy as np
import pytest

from stackelqes import (EvaluationOutOfDomain, InvalidParams, Polynomial, build, catalog,
                        characteristic_poly, energy, interpret_eigenvalue, newtonian_b_parameters,
                        newtonian_physical_energy, wavefunction)
from stackelqes.models import MODEL_IDS

from conftest import draw_params


@pytest.mark.parametrize("model", MODEL_IDS)
def test_build_passes_sl2_test_for_all_n(model, rng):
    for n in range(6):
        p = build(model, draw_params(model, rng), n)
        assert p.certificate.passed
        assert max(abs(r) for r in p.certificate.residuals) <= 1e-9 * p.certificate.scale


def test_hydrogen_build_example():
    p = build("hydrogen2d", {"omega_L": 0.5, "m": 0}, 1)
    assert p.jacobi().dense.tolist() == [[0, 1], [1, 0]]
    assert p.eigenvalue_role == "Z"


def test_electrons_sphere_example():
    p = build("electrons_sphere", {"gamma": 1, "delta": 2}, 1)
    lam = p.solve().eigenvalues
    assert np.allclose(lam, [-math.sqrt(2), math.sqrt(2)])
    recs = [p.interpret(v) for v in lam]
    assert [r.admissible for r in recs] == [True, False]
    assert recs[0].value == pytest.approx(math.sqrt(2) / 2)
    assert p.energy(lam[0]) == pytest.approx(1.0)


def test_newtonian_n0_example():
    p = build("newtonian_cosmology", {"B2": 0.7, "B3": -1.0, "B5": 0.0}, 0)
    (lam,) = p.solve().eigenvalues
    assert lam == 0.0
    assert p.interpret(lam).value == 0.0


def test_energy_examples():
    assert energy("hydrogen2d", {"omega_L": 0.5, "m": 0}, 1) == 1.0
    assert energy("hooke_oscillator", {"omega_r": 1, "l": 0}, 2) == 7.0
    assert energy("electrons_sphere", {"gamma": 1, "delta": 2}, 0) == 0.0
    with pytest.raises(InvalidParams):
        energy("electrons_sphere", {"gamma": 1, "delta": 2}, 1)


def test_interpret_examples():
    rec = interpret_eigenvalue("hydrogen2d", 1.0, {"omega_L": 0.5, "m": 0}, 1)
    assert (rec.parameter, rec.value, rec.admissible) == ("Z", 1.0, True)
    rec = interpret_eigenvalue("electrons_sphere", 0.0, {"gamma": 1, "delta": 2}, 1)
    assert not rec.admissible and rec.reason == "R=0 nonphysical"
    rec = interpret_eigenvalue("hydrogen2d", 0.0, {"omega_L": 0.5, "m": 0}, 2)
    assert not rec.admissible and rec.reason == "coupling vanishes"


def test_quartic_complex_roots_not_admissible():
    # discriminant (1+t)^2 - 4 a sqrt(2d)/(2+t) < 0 at a=1, c=0, d=0.5
    p = build("inverse_quartic", {"a": 1, "c": 0, "d": 0.5}, 1)
    sol = p.solve()
    assert all(isinstance(v, complex) for v in sol.eigenvalues)
    assert not any(p.interpret(v).admissible for v in sol.eigenvalues)


@pytest.mark.parametrize("model,params", [
    ("hydrogen2d", {"omega_L": 0.0, "m": 0}),
    ("hydrogen2d", {"omega_L": 1.0, "m": 0.5}),
    ("hooke_oscillator", {"omega_r": 1.0, "l": -1}),
    ("hooke_magnetic", {"omega_0": 0.0, "omega_L": 0.0, "m": 0}),
    ("electrons_sphere", {"gamma": 0.0, "delta": 1.0}),
    ("inverse_quartic", {"a": 1.0, "c": 0.0, "d": 0.0}),
    ("inverse_sextic", {"omega": 1.0, "c": 0.0, "d": -1.0}),
    ("newtonian_cosmology", {"B2": 0.0, "B3": 0.0, "B5": 0.0}),
    ("newtonian_cosmology", {"B2": 0.0, "B3": -1.0, "B5": 0.5}),
    ("newtonian_cosmology", {"B2": 0.0, "B3": -1.0, "B5": 0.0, "B4": 1.0}),
    ("hydrogen2d", {"omega_L": 1.0}),
    ("hydrogen2d", {"omega_L": "x", "m": 0}),
])
def test_invalid_params(model, params):
    with pytest.raises(InvalidParams):
        build(model, params, 1)


def test_unknown_model_and_bad_n():
    with pytest.raises(InvalidParams):
        build("helium", {}, 1)
    with pytest.raises(InvalidParams):
        build("hydrogen2d", {"omega_L": 1, "m": 0}, -1)


def test_hydrogen_wavefunction_example():
    p = build("hydrogen2d", {"omega_L": 0.5, "m": 0}, 1)
    psi = wavefunction(p, Polynomial([1.0, 1.0]))
    r = np.array([0.1, 1.0, 3.0])
    u = np.sqrt(r) * np.exp(-r**2 / 4) * (r + 1)
    du = (0.5 / r - r / 2) * u + np.sqrt(r) * np.exp(-r**2 / 4)
    got, dgot, _ = psi.derivatives(r)
    assert np.allclose(got, u, rtol=1e-14)
    assert np.allclose(dgot, du, rtol=1e-13)
    with pytest.raises(EvaluationOutOfDomain):
        psi(np.array([0.0]))


def test_hooke_ground_state_wavefunction():
    p = build("hooke_oscillator", {"omega_r": 2.0, "l": 1}, 0)
    r = np.linspace(0.1, 3, 5)
    assert np.allclose(wavefunction(p, Polynomial([1.0]))(r), r**2 * np.exp(-r**2))


def test_sextic_wavefunction_uses_r_squared():
    prm = {"omega": 1.2, "c": 0.3, "d": 0.8}
    p = build("inverse_sextic", prm, 1)
    rho = 0.7
    r = np.array([0.5, 1.0, 2.0])
    root = math.sqrt(2 * prm["d"])
    t = prm["c"] / root
    expect = r ** (1.5 + t) * np.exp(-prm["omega"] * r**2 / 2 - root / (2 * r**2)) * (r**2 - rho)
    assert np.allclose(wavefunction(p, Polynomial([-rho, 1.0]))(r), expect, rtol=1e-13)


def test_second_derivative_against_finite_difference(rng):
    for model in MODEL_IDS:
        p = build(model, draw_params(model, rng), 2)
        sol = p.solve()
        for _, lam, y in sol.real_pairs():
            if model == "electrons_sphere" and lam == 0:
                continue
            psi = p.wavefunction(y, lam)
            lo, hi = p.default_grid_bounds(lam)
            r = np.geomspace(lo * 4, hi / 2, 7)
            h = 1e-4 * r
            f0, f1, f2 = psi.derivatives(r, scaled=False)
            fd2 = (psi(r + h) - 2 * f0 + psi(r - h)) / h**2
            fd1 = (psi(r + h) - psi(r - h)) / (2 * h)
            big = np.maximum(np.abs(f2), np.abs(f0) / r**2)
            assert np.all(np.abs(fd1 - f1) <= 1e-4 * np.maximum(np.abs(f1), np.abs(f0) / r))
            assert np.all(np.abs(fd2 - f2) <= 1e-3 * big)


def test_gauge_sign_flags():
    p = build("inverse_quartic", {"a": -1.0, "c": 0.2, "d": 0.5}, 1)
    g = p.gauge
    assert g.q1 < 0 and g.q_m1 < 0 and g.decays_at_infinity
    p = build("inverse_quartic", {"a": 1.0, "c": 0.2, "d": 0.5}, 1)
    assert not p.gauge.decays_at_infinity  # reported, not rejected


def test_catalog_lists_every_model():
    cat = catalog()
    assert [c["model"] for c in cat] == list(MODEL_IDS)
    assert {"name": "omega_L", "type": "float"}.items() <= cat[0]["params"][0].items()


def test_newtonian_converter_consistency():
    phys = dict(mu=1.3, hbar=0.9, G=0.7, Lambda=0.2, A_d=0.4, A_q=0.1, A_v=-2.0, A_m=0.3, A_r=0.01)
    b = newtonian_b_parameters(energy=0.0, **phys)
    assert b["B3"] < 0
    prm = {"B2": b["B2"], "B3": b["B3"], "B5": b["B5"]}
    e = newtonian_physical_energy(prm, 1, mu=phys["mu"], hbar=phys["hbar"], G=phys["G"], A_d=phys["A_d"])
    again = newtonian_b_parameters(energy=e, **phys)
    assert again["B1"] == pytest.approx(energy("newtonian_cosmology", prm, 1), rel=1e-12)


def _coeffs(p, n):
    out = list(characteristic_poly(p.jacobi()).coeffs)
    return out + [0.0] * (n + 2 - len(out))


def test_quartic_n2_characteristic_polynomial(rng):
    for _ in range(5):
        prm = draw_params("inverse_quartic", rng)
        d_ = math.sqrt(2 * prm["d"])
        t = prm["c"] / d_
        b = prm["a"] / (3 + t)
        ref = [-16 * b * d_ * (3 + 2 * t), 12 + 20 * t + 8 * t * t + 16 * b * d_, -(8 + 6 * t), 1.0]
        got = _coeffs(build("inverse_quartic", prm, 2), 2)
        assert np.allclose(got, ref, rtol=1e-12, atol=1e-12 * max(map(abs, ref)))


def test_quartic_n1_matches_closed_form_constraint(rng):
    for _ in range(5):
        prm = draw_params("inverse_quartic", rng)
        t = prm["c"] / math.sqrt(2 * prm["d"])
        p = build("inverse_quartic", prm, 1)
        lam = max(p.solve().eigenvalues)
        b = p.interpret(lam).value
        # b = [alpha + t(1+t)]/2 + B sqrt(2d), B = a/(2+t)
        assert b == pytest.approx(0.5 * (lam + t * (1 + t)) + prm["a"] / (2 + t) * math.sqrt(2 * prm["d"]))


def _pair_polys(p):
    sol = p.solve()
    return {round(float(np.real(v)), 9): y for v, y in zip(sol.eigenvalues, sol.eigen_polys)}


def test_hydrogen_eigenpolynomials(rng):
    for _ in range(3):
        prm = draw_params("hydrogen2d", rng)
        m, w = abs(prm["m"]), prm["omega_L"]
        pairs = _pair_polys(build("hydrogen2d", prm, 1))
        z = math.sqrt(2 * (2 * m + 1) * w)
        for sign in (1, -1):
            y = pairs[round(sign * z, 9)]
            assert np.allclose(y.coeffs, [sign * math.sqrt((2 * m + 1) / (2 * w)), 1.0], rtol=1e-9)
        pairs = _pair_polys(build("hydrogen2d", prm, 2))
        assert np.allclose(pairs[0.0].coeffs, [-(1 + m) / w, 0.0, 1.0], rtol=1e-9, atol=1e-12)
        z = 2 * math.sqrt((3 + 4 * m) * w)
        for sign in (1, -1):
            y = pairs[round(sign * z, 9)]
            ref = [(1 + 2 * m) / (2 * w), sign * math.sqrt((3 + 4 * m) / w), 1.0]
            assert np.allclose(y.coeffs, ref, rtol=1e-9)


def test_hooke_eigenpolynomials(rng):
    for _ in range(3):
        prm = draw_params("hooke_oscillator", rng)
        l, w = prm["l"], prm["omega_r"]
        pairs = _pair_polys(build("hooke_oscillator", prm, 2))
        assert np.allclose(pairs[0.0].coeffs, [-(3 + 2 * l) / (2 * w), 0.0, 1.0], rtol=1e-9, atol=1e-12)
        z = 2 * math.sqrt((5 + 4 * l) * w)
        for sign in (1, -1):
            ref = [(l + 1) / w, sign * math.sqrt((5 + 4 * l) / w), 1.0]
            assert np.allclose(pairs[round(sign * z, 9)].coeffs, ref, rtol=1e-9)


def test_sphere_eigenpolynomials(rng):
    for _ in range(3):
        prm = draw_params("electrons_sphere", rng)
        g, d = prm["gamma"], prm["delta"]
        p = build("electrons_sphere", prm, 1)
        sol = p.solve()
        for lam, y in zip(sol.eigenvalues, sol.eigen_polys):
            sign = 1 if p.interpret(lam).value > 0 else -1
            assert np.allclose(y.coeffs, [sign / math.sqrt(g * d), 1.0], rtol=1e-9)
        p = build("electrons_sphere", prm, 2)
        sol = p.solve()
        i = int(np.argmin(sol.eigenvalues))
        s = math.sqrt(2 * (3 + 2 * g + 2 * d + g * d) / g) / (2 + d)
        ref = [1 / (g * (2 + d)), s, 1.0]
        assert np.allclose(sol.eigen_polys[i].coeffs, ref, rtol=1e-9)
        assert np.allclose(sol.eigen_polys[1].coeffs, [-(1 + g) / (g * (1 + d)), 0.0, 1.0],
                           rtol=1e-9, atol=1e-12)
