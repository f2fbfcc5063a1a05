import numpy as np
import pytest


def draw_params(model: str, rng: np.random.Generator) -> dict:
    """A generic valid parameter set for one catalog model."""
    u = rng.uniform
    if model == "hydrogen2d":
        return {"omega_L": u(0.1, 3.0), "m": int(rng.integers(-3, 4))}
    if model == "hooke_oscillator":
        return {"omega_r": u(0.1, 3.0), "l": int(rng.integers(0, 5))}
    if model == "hooke_magnetic":
        return {"omega_0": u(0.0, 2.0), "omega_L": u(0.1, 2.0), "m": int(rng.integers(-3, 4)),
                "eta": u(-1.0, 1.0)}
    if model == "electrons_sphere":
        return {"gamma": u(0.2, 3.0), "delta": u(0.2, 3.0)}
    if model == "inverse_quartic":
        return {"a": u(-2.0, -0.1), "c": u(-0.5, 1.0), "d": u(0.2, 2.0)}
    if model == "inverse_sextic":
        return {"omega": u(0.2, 2.0), "c": u(-0.5, 1.0), "d": u(0.2, 2.0)}
    if model == "newtonian_cosmology":
        return {"B2": u(-1.0, 1.0), "B3": u(-3.0, -0.2), "B5": u(-1.0, 0.24)}
    raise KeyError(model)


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)
