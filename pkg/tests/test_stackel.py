import pytest

from stackelqes import (CcmPair, LaurentOperator, LaurentPoly, NonPolynomial, StackelMultiplier,
                        ccm_swap, stackel_transform)


def hydrogen_like(omega=0.5, m=0):
    return LaurentOperator(LaurentPoly({0: 1.0}), LaurentPoly({1: -2 * omega, -1: 2 * abs(m) + 1.0}),
                           LaurentPoly({}))


def test_multiplier_validation():
    for bad in (3, -1, 1.5, True):
        with pytest.raises(ValueError):
            StackelMultiplier(bad)
    assert StackelMultiplier(2).potential(2.0) == 0.25


def test_ccm_swap_is_involution():
    pair = CcmPair(1.5, -2.0, "Z", "epsilon")
    once = ccm_swap(pair)
    assert once.alpha == -2.0 and once.alpha_role == "epsilon"
    assert ccm_swap(once) == pair


def test_transform_hydrogen_coefficients():
    dual = stackel_transform(hydrogen_like(), 1, -1.0, "Z")
    h = dual.hprime
    assert h.a == (0.0, 1.0, 0.0, 0.0, 0.0)
    assert h.b == (1.0, 0.0, -1.0, 0.0)
    assert h.c == (0.0, 1.0, 0.0)


def test_recover_inverts_transform():
    op = hydrogen_like(0.7, 2)
    dual = stackel_transform(op, StackelMultiplier(1), -2.8)
    back = dual.recover()
    assert back.p2 == op.p2 and back.p1 == op.p1 and back.p0 == op.p0


def test_insufficient_multiplier_propagates():
    with pytest.raises(NonPolynomial):
        stackel_transform(hydrogen_like(), 0, -1.0)


def test_ccm_pair_of_dual():
    dual = stackel_transform(hydrogen_like(), 1, -1.0, "Z")
    pair = dual.ccm_pair(1.0)
    assert (pair.alpha, pair.energy, pair.energy_role) == (-1.0, 1.0, "Z")
