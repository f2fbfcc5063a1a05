"""Stackel transform by a monomial multiplier and coupling constant metamorphosis.

Given a gauge-transformed problem ``(H - alpha * x**-mu) y = E y`` the
transformed operator ``H' = x**mu (H - E)`` has ``y`` as an eigenfunction with
eigenvalue ``alpha``; the coupling and the energy trade places.
"""

from __future__ import annotations

from dataclasses import dataclass

from .operator_core import HeunOperator, LaurentOperator, multiply_by_monomial, to_heun

ALLOWED_EXPONENTS = (0, 1, 2)


@dataclass(frozen=True)
class StackelMultiplier:
    """U(x) = x**(-exponent) on x > 0; the transform multiplies by x**exponent."""

    exponent: int

    def __post_init__(self):
        if isinstance(self.exponent, bool) or int(self.exponent) != self.exponent:
            raise ValueError("multiplier exponent must be an integer")
        if self.exponent not in ALLOWED_EXPONENTS:
            raise ValueError(
                f"only monomial multipliers x^mu with mu in {ALLOWED_EXPONENTS} are supported"
            )

    def potential(self, x):
        """Value of U(x), the function multiplying the coupling."""
        return x ** (-float(self.exponent))


@dataclass(frozen=True)
class CcmPair:
    """Coupling ``alpha`` and energy ``energy`` of one side of the duality.

    ``alpha_role`` / ``energy_role`` name what each number means physically,
    e.g. ``("Z", "epsilon")``.
    """

    alpha: complex | float
    energy: complex | float
    alpha_role: str = "alpha"
    energy_role: str = "E"


def ccm_swap(pair: CcmPair) -> CcmPair:
    """Exchange the coupling and energy roles; an involution."""
    return CcmPair(
        alpha=pair.energy,
        energy=pair.alpha,
        alpha_role=pair.energy_role,
        energy_role=pair.alpha_role,
    )


@dataclass(frozen=True)
class DualProblem:
    """Result of a Stackel transform.

    Attributes
    ----------
    hprime : HeunOperator
        ``x**mu (H - energy)``.
    multiplier : StackelMultiplier
    energy : float
        The energy of ``H`` that was absorbed; it is the coupling of ``H'``.
    eigen_constant_role : str
        What the eigenvalue of ``hprime`` stands for in the original problem.
    """

    hprime: HeunOperator
    multiplier: StackelMultiplier
    energy: float
    eigen_constant_role: str = "alpha"

    def ccm_pair(self, eigenvalue) -> CcmPair:
        """The pair of ``H'``: coupling ``energy`` and eigenvalue ``eigenvalue``."""
        return CcmPair(alpha=self.energy, energy=eigenvalue,
                       alpha_role="E", energy_role=self.eigen_constant_role)

    def recover(self) -> LaurentOperator:
        """Undo the transform: ``x**-mu H' + energy``."""
        back = multiply_by_monomial(self.hprime.to_laurent(), -self.multiplier.exponent)
        return back.minus_constant(-self.energy)


def stackel_transform(h: LaurentOperator, u: StackelMultiplier | int, energy: float,
                      eigen_constant_role: str = "alpha") -> DualProblem:
    """Return ``H' = x**mu (H - energy Id)`` as a Heun operator.

    Propagates ``NonPolynomial`` / ``DegreeOverflow`` when the multiplier does
    not bring ``H`` into Heun form.
    """
    if not isinstance(u, StackelMultiplier):
        u = StackelMultiplier(u)
    shifted = multiply_by_monomial(h.minus_constant(energy), u.exponent)
    return DualProblem(to_heun(shifted), u, float(energy), eigen_constant_role)
