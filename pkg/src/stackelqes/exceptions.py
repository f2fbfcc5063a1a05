"""Exception hierarchy shared by all modules."""


class QESError(Exception):
    """Base class for every error raised by this package."""


class NonPolynomial(QESError):
    """A negative power survived where a polynomial coefficient was required."""


class DegreeOverflow(QESError):
    """A coefficient exceeds the Heun degree caps (4, 3, 2)."""


class NotAlgebraizable(QESError):
    """The operator fails the sl(2) conditions for the requested n."""


class ClosureViolation(QESError):
    """The Jacobi block leaks out of the (n+1)-dimensional polynomial space."""


class NonConvergence(QESError):
    """The dense or finite-difference eigensolver did not converge."""


class ZeroVector(QESError):
    """An eigenvector with no nonzero component was supplied."""


class InvalidParams(QESError, ValueError):
    """Model parameters violate their domain constraints."""


class EvaluationOutOfDomain(QESError, ValueError):
    """A wavefunction was evaluated at r <= 0."""
