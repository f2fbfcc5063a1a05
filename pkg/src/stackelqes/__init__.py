"""Quasi-exactly solvable radial problems through Stackel transforms and sl(2).

Typical use::

    from stackelqes import build
    problem = build("hydrogen2d", {"omega_L": 0.5, "m": 0}, n=1)
    sol = problem.solve()          # eigenvalues are the allowed couplings Z
    problem.energy()               # closed-form energy at this n
"""

__version__ = "0.1.0"

from .exceptions import (ClosureViolation, DegreeOverflow, EvaluationOutOfDomain, InvalidParams,
                         NonConvergence, NonPolynomial, NotAlgebraizable, QESError, ZeroVector)
from .models import (MODEL_IDS, ConstraintRecord, GaugeFactor, PreparedProblem, Wavefunction,
                     build, catalog, energy, interpret_eigenvalue, newtonian_b_parameters,
                     newtonian_physical_energy, wavefunction)
from .operator_core import (HeunOperator, LaurentOperator, LaurentPoly, Polynomial, apply_operator,
                            multiply_by_monomial, to_heun)
from .sl2 import (AlgebraizationCertificate, Sl2Element, Sl2Generators, check_algebraizable,
                  expand_sl2, find_all_n, find_n, generator_matrix, realize_sl2)
from .solver import (EigenFlag, JacobiMatrix, SpectralSolution, build_jacobi, characteristic_poly,
                     eigen_residual, eigensolve, eigenvector_to_polynomial)
from .stackel import CcmPair, DualProblem, StackelMultiplier, ccm_swap, stackel_transform
from .verification import (Grid, ResidualReport, duality_check, fd_convergence, fd_match,
                           fd_spectrum, ode_residual)

__all__ = [
                         "MODEL_IDS",
                         "AlgebraizationCertificate",
                         "CcmPair",
                         "ClosureViolation",
                         "ConstraintRecord",
                         "DegreeOverflow",
                         "DualProblem",
                         "EigenFlag",
                         "EvaluationOutOfDomain",
                         "GaugeFactor",
                         "Grid",
                         "HeunOperator",
                         "InvalidParams",
                         "JacobiMatrix",
                         "LaurentOperator",
                         "LaurentPoly",
                         "NonConvergence",
                         "NonPolynomial",
                         "NotAlgebraizable",
                         "Polynomial",
                         "PreparedProblem",
                         "QESError",
                         "ResidualReport",
                         "Sl2Element",
                         "Sl2Generators",
                         "SpectralSolution",
                         "StackelMultiplier",
                         "Wavefunction",
                         "ZeroVector",
                         "__version__",
                         "apply_operator",
                         "build",
                         "build_jacobi",
                         "catalog",
                         "ccm_swap",
                         "characteristic_poly",
                         "check_algebraizable",
                         "duality_check",
                         "eigen_residual",
                         "eigensolve",
                         "eigenvector_to_polynomial",
                         "energy",
                         "expand_sl2",
                         "fd_convergence",
                         "fd_match",
                         "fd_spectrum",
                         "find_all_n",
                         "find_n",
                         "generator_matrix",
                         "interpret_eigenvalue",
                         "multiply_by_monomial",
                         "newtonian_b_parameters",
                         "newtonian_physical_energy",
                         "ode_residual",
                         "realize_sl2",
                         "stackel_transform",
                         "to_heun",
                         "wavefunction",
]
