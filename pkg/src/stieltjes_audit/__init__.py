"""High precision Stieltjes constants, Bell polynomials, and identity audits.

The package has three layers: exact integer/rational kernels (exact, bell),
arbitrary-precision numerics on top of gmpy2 (xreal, quadrature, zeta, hasse,
polylog, coppo), and the identity registry plus command line front end
(auditor, cli).  Everything numeric flows through XReal so precision is
always explicit.
"""

__version__ = "0.1.0"

from .auditor import (AuditContext, AuditReport, DnTable, IdentityCase,
                      adjudicate_stieltjes_families, case_by_id,
                      compute_dn_table, dn_convolution, evaluate_case,
                      limit_suite, reconstruct_gamma_via_dn, registry,
                      run_registry, sign_suites)
from .bell import (BellPoly, bell_eval, bell_from_recurrence,
                   complete_bell_poly, partition_count)
from .coppo import backsub_coefficients, moment_integral, stieltjes_via_coppo
from .hasse import (HasseConfig, StieltjesValue, bernoulli_hasse,
                    digamma_hasse, eta_sequence, hasse_sum, stieltjes_gamma)
from .polylog import dilog, logarithmic_integral
from .quadrature import (EndpointExcluded, QuadResult,
                         QuadratureNonConvergence, integrate_halfline,
                         integrate_unit)
from .xreal import (DomainError, NonConvergenceError, StieltjesAuditError,
                    XReal, as_xreal, bose_kernel, decimal_digits_for,
                    omega_kernel, pow_, sum_series)
from .zeta import (digamma, euler_gamma, gamma_derivative, gamma_real,
                   hurwitz_zeta, polygamma, riemann_zeta, stieltjes_laurent,
                   zeta_prime_2, zeta_prime_minus_one)

__all__ = [
    "__version__",
    "AuditContext", "AuditReport", "DnTable", "IdentityCase",
    "adjudicate_stieltjes_families", "case_by_id", "compute_dn_table",
    "dn_convolution", "evaluate_case", "limit_suite",
    "reconstruct_gamma_via_dn", "registry", "run_registry", "sign_suites",
    "BellPoly", "bell_eval", "bell_from_recurrence", "complete_bell_poly",
    "partition_count",
    "backsub_coefficients", "moment_integral", "stieltjes_via_coppo",
    "HasseConfig", "StieltjesValue", "bernoulli_hasse", "digamma_hasse",
    "eta_sequence", "hasse_sum", "stieltjes_gamma",
    "dilog", "logarithmic_integral",
    "EndpointExcluded", "QuadResult", "QuadratureNonConvergence",
    "integrate_halfline", "integrate_unit",
    "DomainError", "NonConvergenceError", "StieltjesAuditError", "XReal",
    "as_xreal", "bose_kernel", "decimal_digits_for", "omega_kernel", "pow_",
    "sum_series",
    "digamma", "euler_gamma", "gamma_derivative", "gamma_real",
    "hurwitz_zeta", "polygamma", "riemann_zeta", "stieltjes_laurent",
    "zeta_prime_2", "zeta_prime_minus_one",
]
