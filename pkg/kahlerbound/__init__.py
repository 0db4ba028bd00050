__version__ = "0.1.0"

from .errors import (AdmissibilityError, CatalogError, DegenerateDomainError, DomainError,
                     KahlerBoundError, SolverError)
from .types import (BoundMethod, ConstantFamily, DiameterBound, GeometryParams, InequalityConstant,
                    ManifoldSpec, ProductFunction, QuadratureEstimate, ZonalFunction)
from .constants import (beckner_rate, boundary_exponent, critical_exponent, inequality_constant,
                        kahler_beckner_constant, kahler_sobolev_constant, log_sobolev_constant,
                        optimal_k_for_p, proposition_c_constant, riemannian_beckner_constant,
                        riemannian_sobolev_constant)
from .coeff_algebra import (RationalFunction, build_named_expression, check_e_nonneg, evaluate,
                            substitute, verify_all, verify_identity)
from .diameter import (admissible_k_interval, bakry_ledoux_bound, bonnet_myers_bound,
                       chain_24m_check, closed_form_24m, family_bound, optimize_family)
from .rayleigh import (closed_form_200, harmonic_odd_sum, prop_p_margin, rayleigh_integrals,
                       rayleigh_ratio, replay_chain, sin_power_integral, solve_max_diameter,
                       stirling_bounds, wallis_factor)
from .model_check import (check_beckner, check_lambda1, check_log_sobolev, check_poincare,
                          check_sobolev, dirichlet_energy, integrate_product, random_suite,
                          rayleigh_quotient)
from .suites import SUITES, SuiteContext, SuiteRegistry

__all__ = [
    "__version__",
    "KahlerBoundError", "DomainError", "AdmissibilityError", "CatalogError",
    "DegenerateDomainError", "SolverError",
    "GeometryParams", "ConstantFamily", "InequalityConstant", "BoundMethod", "DiameterBound",
    "QuadratureEstimate", "ZonalFunction", "ProductFunction", "ManifoldSpec",
    "riemannian_sobolev_constant", "riemannian_beckner_constant", "kahler_sobolev_constant",
    "kahler_beckner_constant", "log_sobolev_constant", "optimal_k_for_p",
    "proposition_c_constant", "critical_exponent", "boundary_exponent", "beckner_rate",
    "inequality_constant",
    "RationalFunction", "build_named_expression", "verify_identity", "verify_all",
    "check_e_nonneg", "evaluate", "substitute",
    "bonnet_myers_bound", "bakry_ledoux_bound", "family_bound", "closed_form_24m",
    "optimize_family", "chain_24m_check", "admissible_k_interval",
    "sin_power_integral", "wallis_factor", "rayleigh_ratio", "rayleigh_integrals",
    "prop_p_margin", "solve_max_diameter", "closed_form_200", "replay_chain",
    "stirling_bounds", "harmonic_odd_sum",
    "integrate_product", "dirichlet_energy", "check_poincare", "check_beckner",
    "check_sobolev", "check_log_sobolev", "check_lambda1", "rayleigh_quotient", "random_suite",
    "SUITES", "SuiteContext", "SuiteRegistry",
]
