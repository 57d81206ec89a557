"""Fast Clenshaw-Curtis and Fejer quadrature for Jacobi and log-Jacobi weights."""

from .errors import (
    AccuracyFailure,
    DomainError,
    NumericalFailure,
    UnstableRecurrenceWarning,
    UsageError,
)
from .integrands import Integrand, get_integrand
from .moments import (
    ChebBasis,
    JacobiParams,
    MomentVector,
    StabilityCase,
    WeightFamily,
    classify_stability,
    moments,
)
from .oracle import OracleConfig, oracle_integral, oracle_moment
from .quadrature import (
    NodeFamily,
    QuadratureRule,
    coefficients,
    integrate,
    integrate_with_rule,
    nodes,
    rule_weights,
)

__version__ = "0.1.0"
