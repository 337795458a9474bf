"""Dirac oscillator in cosmic-string, magnetic-string and dislocation backgrounds.

Spectra, Sturmian radial functions, truncated su(1,1) representations and
Perelomov radial coherent states, with numerical verification helpers.
"""

from .defects import (
    Component,
    DefectConfig,
    DefectKind,
    QuantumNumbers,
    Sign,
    angular_parameter,
    bargmann_index,
    energy_squared,
    energies,
    factorization_constants,
    gamma_constant,
)
from .special import (
    QuadratureSpec,
    integrate_halfline,
    laguerre,
    laguerre_derivative,
    laguerre_generating_closed,
    log_gamma,
    matrix_exp,
)
from .su11 import (
    CoherentParam,
    Su11Rep,
    TruncationError,
    build_rep,
    casimir_eigenvalue_check,
    commutator_residuals,
    displacement_bch,
    displacement_direct,
    perelomov_coefficients,
)
from .radial import (
    Form,
    SturmianMode,
    d3_eigenvalue_check,
    ladder_action_check,
    mode_for,
    ode_residual,
    overlap,
    sturmian_eval,
)
from .coherent import (
    EvolvedCoherentState,
    coherent_closed,
    coherent_evolved,
    coherent_overlap,
    coherent_series,
)

__version__ = "0.1.0"

__all__ = [
    "CoherentParam",
    "Component",
    "DefectConfig",
    "DefectKind",
    "EvolvedCoherentState",
    "Form",
    "QuadratureSpec",
    "QuantumNumbers",
    "Sign",
    "SturmianMode",
    "Su11Rep",
    "TruncationError",
    "angular_parameter",
    "bargmann_index",
    "build_rep",
    "casimir_eigenvalue_check",
    "coherent_closed",
    "coherent_evolved",
    "coherent_overlap",
    "coherent_series",
    "commutator_residuals",
    "d3_eigenvalue_check",
    "displacement_bch",
    "displacement_direct",
    "energies",
    "energy_squared",
    "factorization_constants",
    "gamma_constant",
    "integrate_halfline",
    "ladder_action_check",
    "laguerre",
    "laguerre_derivative",
    "laguerre_generating_closed",
    "log_gamma",
    "matrix_exp",
    "mode_for",
    "ode_residual",
    "overlap",
    "perelomov_coefficients",
    "sturmian_eval",
]
