"""Operator-basis decompositions and fully-entangled-fraction bound audits.

The package builds the clock-and-shift unitary basis and the traceless
Hermitian basis in any dimension, expands bipartite density matrices in
both, computes several published upper bounds on the fully entangled
fraction, and checks each bound against a certified lower estimate obtained
by optimization over the unitary group.
"""

from .basis import (
    GellMannBasis,
    PrincipalBasisTable,
    gell_mann_basis,
    gell_mann_identity_residuals,
    principal_basis_table,
    principal_identity_residuals,
    principal_matrix,
    unit_from_principal,
)
from .decompose import (
    BlochCoefficients,
    PrincipalCoefficients,
    bloch_coefficients,
    bloch_reconstruct,
    max_entangled_identity_residual,
    principal_coefficients,
    principal_reconstruct,
    printed_max_entangled_residual,
)
from .errors import (
    DimensionError,
    HermiticityError,
    ParameterError,
    PhysicalityError,
    SingularityError,
    StateFileError,
    UnitarityError,
)
from .fef import (
    BOUND_NAMES,
    BoundReport,
    OptimizerOptions,
    Violation,
    bound_audit,
    fef_lower_estimate,
    fef_objective,
    hoelder_sum_bound,
    isotropic_fef_reference,
    lm_bound,
    paper_example3_form,
    spectral_bound,
    theorem1_bound,
)
from .linalg import (
    dagger,
    frobenius_norm,
    haar_unitary,
    hermitian_spectrum,
    kron,
    nearest_unitary,
    trace_norm,
)
from .states import (
    DensityState,
    ValidationRecord,
    horodecki_state,
    isotropic_state,
    isotropic_window,
    max_entangled_projector,
    max_entangled_vector,
    random_density_state,
    state_from_matrix,
    swap_operator,
    validate_density,
    werner_state,
)

__all__ = [
    "BOUND_NAMES",
    "BlochCoefficients",
    "BoundReport",
    "DensityState",
    "DimensionError",
    "GellMannBasis",
    "HermiticityError",
    "OptimizerOptions",
    "ParameterError",
    "PhysicalityError",
    "PrincipalBasisTable",
    "PrincipalCoefficients",
    "SingularityError",
    "StateFileError",
    "UnitarityError",
    "ValidationRecord",
    "Violation",
    "bloch_coefficients",
    "bloch_reconstruct",
    "bound_audit",
    "dagger",
    "fef_lower_estimate",
    "fef_objective",
    "frobenius_norm",
    "gell_mann_basis",
    "gell_mann_identity_residuals",
    "haar_unitary",
    "hermitian_spectrum",
    "hoelder_sum_bound",
    "horodecki_state",
    "isotropic_fef_reference",
    "isotropic_state",
    "isotropic_window",
    "kron",
    "lm_bound",
    "max_entangled_identity_residual",
    "max_entangled_projector",
    "max_entangled_vector",
    "nearest_unitary",
    "paper_example3_form",
    "principal_basis_table",
    "principal_coefficients",
    "principal_identity_residuals",
    "principal_matrix",
    "principal_reconstruct",
    "printed_max_entangled_residual",
    "random_density_state",
    "spectral_bound",
    "state_from_matrix",
    "swap_operator",
    "theorem1_bound",
    "trace_norm",
    "unit_from_principal",
    "validate_density",
    "werner_state",
]

__version__ = "0.1.0"
