"""bsespec: structure-preserving Lanczos estimation of absorption spectra.

The operator of interest is the 2n x 2n block Hamiltonian
H = [[A, B], [-conj(B), -conj(A)]] with A Hermitian and B complex symmetric,
assumed definite (its Hermitian companion [[A, B], [conj(B), conj(A)]] is
positive definite).  The library provides

* short-recurrence Lanczos engines whose projections keep the
  plus/minus-paired spectral structure,
* plain and averaged Gauss quadrature assembly of the broadened spectrum,
* a full-diagonalization reference and an angle metric to measure accuracy,
* comparison variants (alternating-parity and paired-block recurrences),
* a scikit-learn style estimator facade and a CLI (``bsespec``).
"""

from .estimator import AbsorptionSpectrumEstimator
from .exceptions import (
    BasisNotRetained,
    BreakdownExact,
    BsespecError,
    ConvergenceFailure,
    DimensionMismatch,
    GramFactorizationFailure,
    IndefiniteInnerProduct,
    InsufficientSteps,
    InvalidSteps,
    MultipleNonpositiveNodes,
    NeutralVectorBreakdown,
    NotDefinite,
    NotRealField,
    OddStepCount,
    ParseError,
    SingularProjection,
    StructureViolation,
    ZeroNormCurve,
    ZeroStartVector,
)
from .hamiltonian import (
    BseHamiltonian,
    apply_h_structured,
    build_hamiltonian,
    check_definiteness,
    estimate_h_norm,
    generate_cyclic_example,
    generate_random_definite,
    generate_random_transition,
    tda_view,
)
from .lanczos import (
    LanczosRun,
    lanczos_m_inner,
    lanczos_omega_inner,
    lanczos_tda,
    retained_basis_orthogonality,
    truncate_run,
)
from .metrics import CurvePair, convergence_history, curve_angle, spectrum_angle, two_rule_error_estimate
from .quadrature import (
    QuadratureNodes,
    SymTridiagonal,
    assemble_bse_spectrum,
    assemble_tda_spectrum,
    build_gagq,
    build_tk,
    quadrature_nodes,
    tridiag_eig,
)
from .reference import StructuredEigenDecomposition, exact_spectrum, full_diagonalize
from .spectrum import BroadeningKernel, Spectrum, uniform_grid
from .variants import (
    PairedLanczosRun,
    ZeroDiagTridiagonal,
    assemble_gmg_spectrum,
    assemble_paired_spectrum,
    lanczos_gmg,
    lanczos_paired,
)

__version__ = "0.1.0"

__all__ = [
    "AbsorptionSpectrumEstimator",
    "BseHamiltonian",
    "BroadeningKernel",
    "CurvePair",
    "LanczosRun",
    "PairedLanczosRun",
    "QuadratureNodes",
    "Spectrum",
    "StructuredEigenDecomposition",
    "SymTridiagonal",
    "ZeroDiagTridiagonal",
    "apply_h_structured",
    "assemble_bse_spectrum",
    "assemble_gmg_spectrum",
    "assemble_paired_spectrum",
    "assemble_tda_spectrum",
    "build_gagq",
    "build_hamiltonian",
    "build_tk",
    "check_definiteness",
    "convergence_history",
    "curve_angle",
    "estimate_h_norm",
    "exact_spectrum",
    "full_diagonalize",
    "generate_cyclic_example",
    "generate_random_definite",
    "generate_random_transition",
    "lanczos_gmg",
    "lanczos_m_inner",
    "lanczos_omega_inner",
    "lanczos_paired",
    "lanczos_tda",
    "quadrature_nodes",
    "retained_basis_orthogonality",
    "spectrum_angle",
    "tda_view",
    "tridiag_eig",
    "truncate_run",
    "two_rule_error_estimate",
    "uniform_grid",
    # exceptions
    "BsespecError",
    "BasisNotRetained",
    "BreakdownExact",
    "ConvergenceFailure",
    "DimensionMismatch",
    "GramFactorizationFailure",
    "IndefiniteInnerProduct",
    "InsufficientSteps",
    "InvalidSteps",
    "MultipleNonpositiveNodes",
    "NeutralVectorBreakdown",
    "NotDefinite",
    "NotRealField",
    "OddStepCount",
    "ParseError",
    "SingularProjection",
    "StructureViolation",
    "ZeroNormCurve",
    "ZeroStartVector",
]
