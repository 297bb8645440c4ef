"""Post-Markovian master-equation toolkit for a damped qubit plus ancilla.

Builds the memory-kernel (post-Markovian) propagator of a thermally damped
qubit and three ways of extending it to a qubit + ancilla pair, together
with the physicality diagnostics (state positivity, Choi complete
positivity, time-local generator structure) that tell the extensions apart,
and a brute-force convolution-quadrature integrator used to validate every
closed form.
"""

__version__ = "0.1.0"

from .damping import (
    DampingBasis,
    DegenerateSpectrumError,
    ModelParams,
    damping_basis,
    decompose,
    h_coefficients,
    identity_basis,
    liouvillian_superop,
    reconstruct,
)
from .diagnostics import (
    ChoiMatrix,
    SingularMapError,
    TimeLocalGenerator,
    choi,
    correlation_block_norm,
    finite_difference_generator,
    generator_from_rates,
    lindblad_decompose,
    tcl_generator,
)
from .oracle import (
    DivergenceError,
    MemoryKernel,
    Trajectory,
    integrate_convolution,
    richardson_error_estimate,
)
from .propagators import (
    Propagator,
    ZetaParts,
    evolve,
    single_pm,
    two_corrected,
    two_intuitive,
    two_sl,
    zeta_coefficient,
    zeta_parts,
)
from .qops import (
    DensityMatrix,
    DimensionError,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    trace_distance,
)

__all__ = [
    "ChoiMatrix",
    "DampingBasis",
    "DegenerateSpectrumError",
    "DensityMatrix",
    "DimensionError",
    "DivergenceError",
    "MemoryKernel",
    "ModelParams",
    "Propagator",
    "SingularMapError",
    "TimeLocalGenerator",
    "Trajectory",
    "ZetaParts",
    "choi",
    "correlation_block_norm",
    "damping_basis",
    "decompose",
    "evolve",
    "finite_difference_generator",
    "generator_from_rates",
    "h_coefficients",
    "hermitian_eigenvalues",
    "identity_basis",
    "integrate_convolution",
    "kron",
    "lindblad_decompose",
    "liouvillian_superop",
    "partial_trace",
    "reconstruct",
    "richardson_error_estimate",
    "single_pm",
    "tcl_generator",
    "trace_distance",
    "two_corrected",
    "two_intuitive",
    "two_sl",
    "zeta_coefficient",
    "zeta_parts",
]
