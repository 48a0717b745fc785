"""Measurement-induced nonlocality measures for bipartite quantum states.

Computes the fidelity-based and Hilbert-Schmidt measurement disturbance of a
bipartite state under marginal-preserving projective measurements, together
with Wootters concurrence, closed forms for named state families, eigenvalue
upper bounds, a brute-force measurement-optimization oracle, and Kraus-channel
decoherence dynamics.
"""

from .basis import (
    GammaDecomposition,
    OperatorBasis,
    gamma_decompose,
    orthonormal_hermitian_basis,
    reconstruct,
)
from .channels import (
    KrausChannel,
    XStateElements,
    analytic_evolved_xstate,
    apply_product_channel,
    concurrence_zero_crossing,
    depol_sudden_death_threshold,
    gad_sudden_death_threshold,
    gamma_from_time,
    kraus,
    xstate_measures,
)
from .families import (
    flip_operator,
    fmin_isotropic,
    fmin_werner,
    isotropic,
    maximally_entangled,
    pure_alpha,
    werner,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    dagger,
    hermitian_eigensystem,
    make_rng,
    matmul,
    random_unitary,
    trace,
)
from .measures import (
    MeasureReport,
    ProjectiveMeasurement,
    concurrence,
    exact_report_2xn,
    fidelity,
    fmin_unconstrained_2xn,
    fmin_pure,
    fmin_upper_bound,
    measurement_coefficients,
    min_exact_2xn,
    objective,
    post_measurement_state,
    sine_metric,
)
from .optimizer import (
    MarginalStructure,
    MeasurementFamily,
    OracleConfig,
    allowed_measurements,
    marginal_structure,
    minimize,
    oracle_report,
)
from .states import (
    BipartiteState,
    DensityMatrix,
    SchmidtDecomposition,
    StateValidationError,
    density_from_pure,
    partial_trace,
    purity,
    schmidt,
    tensor,
    validate,
)
from .sweep import SweepRecord, format_csv, sweep_records

__version__ = "0.1.0"
