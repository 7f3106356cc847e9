"""Exact truncated power-series engine for interpolating occupation
statistics, umbral polynomial sequences, and deformed entropy functions."""

from .series import (
    DEFAULT_ORDER,
    LogSeries,
    Rational,
    TruncatedSeries,
    add,
    as_rational,
    compose,
    derivative,
    evaluate,
    exp_series,
    identity,
    integrate,
    lagrange_invert,
    log_series,
    logseries_compose,
    logseries_derivative,
    mul,
    one,
    pow_rational,
    reciprocal,
    sub,
    zero,
)
from .umbral import (
    DeltaSeries,
    InvertibleSeries,
    Polynomial,
    PolynomialSequence,
    ShefferPair,
    apply_operator,
    associated_sequence,
    conjugate_sequence,
    connection_coefficients,
    sheffer_sequence,
    sheffer_shift_next,
    umbral_composition,
    umbral_shift_next,
)
from .statistics import (
    SpectralSample,
    Statistics,
    dual,
    entropy,
    from_cluster,
    from_free_energy,
    from_occupation,
    from_weight,
    gentile_statistics,
    group_compose,
    group_compose_m,
    haldane_wu_W,
    mean_occupation,
    occupation_polynomial,
    occupation_recursion_holds,
    spectral_samples,
)
from .deformed_entropy import (
    EntropyDensity,
    MaxentConvergenceError,
    PhiEntropy,
    PhiSeries,
    a_coefficients,
    entropy_gradient_holds,
    exp_phi,
    chi,
    ln_phi,
    main_theorem_holds,
    map_f,
    map_f_inverse,
    map_g,
    map_g_inverse,
    map_h,
    max_entropy_distribution,
    maxent_solve,
    phi_entropy,
    phi_from_x,
    rho,
    s_from_t,
    t_from_s,
    tau,
    x_from_phi,
    xi,
)

__version__ = "0.1.0"
