"""Quadratic-hedging (local risk minimization) ratios for European calls
under exponential Levy models, computed with damped Fourier transforms
on a radix-2 FFT grid and validated against adaptive-quadrature oracles.
"""

from .core import (
    TAU_MIN,
    AssumptionError,
    BranchCutError,
    ConditionCheck,
    FftSizeError,
    InvalidParameterError,
    LevyHedgeError,
    MarketQuery,
    MertonParams,
    MmmQuantities,
    Model,
    ModelMismatchError,
    OverflowGuardError,
    QuadratureConvergenceError,
    TailConditionError,
    ValidationReport,
    VgParams,
    martingale_drift,
    mmm_quantities,
    model_kind,
    quadratic_exp_moment,
    validate_assumptions,
    vg_cgm_from_kmd,
)
from .fft_engine import (
    CarrMadanGrid,
    DampedTransformRequest,
    FftConfig,
    carr_madan_grid,
    direct_simpson_sum,
    radix2_fft,
    simpson_weights,
    tail_condition_check,
)
from .lrm import (
    MODE_AUTO,
    MODE_DIRECT_SUM,
    MODE_FFT_GRID,
    LrmResult,
    MoneynessQuery,
    TransformContext,
    char_fn,
    i1,
    i2,
    jump_impact,
    lrm,
    lrm_by_moneyness,
    lrm_strike_sweep,
)
from .merton import (
    GaussianJumpComponent,
    GaussianJumpMixture,
    I2Term,
    MertonI2Decomposition,
    merton_c1,
    merton_char_fn,
    merton_i2_terms,
    merton_mmm_measure,
    merton_trunc_i1,
    merton_trunc_i2,
)
from .variance_gamma import (
    CgmComponent,
    CgmComponentPair,
    VgI2Weights,
    vg_c2,
    vg_char_fn,
    vg_i2_weights,
    vg_kernel,
    vg_kernel_bound,
    vg_mmm_measure,
    vg_trunc,
)

__version__ = "0.1.0"
