"""Hedge-ratio assembly.

The local risk-minimization ratio for a call struck at K is

    (sigma^2 I1 + I2) / (S (sigma^2 + int (e^x - 1)^2 nu(dx))),

where I1 is the stock-or-nothing expectation and I2 the jump term, both
taken under the tilted measure and both computed from damped Fourier
transforms of one characteristic-function sample array per time slice.
For the pure-jump variance gamma model sigma = 0, so I1 never enters and
is skipped entirely.

A strike sweep reuses the sampled arrays: the strike enters only through
the e^{-i eta j k} phase, so an n-strike sweep costs one FFT per kernel
(grid mode) or one O(N) dot product per strike (direct mode), never a
fresh characteristic-function evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .core import (
    TAU_MIN,
    InvalidParameterError,
    MarketQuery,
    MertonParams,
    Model,
    ModelMismatchError,
    TailConditionError,
    VgParams,
    _require,
    mmm_quantities,
)
from .fft_engine import (
    CarrMadanGrid,
    DampedTransformRequest,
    FftConfig,
    carr_madan_grid,
    direct_simpson_sum,
    tail_condition_check,
)
from .merton import (
    KERNEL_DAMPED,
    gaussian_damping,
    merton_c1,
    merton_char_fn,
    merton_i2_terms,
    merton_trunc_i1,
    merton_trunc_i2,
)
from .variance_gamma import (
    vg_c2,
    vg_char_fn,
    vg_i2_weights,
    vg_mmm_measure,
    vg_trunc,
)

MODE_FFT_GRID = "fft-grid"
MODE_DIRECT_SUM = "direct-sum"
MODE_AUTO = "auto"

# auto mode: a handful of strikes is cheaper by direct summation than by
# building interpolation grids
_AUTO_DIRECT_LIMIT = 4


@dataclass(frozen=True)
class LrmResult:
    """Hedge ratio with its building blocks and diagnostics.

    The ratio is never clamped: values outside [0, 1] are reported with
    ``out_of_range`` set so discretization pathologies stay visible.
    """

    lrm: float
    i1: Optional[float]
    i2: float
    trunc_a: float
    mode: str
    config: FftConfig
    out_of_range: bool


@dataclass(frozen=True)
class MoneynessQuery:
    """Strike-over-spot ratio plus time to maturity; the hedge ratio
    depends on (t, S, K) only through these two numbers."""

    moneyness: float
    tau: float

    def __post_init__(self) -> None:
        _require(self.moneyness > 0.0, "moneyness must be > 0")
        if self.tau < TAU_MIN:
            raise InvalidParameterError(
                f"tau = {self.tau:g} below the supported minimum {TAU_MIN:g}"
            )


def char_fn(model: Model, tau: float) -> Callable:
    """The map zeta -> E[e^{i zeta L_tau}] under the tilted measure."""
    mmm = mmm_quantities(model)
    if isinstance(model, MertonParams):
        return lambda zeta: merton_char_fn(zeta, tau, model, mmm)
    pair = vg_mmm_measure(model, mmm.h)
    return lambda zeta: vg_char_fn(zeta, tau, model, pair, mmm.mu_star)


def _resolve_mode(mode: str, n_strikes: int) -> str:
    if mode == MODE_AUTO:
        return MODE_DIRECT_SUM if n_strikes <= _AUTO_DIRECT_LIMIT else MODE_FFT_GRID
    if mode in (MODE_DIRECT_SUM, MODE_FFT_GRID):
        return mode
    raise InvalidParameterError(f"unknown mode {mode!r}")


class TransformContext:
    """Sampled kernel arrays shared by every strike of one time slice.

    Kinds: ``indicator`` is psi1 (stock-or-nothing), ``call`` is psi2,
    ``damped`` is psi2 times the Gaussian factor (Merton shifted-strike
    terms), ``kernel`` is psi2 times the jump-kernel weight (variance
    gamma).  Grids are built lazily, one FFT per kind.
    """

    def __init__(self, model: Model, config: FftConfig, tau: float, spot: float):
        _require(tau >= TAU_MIN, f"tau must be >= {TAU_MIN:g}")
        _require(spot > 0.0, "spot must be > 0")
        self.model = model
        self.config = config
        self.tau = tau
        self.spot = spot
        self.mmm = mmm_quantities(model)

        zeta = config.zeta_grid()
        iz = 1j * zeta
        if isinstance(model, MertonParams):
            phi = merton_char_fn(zeta, tau, model, self.mmm)
            self.c1 = merton_c1(model, self.mmm, tau, config.alpha)
        elif isinstance(model, VgParams):
            self.pair = vg_mmm_measure(model, self.mmm.h)
            phi = vg_char_fn(zeta, tau, model, self.pair, self.mmm.mu_star)
            self.c2 = vg_c2(model, self.pair, self.mmm.mu_star, tau, config.alpha)
        else:
            raise ModelMismatchError(f"unsupported model type {type(model).__name__}")

        psi1 = phi * np.exp(iz * math.log(spot)) / (iz - 1.0)
        psi2 = psi1 / iz
        self._arrays = {"indicator": psi1, "call": psi2}
        if isinstance(model, MertonParams):
            self._arrays["damped"] = psi2 * gaussian_damping(zeta, model.delta)
        else:
            self.vg_weights = vg_i2_weights(model)
            self._arrays["kernel"] = self.vg_weights.kernel_factor(zeta) * psi2
        self._grids: dict[str, CarrMadanGrid] = {}

    def transform(self, kind: str, k: float, mode: str) -> float:
        if mode == MODE_DIRECT_SUM:
            return direct_simpson_sum(
                self._arrays[kind], self.config.alpha, self.config.eta, k
            )
        grid = self._grids.get(kind)
        if grid is None:
            grid = carr_madan_grid(
                DampedTransformRequest(
                    self._arrays[kind], self.config.alpha, self.config.eta
                )
            )
            self._grids[kind] = grid
        return grid.at(k)

    def trunc_bounds(self, strike: float) -> tuple[float, ...]:
        cfg = self.config
        if isinstance(self.model, MertonParams):
            return (
                merton_trunc_i1(
                    cfg.eps, self.tau, strike, self.spot, cfg.alpha, self.c1, self.model
                ),
                merton_trunc_i2(
                    cfg.eps, self.tau, strike, self.spot, cfg.alpha, self.c1, self.model
                ),
            )
        return (
            vg_trunc(cfg.eps, self.tau, strike, self.spot, cfg.alpha, self.c2, self.model),
        )


def _check_tail(config: FftConfig, trunc_a: float) -> None:
    if not tail_condition_check(config, trunc_a):
        raise TailConditionError(
            f"grid span N*eta = {config.grid_span:g} does not reach the "
            f"required truncation point {trunc_a:g}; enlarge n or eta"
        )


def _context_for(
    query: MarketQuery, model: Model, config: FftConfig, ctx: Optional[TransformContext]
) -> TransformContext:
    if ctx is None:
        return TransformContext(model, config, query.tau, query.spot)
    return ctx


def i1(
    query: MarketQuery,
    model: Model,
    config: FftConfig,
    mode: str = MODE_AUTO,
    _ctx: Optional[TransformContext] = None,
) -> float:
    """Stock-or-nothing expectation E[1_{S_T > K} S_T | now] via the
    damped transform of psi1.  Defined for the diffusive model only; for
    variance gamma it is multiplied by sigma^2 = 0 and never computed."""
    if not isinstance(model, MertonParams):
        raise ModelMismatchError(
            "I1 applies to the Merton model only; the sigma^2 I1 term vanishes "
            "for pure-jump models"
        )
    ctx = _context_for(query, model, config, _ctx)
    resolved = _resolve_mode(mode, 1)
    _check_tail(config, ctx.trunc_bounds(query.strike)[0])
    return query.strike * ctx.transform("indicator", query.log_strike, resolved)


def i2(
    query: MarketQuery,
    model: Model,
    config: FftConfig,
    mode: str = MODE_AUTO,
    _ctx: Optional[TransformContext] = None,
) -> float:
    """Jump term of the hedge numerator.

    Merton: three weighted transforms at shifted strikes (two damped, one
    plain).  Variance gamma: kernel-weighted transform minus the
    first-exponential-moment constant times the plain call transform.
    """
    ctx = _context_for(query, model, config, _ctx)
    resolved = _resolve_mode(mode, 1)
    _check_tail(config, ctx.trunc_bounds(query.strike)[-1])
    if isinstance(model, MertonParams):
        total = 0.0
        for term in merton_i2_terms(model, query.strike):
            kind = "damped" if term.kernel == KERNEL_DAMPED else "call"
            total += term.coefficient * term.strike * ctx.transform(
                kind, math.log(term.strike), resolved
            )
        return total
    k = query.log_strike
    kernel_part = query.strike * ctx.transform("kernel", k, resolved)
    call_part = query.strike * ctx.transform("call", k, resolved)
    return kernel_part - ctx.vg_weights.constant * call_part


def _assemble(query: MarketQuery, ctx: TransformContext, resolved: str) -> LrmResult:
    model, config = ctx.model, ctx.config
    bounds = ctx.trunc_bounds(query.strike)
    if isinstance(model, MertonParams):
        i1_val = i1(query, model, config, mode=resolved, _ctx=ctx)
        i2_val = i2(query, model, config, mode=resolved, _ctx=ctx)
        sigma2 = model.sigma**2
        numerator = sigma2 * i1_val + i2_val
    else:
        i1_val = None
        i2_val = i2(query, model, config, mode=resolved, _ctx=ctx)
        sigma2 = 0.0
        numerator = i2_val
    value = numerator / (query.spot * (sigma2 + ctx.mmm.quad_exp_moment))
    return LrmResult(
        lrm=value,
        i1=i1_val,
        i2=i2_val,
        trunc_a=max(bounds),
        mode=resolved,
        config=config,
        out_of_range=not (0.0 <= value <= 1.0),
    )


def lrm(
    query: MarketQuery,
    model: Model,
    config: FftConfig,
    mode: str = MODE_AUTO,
) -> LrmResult:
    """Hedge ratio for a single (t, K, S) query."""
    ctx = TransformContext(model, config, query.tau, query.spot)
    return _assemble(query, ctx, _resolve_mode(mode, 1))


def lrm_strike_sweep(
    model: Model,
    config: FftConfig,
    *,
    t: float,
    T: float,
    spot: float,
    strikes: Sequence[float],
    mode: str = MODE_AUTO,
) -> list[LrmResult]:
    """Hedge ratios for many strikes on one time slice, sharing the
    sampled arrays (and the per-kind FFT grids in grid mode)."""
    queries = [MarketQuery(t=t, T=T, spot=spot, strike=float(k)) for k in strikes]
    ctx = TransformContext(model, config, T - t, spot)
    resolved = _resolve_mode(mode, len(queries))
    return [_assemble(q, ctx, resolved) for q in queries]


def lrm_by_moneyness(
    moneyness_query: Union[MoneynessQuery, float],
    model: Model,
    config: FftConfig,
    mode: str = MODE_AUTO,
    tau: Optional[float] = None,
) -> float:
    """Hedge ratio as a function of moneyness alone: spot normalized to 1
    and the strike set to K/S.  Identical (up to arithmetic reordering)
    to the (S, K) evaluation with the same tau."""
    if isinstance(moneyness_query, MoneynessQuery):
        mq = moneyness_query
    else:
        if tau is None:
            raise InvalidParameterError("tau is required with a bare moneyness value")
        mq = MoneynessQuery(moneyness=float(moneyness_query), tau=tau)
    query = MarketQuery(t=0.0, T=mq.tau, spot=1.0, strike=mq.moneyness)
    return lrm(query, model, config, mode=mode).lrm


def jump_impact(
    y: float,
    moneyness: float,
    tau: float,
    model: Model,
    config: FftConfig,
    mode: str = MODE_AUTO,
) -> float:
    """Hedge-ratio change caused by a log-price jump of size y: the
    moneyness m jumps to m e^{-y}, so the impact is
    LRM(m e^{-y}) - LRM(m)."""
    if y == 0.0:
        raise InvalidParameterError("jump size y must be nonzero")
    before = lrm_by_moneyness(MoneynessQuery(moneyness, tau), model, config, mode)
    after = lrm_by_moneyness(MoneynessQuery(moneyness * math.exp(-y), tau), model, config, mode)
    return after - before
