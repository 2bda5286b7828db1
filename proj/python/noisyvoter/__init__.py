"""Noisy q-voter model: simulation, exact stationary sampling via the
coalescing dual, and spectral mixing-time predictors on finite graphs."""

from noisyvoter._core import (
    AutocorrCurve,
    ColorConfig,
    CoupledSample,
    Estimate,
    ExactDistribution,
    Flavor,
    Graph,
    LatticeSpectrum,
    ModelParams,
    PairStats,
    Spectrum,
    TCorrResult,
    TmixPrediction,
    VarianceBounds,
    all_dead_prob,
    alternating,
    autocorr_curve,
    backward_sample,
    ball,
    build_graph,
    cftp_sample,
    check_config,
    coalescence_probs,
    conductance,
    config_count,
    coupled_sample,
    decode_config,
    eigendecompose,
    eigenfunction_residual,
    empirical_autocorr,
    encode_config,
    estimate_h,
    estimate_t_corr,
    eval_autocorr,
    exact_distribution,
    exact_distribution_uniform,
    exact_stationary,
    lattice_pattern,
    lattice_pattern_spectrum,
    marginals,
    monochromatic,
    pi_restricted,
    predicted_tmix,
    projections,
    run_forward,
    single_site_marginal,
    statistic_r_auto,
    statistic_r_edge,
    stationary_variance,
    stay_prob,
    substream,
    t_x0,
    torus,
    tv_distance,
    uniform_random,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
