"""Tail-weighted goodness-of-fit statistics and GPD threshold selection.

The heavy lifting lives in the compiled extension ``tailstat._core``; this
package re-exports its public surface.
"""

from tailstat._core import (  # noqa: F401
    DivergentError,
    GpdFit,
    GpdParams,
    InsufficientDataError,
    McEstimate,
    RiskValue,
    StatResult,
    ThresholdScan,
    __version__,
    ad_stat,
    cvm_stat,
    digamma,
    divergence_probe,
    edf_value,
    falling_factorial,
    forward_stop,
    gpd_cdf,
    gpd_fit_mle,
    gpd_quantile,
    ln_beta,
    ln_gamma,
    lower_tail_stat,
    m_k_direct,
    order_stat_density,
    osd_cdf,
    osd_mean,
    osd_moment,
    osd_pmf,
    osd_sample,
    osd_variance,
    quadrature_oracle,
    rising_factorial,
    risk_curve,
    risk_lower,
    risk_named,
    risk_upper,
    select_threshold,
    simulate_risk,
    stirling2,
    tail_gof_pvalue,
    upper_tail_stat,
    weight,
)
