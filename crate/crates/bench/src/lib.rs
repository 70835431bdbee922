//! Fixed inputs shared by the benchmarks.

use noma_core::channel::sample_channels;
use noma_core::{AnalyticConfig, ChannelRealization, FadingConfig};

/// Realizations of the default geometry with `n_bs` BS antennas.
pub fn realizations(n_bs: usize, count: u64) -> Vec<ChannelRealization> {
    let cfg = FadingConfig { n_bs, ..FadingConfig::default() };
    (0..count).map(|t| sample_channels(&cfg, 7, t)).collect()
}

/// Closed-form configuration for `n_bs` BS antennas at 20 dBm, `R_th = 5`.
pub fn analytic_config(n_bs: usize) -> AnalyticConfig {
    let cfg = FadingConfig { n_bs, ps_dbm: 20.0, ..FadingConfig::default() };
    AnalyticConfig::from_fading(&cfg, 0.4, 5.0).expect("fixture parameters are valid")
}
