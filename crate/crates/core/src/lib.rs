//! Joint transmit/receive antenna selection for two-user MIMO-NOMA downlinks.
//!
//! The crate is organised bottom-up:
//!
//! - [`channel`]: seedable, counter-based Rayleigh-fading gain matrices.
//! - [`rates`]: instantaneous F-NOMA, CR-NOMA and OMA rates, power splits
//!   and Jain's fairness index.
//! - [`selection`]: exhaustive-search baselines and the low-complexity
//!   A³, AIA, MCG, PU and SU selection policies, instrumented with
//!   comparison counts.
//! - [`analytics`]: closed-form high-SNR average rates, the exponential
//!   integral, and an adaptive-quadrature oracle.
//! - [`harness`]: Monte Carlo engine, scenarios, sweeps, figure tables and
//!   closed-form validation.
//!
//! Antenna indices are zero-based everywhere in this crate.

pub mod analytics;
pub mod channel;
mod error;
pub mod harness;
pub mod rates;
pub mod selection;

pub use analytics::{AnalyticConfig, AnalyticResult};
pub use channel::{ChannelRealization, FadingConfig};
pub use error::{Error, Result};
pub use harness::{Mode, Policy, RateReport, Scenario};
pub use rates::{ChannelOrder, CrMode, PowerSplit, RatePair};
pub use selection::Selection;
