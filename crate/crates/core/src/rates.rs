//! Instantaneous achievable rates for F-NOMA, CR-NOMA and the OMA baseline.
//!
//! All rates are in bits/s/Hz. UE2 is the primary user in CR-NOMA and UE1
//! the opportunistically served secondary user.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};

/// Which user is instantaneously strong on the selected antenna triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelOrder {
    /// `h >= g`: UE1 is strong and performs SIC (indicator 1).
    Ue1Strong,
    /// `h < g`: UE2 is strong (indicator 0).
    Ue2Strong,
}

impl ChannelOrder {
    /// The 0/1 channel-order indicator.
    pub fn indicator(self) -> u8 {
        match self {
            ChannelOrder::Ue1Strong => 1,
            ChannelOrder::Ue2Strong => 0,
        }
    }
}

/// Channel-order indicator; ties go to UE1.
pub fn channel_order(h: f64, g: f64) -> ChannelOrder {
    if h >= g {
        ChannelOrder::Ue1Strong
    } else {
        ChannelOrder::Ue2Strong
    }
}

/// Power shares of the superposed signals, `a + b = 1`.
///
/// `b` is the share given to the instantaneously strong user in F-NOMA, and
/// in CR-NOMA the coefficient of the same role on the selected triple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerSplit {
    a: f64,
    b: f64,
}

impl PowerSplit {
    /// Any split with `0 <= b <= 1`.
    pub fn new(b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::invalid("b", format!("must lie in [0, 1], got {b}")));
        }
        Ok(Self { a: 1.0 - b, b })
    }

    /// Fixed F-NOMA split: the weak user gets more power, so `0 < b < 1/2`.
    pub fn fnoma(b: f64) -> Result<Self> {
        if !(b > 0.0 && b < 0.5) {
            return Err(Error::invalid("b", format!("F-NOMA requires 0 < b < 0.5, got {b}")));
        }
        Ok(Self { a: 1.0 - b, b })
    }

    pub(crate) fn clamped(b: f64) -> Self {
        let b = b.clamp(0.0, 1.0);
        Self { a: 1.0 - b, b }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Rates of UE1 and UE2.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn sum(&self) -> f64 {
        self.r1 + self.r2
    }
}

#[inline]
fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / LN_2
}

/// Rate of the user decoding its own signal after SIC: `log2(1 + ρ·share·γ)`.
#[inline]
fn interference_free(gain: f64, share: f64, rho: f64) -> f64 {
    log2_1p(rho * share * gain)
}

/// Rate of the user treating the other signal as noise:
/// `log2(1 + own·γ / (other·γ + 1/ρ))`.
#[inline]
fn interference_limited(gain: f64, own: f64, other: f64, rho: f64) -> f64 {
    log2_1p(rho * own * gain / (rho * other * gain + 1.0))
}

/// Per-user rates with successive interference cancellation.
///
/// The strong user (per [`channel_order`]) gets share `b` and decodes after
/// SIC; the weak user gets `a` and sees the strong user's signal as noise.
pub fn fnoma_pair_rates(h: f64, g: f64, split: PowerSplit, rho: f64) -> RatePair {
    let (a, b) = (split.a, split.b);
    match channel_order(h, g) {
        ChannelOrder::Ue1Strong => {
            RatePair { r1: interference_free(h, b, rho), r2: interference_limited(g, a, b, rho) }
        }
        ChannelOrder::Ue2Strong => {
            RatePair { r1: interference_limited(h, a, b, rho), r2: interference_free(g, b, rho) }
        }
    }
}

/// Sum rate from already ordered strong/weak gains with `a = 1 - b`.
pub fn fnoma_sum_rate(gamma_s: f64, gamma_w: f64, b: f64, rho: f64) -> Result<f64> {
    if gamma_s < gamma_w {
        return Err(Error::UnorderedGains { strong: gamma_s, weak: gamma_w });
    }
    let a = 1.0 - b;
    Ok(interference_free(gamma_s, b, rho) + interference_limited(gamma_w, a, b, rho))
}

/// Jain's fairness index of two rates. Two zero rates count as perfectly fair.
pub fn jain_fairness(r1: f64, r2: f64) -> f64 {
    let den = 2.0 * (r1 * r1 + r2 * r2);
    if den == 0.0 {
        return 1.0;
    }
    (r1 + r2) * (r1 + r2) / den
}

/// How the CR-NOMA secondary rate is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrMode {
    /// Finite-SNR rate under the clipped channel-dependent split.
    Exact,
    /// High-SNR limit of the secondary rate.
    Asymptotic,
}

/// `2^r_th - 1`.
pub fn qos_epsilon(r_th: f64) -> f64 {
    (r_th * LN_2).exp_m1()
}

/// Channel-dependent split that meets the primary user's QoS with equality.
///
/// UE2 (primary) needs `R2 >= r_th`. When UE2 is strong it gets share `b`
/// and `b = min(ε/(ρg), 1)`; when UE1 is strong UE2 gets `a` and
/// `b = max((ρg - ε)/(ρg(ε+1)), 0)`. Clipping only happens when the QoS is
/// infeasible, in which case UE1 gets no power. Inside `[0, 1]` the exact and
/// asymptotic forms coincide, so both modes return the same split.
pub fn cr_power_split(h: f64, g: f64, rho: f64, r_th: f64, _mode: CrMode) -> PowerSplit {
    let eps = qos_epsilon(r_th);
    let rg = rho * g;
    let b = match channel_order(h, g) {
        ChannelOrder::Ue2Strong => eps / rg,
        ChannelOrder::Ue1Strong => (rg - eps) / (rg * (eps + 1.0)),
    };
    PowerSplit::clamped(b)
}

fn cr_unservable(order: ChannelOrder, split: PowerSplit) -> bool {
    match order {
        ChannelOrder::Ue1Strong => split.b <= 0.0,
        ChannelOrder::Ue2Strong => split.b >= 1.0,
    }
}

/// Secondary (`r1`) and primary (`r2`) rates under the CR-NOMA split.
///
/// The primary rate always follows from the SIC rate formulas under the
/// split. In [`CrMode::Asymptotic`] the secondary rate is the high-SNR limit
/// `log2(ρh/(ε+1))` (UE1 strong) or `log2(ρhg/(εh+g))` (UE2 strong), floored
/// at zero. An unservable secondary user gets `r1 = 0` in both modes.
pub fn cr_rates(h: f64, g: f64, rho: f64, r_th: f64, mode: CrMode) -> RatePair {
    let order = channel_order(h, g);
    let split = cr_power_split(h, g, rho, r_th, mode);
    let exact = fnoma_pair_rates(h, g, split, rho);
    if cr_unservable(order, split) {
        return RatePair { r1: 0.0, r2: exact.r2 };
    }
    let r1 = match mode {
        CrMode::Exact => exact.r1,
        CrMode::Asymptotic => {
            let eps = qos_epsilon(r_th);
            let v = match order {
                ChannelOrder::Ue1Strong => (rho * h / (eps + 1.0)).log2(),
                ChannelOrder::Ue2Strong => (rho * h * g / (eps * h + g)).log2(),
            };
            v.max(0.0)
        }
    };
    RatePair { r1, r2: exact.r2 }
}

/// Equal-time TDMA at full power, each user on its own best link.
pub fn oma_pair_rates(h_best: f64, g_best: f64, rho: f64) -> RatePair {
    RatePair { r1: 0.5 * log2_1p(rho * h_best), r2: 0.5 * log2_1p(rho * g_best) }
}
