//! Rayleigh-fading channel gains.
//!
//! Squared channel magnitudes are exponential with rate `Ω = d^α`, so the
//! mean gain of a link at distance `d` is `d^(-α)`. Every trial owns an
//! independent ChaCha key derived from `(seed, trial_index)`, which makes a
//! realization a pure function of its coordinates: trials can be generated
//! in any order, on any number of workers, and still reproduce bit-for-bit.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Independent random streams available to a single trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    /// Gains from the BS to UE1 (`H`).
    Ue1Gains = 0,
    /// Gains from the BS to UE2 (`G`).
    Ue2Gains = 1,
    /// Randomised antenna selection.
    Selection = 2,
}

/// Physical scenario: antenna counts, geometry, power and noise.
#[derive(Clone, Debug, PartialEq)]
pub struct FadingConfig {
    /// BS antennas (N).
    pub n_bs: usize,
    /// UE1 antennas (M).
    pub m_ue1: usize,
    /// UE2 antennas (K).
    pub k_ue2: usize,
    /// BS-UE1 distance in meters.
    pub d1: f64,
    /// BS-UE2 distance in meters.
    pub d2: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Transmit power in dBm.
    pub ps_dbm: f64,
    /// Noise power in dBm.
    pub sigma2_dbm: f64,
}

impl Default for FadingConfig {
    /// Two BS antennas, two antennas per user, 80 m / 200 m, α = 3,
    /// 30 dBm transmit power over a -110 dBm noise floor.
    fn default() -> Self {
        Self { n_bs: 2, m_ue1: 2, k_ue2: 2, d1: 80.0, d2: 200.0, alpha: 3.0, ps_dbm: 30.0, sigma2_dbm: -110.0 }
    }
}

impl FadingConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("n_bs", self.n_bs), ("m_ue1", self.m_ue1), ("k_ue2", self.k_ue2)] {
            if v == 0 {
                return Err(Error::invalid(name, "antenna count must be at least 1"));
            }
        }
        omega_from_distance(self.d1, self.alpha)?;
        omega_from_distance(self.d2, self.alpha)?;
        transmit_snr(self.ps_dbm, self.sigma2_dbm)?;
        Ok(())
    }

    /// Rate parameter of the UE1 gains, `d1^α`.
    pub fn omega_h(&self) -> f64 {
        self.d1.powf(self.alpha)
    }

    /// Rate parameter of the UE2 gains, `d2^α`.
    pub fn omega_g(&self) -> f64 {
        self.d2.powf(self.alpha)
    }

    /// Linear transmit SNR.
    pub fn rho(&self) -> f64 {
        10f64.powf((self.ps_dbm - self.sigma2_dbm) / 10.0)
    }
}

/// Exponential rate parameter of a link at distance `d`: `d^alpha`.
pub fn omega_from_distance(d: f64, alpha: f64) -> Result<f64> {
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::invalid("distance", format!("must be finite and > 0, got {d}")));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::invalid("alpha", format!("must be finite and > 0, got {alpha}")));
    }
    Ok(d.powf(alpha))
}

/// Linear transmit SNR `10^((ps_dbm - sigma2_dbm) / 10)`.
pub fn transmit_snr(ps_dbm: f64, sigma2_dbm: f64) -> Result<f64> {
    if !ps_dbm.is_finite() || !sigma2_dbm.is_finite() {
        return Err(Error::invalid("ps_dbm/sigma2_dbm", "powers must be finite"));
    }
    Ok(10f64.powf((ps_dbm - sigma2_dbm) / 10.0))
}

/// One draw of the squared-magnitude gain matrices, stored row-major.
///
/// `h` is N×M (BS to UE1) and `g` is N×K (BS to UE2).
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelRealization {
    n: usize,
    m: usize,
    k: usize,
    h: Vec<f64>,
    g: Vec<f64>,
}

impl ChannelRealization {
    /// Builds a realization from explicit row-major gains.
    pub fn from_gains(n: usize, m: usize, k: usize, h: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        if n == 0 || m == 0 || k == 0 {
            return Err(Error::invalid("dimensions", "all antenna counts must be >= 1"));
        }
        if h.len() != n * m {
            return Err(Error::invalid("h", format!("expected {} entries, got {}", n * m, h.len())));
        }
        if g.len() != n * k {
            return Err(Error::invalid("g", format!("expected {} entries, got {}", n * k, g.len())));
        }
        if let Some(bad) = h.iter().chain(&g).find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::invalid("gains", format!("entries must be finite and > 0, got {bad}")));
        }
        Ok(Self { n, m, k, h, g })
    }

    pub fn n_bs(&self) -> usize {
        self.n
    }

    pub fn m_ue1(&self) -> usize {
        self.m
    }

    pub fn k_ue2(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn h(&self, n: usize, m: usize) -> f64 {
        self.h[n * self.m + m]
    }

    #[inline]
    pub fn g(&self, n: usize, k: usize) -> f64 {
        self.g[n * self.k + k]
    }

    #[inline]
    pub fn h_row(&self, n: usize) -> &[f64] {
        &self.h[n * self.m..(n + 1) * self.m]
    }

    #[inline]
    pub fn g_row(&self, n: usize) -> &[f64] {
        &self.g[n * self.k..(n + 1) * self.k]
    }

    /// All UE1 gains, row-major.
    pub fn h_entries(&self) -> &[f64] {
        &self.h
    }

    /// All UE2 gains, row-major.
    pub fn g_entries(&self) -> &[f64] {
        &self.g
    }

    /// Multiplies every gain by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self { h: self.h.iter().map(|v| v * factor).collect(), g: self.g.iter().map(|v| v * factor).collect(), ..*self }
    }
}

/// Random generator for one stream of one trial.
///
/// The ChaCha key is `seed ‖ trial_index ‖ 0`, so different trials never
/// share state and no sequential draws are needed to reach trial `t`.
pub fn trial_rng(seed: u64, trial_index: u64, stream: Stream) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial_index.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream as u64);
    rng
}

/// Uniform draw on (0, 1) with 53 bits of resolution; zero maps to 2^-53.
#[inline]
pub fn open_unit<R: RngCore>(rng: &mut R) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    let bits = rng.next_u64() >> 11;
    if bits == 0 {
        SCALE
    } else {
        bits as f64 * SCALE
    }
}

/// Exponential draw with rate `omega` by inversion.
#[inline]
pub fn exponential<R: RngCore>(rng: &mut R, omega: f64) -> f64 {
    -open_unit(rng).ln() / omega
}

/// Draws the gain matrices of trial `trial_index`.
///
/// `H` entries come from [`Stream::Ue1Gains`] and `G` entries from
/// [`Stream::Ue2Gains`], both row-major, so adding BS antennas appends rows
/// without disturbing the existing ones.
pub fn sample_channels(cfg: &FadingConfig, seed: u64, trial_index: u64) -> ChannelRealization {
    debug_assert!(cfg.validate().is_ok());
    let (n, m, k) = (cfg.n_bs, cfg.m_ue1, cfg.k_ue2);
    let omega_h = cfg.omega_h();
    let omega_g = cfg.omega_g();

    let mut rng = trial_rng(seed, trial_index, Stream::Ue1Gains);
    let h = (0..n * m).map(|_| exponential(&mut rng, omega_h)).collect();
    let mut rng = trial_rng(seed, trial_index, Stream::Ue2Gains);
    let g = (0..n * k).map(|_| exponential(&mut rng, omega_g)).collect();

    ChannelRealization { n, m, k, h, g }
}
