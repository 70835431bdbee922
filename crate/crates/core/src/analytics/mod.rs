//! Closed-form high-SNR average rates for the selection policies.
//!
//! Every series is summed in a fixed order with compensated summation, so a
//! given configuration always produces the same bits.

pub mod quadrature;
pub mod series;
pub mod special;

use std::f64::consts::LN_2;

use crate::channel::FadingConfig;
use crate::error::{Error, Result};
use crate::rates::qos_epsilon;

use series::{check_order, composition_count, for_each_composition, mu, CompensatedSum, MAX_COMPOSITIONS};
pub use special::{euler_gamma, exp_integral_ei};

/// Distribution parameters shared by all closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticConfig {
    pub n_bs: usize,
    pub m_ue1: usize,
    pub k_ue2: usize,
    pub omega_h: f64,
    pub omega_g: f64,
    pub rho: f64,
    /// Strong-user power coefficient (F-NOMA only).
    pub b: f64,
    /// `2^R_th - 1` (CR-NOMA only).
    pub epsilon: f64,
}

impl AnalyticConfig {
    pub fn from_fading(cfg: &FadingConfig, b: f64, r_th: f64) -> Result<Self> {
        cfg.validate()?;
        let out = Self {
            n_bs: cfg.n_bs,
            m_ue1: cfg.m_ue1,
            k_ue2: cfg.k_ue2,
            omega_h: cfg.omega_h(),
            omega_g: cfg.omega_g(),
            rho: cfg.rho(),
            b,
            epsilon: qos_epsilon(r_th),
        };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("n_bs", self.n_bs), ("m_ue1", self.m_ue1), ("k_ue2", self.k_ue2)] {
            if v == 0 {
                return Err(Error::invalid(name, "must be at least 1"));
            }
        }
        for (name, v) in [("omega_h", self.omega_h), ("omega_g", self.omega_g), ("rho", self.rho)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, format!("must be finite and > 0, got {v}")));
            }
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::invalid("epsilon", format!("must be finite and >= 0, got {}", self.epsilon)));
        }
        Ok(())
    }

    fn check_b(&self) -> Result<()> {
        if !(self.b > 0.0 && self.b < 1.0) {
            return Err(Error::invalid("b", format!("must lie in (0, 1), got {}", self.b)));
        }
        Ok(())
    }
}

/// A closed-form value and the number of series terms summed for it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticResult {
    pub value: f64,
    pub terms: usize,
}

/// Average sum-rate of A³ selection (and of exhaustive search) at high SNR.
///
/// Independent of `b`: the weak-user constant `log2(1/b)` cancels against
/// the `b` inside the strong-user term.
pub fn prop1_avg_sum_rate(cfg: &AnalyticConfig) -> Result<AnalyticResult> {
    cfg.validate()?;
    let nm = cfg.n_bs * cfg.m_ue1;
    let nk = cfg.n_bs * cfg.k_ue2;
    check_order("n_bs * m_ue1", nm)?;
    check_order("n_bs * k_ue2", nk)?;
    let mut sum = CompensatedSum::default();
    sum.add(cfg.rho.ln() - euler_gamma());
    for i in 1..=nm {
        let u = i as f64 * cfg.omega_h;
        for j in 1..=nk {
            let v = j as f64 * cfg.omega_g;
            // ln((u+v)/(uv)) = ln(1/u + 1/v)
            sum.add(mu(i, nm) * mu(j, nk) * (1.0 / u + 1.0 / v).ln());
        }
    }
    Ok(AnalyticResult { value: sum.value() / LN_2, terms: nm * nk + 1 })
}

/// Density of the strong-user gain chosen by AIA selection.
///
/// The multinomial expansion of the weak-gain CDF is enumerated once at
/// construction; evaluating the density is then a plain double sum per
/// composition.
#[derive(Clone, Debug)]
pub struct AiaStrongDensity {
    cfg: AnalyticConfig,
    /// `(C_l · t_l, ξ_l)` for each composition of `N - 1`.
    expansion: Vec<(f64, f64)>,
}

impl AiaStrongDensity {
    pub fn new(cfg: &AnalyticConfig) -> Result<Self> {
        cfg.validate()?;
        check_order("m_ue1", cfg.m_ue1)?;
        check_order("k_ue2", cfg.k_ue2)?;
        let (m, k) = (cfg.m_ue1, cfg.k_ue2);
        let parts = m * k + 1;
        let count = composition_count(cfg.n_bs - 1, parts);
        if count > MAX_COMPOSITIONS {
            return Err(Error::SeriesTooLarge { terms: count, limit: MAX_COMPOSITIONS });
        }
        // Coefficient and exponent of each (i, j) term of the weak-gain CDF
        // beyond the leading 1, in the same row-major order as the parts.
        let mut coeff = Vec::with_capacity(m * k);
        let mut rate = Vec::with_capacity(m * k);
        for i in 1..=m {
            for j in 1..=k {
                coeff.push(-mu(i, m) * mu(j, k));
                rate.push(i as f64 * cfg.omega_h + j as f64 * cfg.omega_g);
            }
        }
        let mut expansion = Vec::with_capacity(count as usize);
        for_each_composition(cfg.n_bs - 1, parts, |l| {
            let mut c = 1.0;
            let mut remaining = cfg.n_bs - 1;
            let mut xi = CompensatedSum::default();
            // l[0] is the multiplicity of the constant term.
            for (idx, &li) in l.iter().enumerate() {
                c *= series::binomial(remaining, li);
                remaining -= li;
                if idx > 0 && li > 0 {
                    c *= coeff[idx - 1].powi(li as i32);
                    xi.add(rate[idx - 1] * li as f64);
                }
            }
            expansion.push((c, xi.value()));
        });
        Ok(Self { cfg: *cfg, expansion })
    }

    pub fn config(&self) -> &AnalyticConfig {
        &self.cfg
    }

    /// Number of multinomial compositions in the expansion.
    pub fn compositions(&self) -> usize {
        self.expansion.len()
    }

    /// Density at `x >= 0`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::invalid("x", format!("density is defined for x >= 0, got {x}")));
        }
        Ok(self.eval(x))
    }

    fn eval(&self, x: f64) -> f64 {
        let cfg = &self.cfg;
        let n = cfg.n_bs as f64;
        // (e^{-θx} - 1)/θ, stable for small θx.
        let em1 = |theta: f64| (-theta * x).exp_m1() / theta;
        let psi = |t1: f64, t2: f64, xi: f64| (-t1 * x).exp() * (em1(t2) - em1(t2 + xi));
        let mut sum = CompensatedSum::default();
        for i in 1..=cfg.m_ue1 {
            let u = i as f64 * cfg.omega_h;
            for j in 1..=cfg.k_ue2 {
                let v = j as f64 * cfg.omega_g;
                let zeta = n * u * v * mu(i, cfg.m_ue1) * mu(j, cfg.k_ue2);
                for &(ct, xi) in &self.expansion {
                    sum.add(ct * zeta * (psi(u, v, xi) + psi(v, u, xi)));
                }
                if cfg.n_bs == 1 {
                    // With a single row the weak-gain CDF expansion is the
                    // constant 1 and the terms above vanish identically; the
                    // density is carried entirely by this boundary term.
                    sum.add(zeta * ((-u * x).exp() * -em1(v) + (-v * x).exp() * -em1(u)));
                }
            }
        }
        sum.value()
    }
}

/// Density of the strong-user gain chosen by AIA selection at `x`.
pub fn aia_strong_pdf(x: f64, cfg: &AnalyticConfig) -> Result<f64> {
    AiaStrongDensity::new(cfg)?.pdf(x)
}

/// Average sum-rate of AIA selection at high SNR.
pub fn prop2_avg_sum_rate(cfg: &AnalyticConfig) -> Result<AnalyticResult> {
    cfg.check_b()?;
    let density = AiaStrongDensity::new(cfg)?;
    let n = cfg.n_bs as f64;
    let brho = cfg.b * cfg.rho;
    let c = euler_gamma();
    let chi = |x: f64| c + (x / brho).ln();

    let mut sum = CompensatedSum::default();
    let mut terms = 0;
    for i in 1..=cfg.m_ue1 {
        let u = i as f64 * cfg.omega_h;
        for j in 1..=cfg.k_ue2 {
            let v = j as f64 * cfg.omega_g;
            let zeta_t = n * mu(i, cfg.m_ue1) * mu(j, cfg.k_ue2);
            let zeta = zeta_t * u * v;
            for &(ct, xi) in &density.expansion {
                let phi_i = u + xi;
                let phi_j = v + xi;
                let phi1 = u + v + xi;
                let phi2 = u + v + 2.0 * xi;
                let t1 = xi * zeta_t / phi_i * chi(v);
                let t2 = xi * zeta_t / phi_j * chi(u);
                let t3 = zeta * phi2 * chi(phi1) / (phi_i * phi_j * phi1);
                let t4 = -zeta_t * chi(u + v);
                sum.add(ct * (t1 + t2 + t3 + t4));
                terms += 1;
            }
            if cfg.n_bs == 1 {
                sum.add(zeta_t * (chi(u + v) - chi(u) - chi(v)));
                terms += 1;
            }
        }
    }
    Ok(AnalyticResult { value: (1.0 / cfg.b).log2() + sum.value() / LN_2, terms })
}

/// Probability that UE1's best gain is at least UE2's, with its complement.
///
/// Summed as `1/2 + 1/2 Σ μ_i μ_j (v - u)/(u + v)`, pairing `(i, j)` with
/// `(j, i)`, so the symmetric configuration yields exactly one half.
pub fn prob_h_ge_g(cfg: &AnalyticConfig) -> Result<(AnalyticResult, AnalyticResult)> {
    cfg.validate()?;
    let nm = cfg.n_bs * cfg.m_ue1;
    let nk = cfg.n_bs * cfg.k_ue2;
    check_order("n_bs * m_ue1", nm)?;
    check_order("n_bs * k_ue2", nk)?;
    let term = |i: usize, j: usize| {
        let u = i as f64 * cfg.omega_h;
        let v = j as f64 * cfg.omega_g;
        mu(i, nm) * mu(j, nk) * (v - u) / (u + v)
    };
    let mut sum = CompensatedSum::default();
    for i in 1..=nm {
        for j in 1..=nk {
            if i == j {
                sum.add(term(i, j));
            } else if i < j {
                let mirrored = if j <= nm && i <= nk { term(j, i) } else { 0.0 };
                sum.add(term(i, j) + mirrored);
            } else if !(j <= nm && i <= nk) {
                sum.add(term(i, j));
            }
        }
    }
    let p = (0.5 + 0.5 * sum.value()).clamp(0.0, 1.0);
    let terms = nm * nk;
    Ok((AnalyticResult { value: p, terms }, AnalyticResult { value: 1.0 - p, terms }))
}

/// `ln(1 + r)/r`, continuous through `r = 0`.
fn ln1p_ratio(r: f64) -> f64 {
    if r.abs() < 1e-8 {
        1.0 - 0.5 * r
    } else {
        r.ln_1p() / r
    }
}

fn secondary_rate_series(cfg: &AnalyticConfig, i_max: usize, j_max: usize) -> Result<AnalyticResult> {
    cfg.validate()?;
    check_order("i range", i_max)?;
    check_order("j range", j_max)?;
    let eps = cfg.epsilon;
    let c = euler_gamma();
    let mut sum = CompensatedSum::default();
    for i in 1..=i_max {
        let u = i as f64 * cfg.omega_h;
        for j in 1..=j_max {
            let v = j as f64 * cfg.omega_g;
            // ε v/(u - ε v) · ln((ε+1) v/(u+v)) rewritten through
            // r = (u - ε v)/((ε+1) v), removing the removable singularity.
            let r = (u - eps * v) / ((eps + 1.0) * v);
            let singular = -eps / (eps + 1.0) * ln1p_ratio(r);
            sum.add(mu(i, i_max) * mu(j, j_max) * (singular - (u / cfg.rho).ln() - c));
        }
    }
    Ok(AnalyticResult { value: sum.value() / LN_2, terms: i_max * j_max })
}

/// Average secondary-user rate of PU selection at high SNR.
pub fn pu_avg_secondary_rate(cfg: &AnalyticConfig) -> Result<AnalyticResult> {
    secondary_rate_series(cfg, cfg.m_ue1, cfg.n_bs * cfg.k_ue2)
}

/// Average secondary-user rate of SU selection at high SNR.
pub fn su_avg_secondary_rate(cfg: &AnalyticConfig) -> Result<AnalyticResult> {
    secondary_rate_series(cfg, cfg.n_bs * cfg.m_ue1, cfg.k_ue2)
}

/// Average secondary-user rate of MCG selection: SU when UE1 holds the
/// global maximum, PU otherwise.
pub fn mcg_avg_secondary_rate(cfg: &AnalyticConfig) -> Result<AnalyticResult> {
    let (p_ge, p_lt) = prob_h_ge_g(cfg)?;
    let pu = pu_avg_secondary_rate(cfg)?;
    let su = su_avg_secondary_rate(cfg)?;
    let mut value = CompensatedSum::default();
    // Skip a zero-weight branch so an extreme rate cannot poison the mix.
    if p_lt.value > 0.0 {
        value.add(p_lt.value * pu.value);
    }
    if p_ge.value > 0.0 {
        value.add(p_ge.value * su.value);
    }
    Ok(AnalyticResult { value: value.value(), terms: p_ge.terms + pu.terms + su.terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, m: usize, k: usize, oh: f64, og: f64) -> AnalyticConfig {
        AnalyticConfig { n_bs: n, m_ue1: m, k_ue2: k, omega_h: oh, omega_g: og, rho: 1e12, b: 0.4, epsilon: 1.0 }
    }

    #[test]
    fn prop1_single_antenna() {
        let mut c = cfg(1, 1, 1, 1.0, 1.0);
        c.rho = 1000.0;
        let r = prop1_avg_sum_rate(&c).unwrap();
        let want = (1000f64.ln() - euler_gamma() + 2f64.ln()) / LN_2;
        assert!((r.value - want).abs() < 1e-12);
        assert!((r.value - 10.134).abs() < 1e-3);
    }

    #[test]
    fn prop1_ignores_b() {
        let mut c = cfg(2, 2, 2, 512_000.0, 8e6);
        c.b = 0.2;
        let a = prop1_avg_sum_rate(&c).unwrap().value;
        c.b = 0.4;
        assert_eq!(a, prop1_avg_sum_rate(&c).unwrap().value);
    }

    #[test]
    fn prop1_exchange_symmetry() {
        let a = prop1_avg_sum_rate(&cfg(2, 3, 1, 5.0, 0.7)).unwrap().value;
        let b = prop1_avg_sum_rate(&cfg(2, 1, 3, 0.7, 5.0)).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn prop1_rejects_large_orders() {
        assert!(matches!(prop1_avg_sum_rate(&cfg(16, 2, 2, 1.0, 1.0)), Err(Error::SeriesTooLarge { .. })));
    }

    #[test]
    fn crossing_probability_examples() {
        let (p, q) = prob_h_ge_g(&cfg(1, 1, 1, 1.0, 2.0)).unwrap();
        assert!((p.value - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(p.value + q.value, 1.0);
        for (n, m) in [(1, 1), (2, 2), (4, 2), (8, 2), (3, 3)] {
            let (p, _) = prob_h_ge_g(&cfg(n, m, m, 7.0, 7.0)).unwrap();
            assert_eq!(p.value, 0.5, "n={n} m={m}");
        }
    }

    #[test]
    fn crossing_probability_extremes() {
        let (p, _) = prob_h_ge_g(&cfg(2, 2, 2, 1e-9, 1e9)).unwrap();
        assert!(p.value > 1.0 - 1e-12);
        let (p, _) = prob_h_ge_g(&cfg(2, 2, 2, 1e9, 1e-9)).unwrap();
        assert!(p.value < 1e-12);
    }

    #[test]
    fn secondary_rate_gains_one_bit_per_doubling() {
        let mut c = cfg(4, 2, 2, 512_000.0, 8e6);
        c.epsilon = 31.0;
        c.rho = 1e13;
        for f in [pu_avg_secondary_rate, su_avg_secondary_rate] {
            let lo = f(&c).unwrap().value;
            let mut hi_cfg = c;
            hi_cfg.rho *= 2.0;
            let hi = f(&hi_cfg).unwrap().value;
            assert!((hi - lo - 1.0).abs() < 1e-9, "{hi} - {lo}");
        }
    }

    #[test]
    fn singular_pair_is_continuous() {
        // u = ε v exactly for i = 2, j = 1.
        let base =
            AnalyticConfig { n_bs: 1, m_ue1: 2, k_ue2: 2, omega_h: 1.5, omega_g: 1.0, rho: 1e10, b: 0.4, epsilon: 3.0 };
        let at = pu_avg_secondary_rate(&base).unwrap().value;
        for d in [1e-7, -1e-7] {
            let mut c = base;
            c.omega_h *= 1.0 + d;
            let near = pu_avg_secondary_rate(&c).unwrap().value;
            assert!((near - at).abs() < 1e-5, "{near} vs {at}");
        }
    }

    #[test]
    fn su_pu_symmetry_single_row() {
        let c =
            AnalyticConfig { n_bs: 1, m_ue1: 2, k_ue2: 2, omega_h: 3.0, omega_g: 3.0, rho: 1e12, b: 0.4, epsilon: 1.0 };
        let pu = pu_avg_secondary_rate(&c).unwrap().value;
        let su = su_avg_secondary_rate(&c).unwrap().value;
        assert_eq!(pu, su);
    }

    #[test]
    fn mcg_collapses_at_extremes() {
        let mut c = cfg(2, 2, 2, 1e-12, 1e12);
        let su = su_avg_secondary_rate(&c).unwrap().value;
        assert!((mcg_avg_secondary_rate(&c).unwrap().value - su).abs() < 1e-9 * su.abs().max(1.0));
        c.omega_h = 1e12;
        c.omega_g = 1e-12;
        let pu = pu_avg_secondary_rate(&c).unwrap().value;
        assert!((mcg_avg_secondary_rate(&c).unwrap().value - pu).abs() < 1e-9 * pu.abs().max(1.0));
    }

    #[test]
    fn aia_density_single_row_is_max_density() {
        // With one row, AIA's strong gain is max(h^max, g^max).
        let c = cfg(1, 2, 3, 1.0, 2.0);
        let d = AiaStrongDensity::new(&c).unwrap();
        for x in [0.01, 0.3, 1.0, 2.5, 7.0] {
            let fh = (1.0 - (-x * 1.0f64).exp()).powi(2);
            let fg = (1.0 - (-x * 2.0f64).exp()).powi(3);
            let dfh = 2.0 * (1.0 - (-x * 1.0f64).exp()) * (-x * 1.0f64).exp();
            let dfg = 3.0 * (1.0 - (-x * 2.0f64).exp()).powi(2) * 2.0 * (-x * 2.0f64).exp();
            let want = dfh * fg + fh * dfg;
            assert!((d.pdf(x).unwrap() - want).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn aia_density_rejects_negative_x() {
        assert!(aia_strong_pdf(-1.0, &cfg(2, 2, 2, 1.0, 2.0)).is_err());
    }

    #[test]
    fn aia_density_composition_count() {
        let d = AiaStrongDensity::new(&cfg(3, 2, 2, 1.0, 2.0)).unwrap();
        assert_eq!(d.compositions(), 15);
    }

    #[test]
    fn prop2_single_row_equals_prop1() {
        let c = cfg(1, 2, 2, 512_000.0, 8e6);
        let p1 = prop1_avg_sum_rate(&c).unwrap().value;
        let p2 = prop2_avg_sum_rate(&c).unwrap().value;
        assert!((p1 - p2).abs() < 1e-6, "{p1} vs {p2}");
    }
}
