//! Adaptive Gauss–Kronrod quadrature, used as an independent oracle for the
//! closed-form average rates.
//!
//! The half line is covered by geometric panels `[s·2^j, s·2^(j+1)]` around
//! a caller-supplied scale `s`, which resolves both the logarithmic behaviour
//! of rate integrands near zero and exponential tails without a variable
//! change. Each panel is refined by global adaptive bisection with a 21-point
//! Kronrod rule and its embedded 10-point Gauss rule.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};

// 21-point Kronrod abscissae on [0, 1]; odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_626_368,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

const MAX_SUBDIVISIONS: usize = 1000;
const PANELS_BELOW_SCALE: i32 = 64;
const MAX_PANELS_ABOVE_SCALE: i32 = 256;

/// An integral estimate with its error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod21(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for i in 0..10 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Segment { a, b, value: kronrod * half, error: ((kronrod - gauss) * half).abs() }
}

/// Globally adaptive integration of `f` over `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Integral> {
    let mut segments = vec![kronrod21(&f, a, b)];
    let mut evaluations = 21;
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let target = abs_tol.max(rel_tol * value.abs());
        if error <= target || segments.len() >= MAX_SUBDIVISIONS {
            if error > target {
                return Err(Error::Quadrature { achieved: error, requested: target });
            }
            return Ok(Integral { value, error, evaluations });
        }
        let worst = segments.iter().enumerate().max_by(|x, y| x.1.error.total_cmp(&y.1.error)).map(|(i, _)| i).unwrap();
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // Interval can no longer be split in floating point.
            return Err(Error::Quadrature { achieved: error, requested: target });
        }
        segments.push(kronrod21(&f, s.a, mid));
        segments.push(kronrod21(&f, mid, s.b));
        evaluations += 42;
    }
}

/// Integral of `f` over `[0, ∞)`.
///
/// `scale` should be of the order of the region where `f` has its mass.
/// Outward panels stop once a panel contributes less than
/// `tail_tol · max(1, |running total|)` and is smaller than its predecessor.
pub fn integrate_half_line(f: impl Fn(f64) -> f64, scale: f64, abs_tol: f64, tail_tol: f64) -> Result<Integral> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::invalid("scale", format!("must be finite and > 0, got {scale}")));
    }
    let panel_tol = abs_tol / 512.0;
    let mut total = Integral { value: 0.0, error: 0.0, evaluations: 0 };
    let add = |part: Integral, total: &mut Integral| {
        total.value += part.value;
        total.error += part.error;
        total.evaluations += part.evaluations;
    };

    let lowest = scale * 2f64.powi(-PANELS_BELOW_SCALE);
    add(integrate(&f, 0.0, lowest, panel_tol, 1e-12)?, &mut total);
    for j in (0..PANELS_BELOW_SCALE).rev() {
        let a = scale * 2f64.powi(-j - 1);
        add(integrate(&f, a, 2.0 * a, panel_tol, 1e-12)?, &mut total);
    }

    let mut previous = f64::INFINITY;
    let mut converged = false;
    for j in 0..MAX_PANELS_ABOVE_SCALE {
        let a = scale * 2f64.powi(j);
        let part = integrate(&f, a, 2.0 * a, panel_tol, 1e-12)?;
        let magnitude = part.value.abs();
        add(part, &mut total);
        if magnitude < tail_tol * total.value.abs().max(1.0) && magnitude <= previous {
            converged = true;
            break;
        }
        previous = magnitude;
    }
    if !converged || total.error > abs_tol {
        return Err(Error::Quadrature { achieved: total.error, requested: abs_tol });
    }
    Ok(total)
}

/// `∫ log2(1 + bρx) pdf(x) dx` over the half line, to absolute tolerance
/// 1e-8 with a 1e-12 tail cutoff.
pub fn quadrature_rate(pdf: impl Fn(f64) -> f64, b: f64, rho: f64, scale: f64) -> Result<f64> {
    let brho = b * rho;
    integrate_half_line(|x| (brho * x).ln_1p() / LN_2 * pdf(x), scale, 1e-8, 1e-12).map(|i| i.value)
}
