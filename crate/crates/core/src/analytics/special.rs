//! Exponential integral and Euler's constant.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Euler–Mascheroni constant.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// Principal-value exponential integral `Ei(x)`.
///
/// Negative arguments go through `Ei(-x) = -E1(x)`: a power series for
/// `x <= 1` and a Lentz continued fraction beyond, which avoids the
/// cancellation the alternating series suffers for large `x`. Positive
/// arguments use the (all-positive) power series up to 40 and the
/// asymptotic expansion above.
pub fn exp_integral_ei(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::EiDomain);
    }
    if x.is_nan() {
        return Err(Error::invalid("x", "NaN"));
    }
    Ok(if x < 0.0 {
        -e1(-x)
    } else if x <= 40.0 {
        ei_series(x)
    } else {
        ei_asymptotic(x)
    })
}

/// `e^x · Ei(-x)` for `x > 0`, finite even when `Ei(-x)` underflows.
pub fn scaled_ei_neg(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x <= 1.0 {
        x.exp() * -e1_series(x)
    } else {
        -e1_continued_fraction_scaled(x)
    }
}

fn e1(x: f64) -> f64 {
    if x <= 1.0 {
        e1_series(x)
    } else if x > 745.0 {
        0.0
    } else {
        e1_continued_fraction_scaled(x) * (-x).exp()
    }
}

/// `E1(x) = -γ - ln x - Σ (-x)^k / (k·k!)`.
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= -x / k as f64;
        let contrib = term / k as f64;
        sum += contrib;
        if contrib.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// `e^x · E1(x)` by the modified Lentz method, `x > 1`.
fn e1_continued_fraction_scaled(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// `Ei(x) = γ + ln x + Σ x^k / (k·k!)`, `0 < x <= 40`.
fn ei_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..500 {
        term *= x / k as f64;
        let contrib = term / k as f64;
        sum += contrib;
        if contrib < 1e-17 * sum {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// `Ei(x) ~ e^x/x · Σ k!/x^k`, truncated at the smallest term.
fn ei_asymptotic(x: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 1..200 {
        let next = term * k as f64 / x;
        if next >= term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    // Split the exponential so that values near the f64 limit survive.
    let half = (0.5 * x).exp();
    half * (half / x) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with 40-digit arbitrary precision.
    #[allow(clippy::excessive_precision)]
    const REFERENCE: &[(f64, f64)] = &[
        (-1.0, -0.219_383_934_395_520_27),
        (-1e-8, -17.843_465_089_050_832),
        (-10.0, -4.156_968_929_685_324_3e-6),
        (-0.5, -0.559_773_594_776_160_8),
        (-2.0, -0.048_900_510_708_061_12),
        (-3.7, -0.005_447_824_656_770_463_6),
        (-25.0, -5.348_899_755_340_216_6e-13),
        (-45.0, -6.225_690_809_462_383_6e-22),
        (-100.0, -3.683_597_761_682_032_2e-46),
        (-700.0, -1.406_518_766_234_033e-307),
        (0.3725, -2.887_418_318_873_731_3e-5),
        (0.001, -6.329_539_364_025_038),
        (1.0, 1.895_117_816_355_936_8),
        (5.0, 40.185_275_355_803_18),
        (20.0, 25_615_652.664_056_59),
        (39.0, 2_280_446_200_301_902.5),
        (41.0, 16_006_649_143_245_041.0),
        (80.0, 7.014_600_004_904_8e32),
        (700.0, 1.450_978_736_052_560_9e301),
        (1e-300, -690.198_312_233_312_2),
        (-1e-300, -690.198_312_233_312_2),
    ];

    #[test]
    fn matches_reference_values() {
        for &(x, want) in REFERENCE {
            let got = exp_integral_ei(x).unwrap();
            let err = (got - want).abs();
            assert!(err <= 1e-12 || err <= 1e-13 * want.abs(), "Ei({x}) = {got}, want {want}, err {err:e}");
        }
    }

    #[test]
    fn zero_is_a_domain_error() {
        assert!(matches!(exp_integral_ei(0.0), Err(Error::EiDomain)));
    }

    #[test]
    fn small_argument_limit() {
        let x = 1e-8;
        let got = exp_integral_ei(-x).unwrap();
        assert!((got - (EULER_GAMMA + x.ln())).abs() < 1e-7);
    }

    #[test]
    fn decays_on_negative_axis() {
        let v = exp_integral_ei(-10.0).unwrap();
        assert!(v < 0.0 && v.abs() < 5e-6);
        let scaled = scaled_ei_neg(10.0);
        assert!(scaled < 0.0 && scaled > -0.1);
    }

    #[test]
    fn scaled_form_agrees() {
        for x in [0.01f64, 0.5, 1.0, 1.5, 7.0, 30.0] {
            let direct = x.exp() * exp_integral_ei(-x).unwrap();
            assert!((scaled_ei_neg(x) - direct).abs() < 1e-14 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn euler_constant() {
        let c = euler_gamma();
        assert!(c > 0.5772 && c < 0.5773);
        let n = 10_000_000u32;
        // Harmonic sum summed smallest-first to keep rounding down.
        let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        assert!((h - (n as f64).ln() - c).abs() < 1e-7);
    }
}
