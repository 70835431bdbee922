//! Binomial coefficients, compensated summation and multinomial expansions
//! used by the closed-form rate series.

use crate::error::{Error, Result};

/// Largest `n` for which the alternating binomial sums are evaluated.
pub const MAX_BINOMIAL_ORDER: usize = 30;

/// Cap on the number of multinomial compositions enumerated.
pub const MAX_COMPOSITIONS: u128 = 1_000_000;

/// `C(n, k)` as a float; exact for every `n <= MAX_BINOMIAL_ORDER`.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// `(-1)^i C(n, i)`, the coefficients of `(1 - e^{-x})^n`.
pub fn mu(i: usize, n: usize) -> f64 {
    let c = binomial(n, i);
    if i.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

pub(crate) fn check_order(name: &'static str, n: usize) -> Result<()> {
    if n > MAX_BINOMIAL_ORDER {
        return Err(Error::SeriesTooLarge { terms: n as u128, limit: MAX_BINOMIAL_ORDER as u128 });
    }
    if n == 0 {
        return Err(Error::invalid(name, "must be at least 1"));
    }
    Ok(())
}

/// Neumaier compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::default();
        for v in iter {
            s.add(v);
        }
        s
    }
}

/// Number of compositions of `total` into `parts` nonnegative parts.
pub fn composition_count(total: usize, parts: usize) -> u128 {
    // C(total + parts - 1, parts - 1) with overflow saturation.
    let (n, k) = (total + parts - 1, parts - 1);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `visit` with every composition of `total` into `parts.len()`
/// nonnegative parts, in lexicographic order of the parts.
pub fn for_each_composition(total: usize, parts: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(buf: &mut Vec<usize>, remaining: usize, parts: usize, visit: &mut dyn FnMut(&[usize])) {
        if buf.len() + 1 == parts {
            buf.push(remaining);
            visit(buf);
            buf.pop();
            return;
        }
        for v in (0..=remaining).rev() {
            buf.push(v);
            rec(buf, remaining - v, parts, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(parts);
    rec(&mut buf, total, parts, &mut visit);
}

/// `ln(n!)`.
#[cfg(test)]
pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}
