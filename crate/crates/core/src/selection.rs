//! Antenna-selection policies.
//!
//! Every policy maps a [`ChannelRealization`] to one BS antenna and one
//! receive antenna per user. Each comparison between two gains and each
//! candidate-rate evaluation is counted in [`Selection::eval_count`], so the
//! complexity claims of the heuristics can be checked as exact inequalities.
//! Ties always resolve to the lowest row-major index.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::ChannelRealization;
use crate::rates::{self, ChannelOrder, CrMode, PowerSplit};

/// Result of one policy on one realization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Selection {
    /// BS antenna serving UE1 (and UE2 for every NOMA policy).
    pub bs: usize,
    /// UE1 receive antenna.
    pub ue1: usize,
    /// UE2 receive antenna.
    pub ue2: usize,
    /// BS antenna serving UE2. Only OMA may pick a different one than `bs`.
    pub bs_ue2: usize,
    /// Selected UE1 gain.
    pub h: f64,
    /// Selected UE2 gain.
    pub g: f64,
    pub split: PowerSplit,
    pub eval_count: usize,
}

impl Selection {
    fn on(ch: &ChannelRealization, bs: usize, ue1: usize, ue2: usize, split: PowerSplit, eval_count: usize) -> Self {
        Self { bs, ue1, ue2, bs_ue2: bs, h: ch.h(bs, ue1), g: ch.g(bs, ue2), split, eval_count }
    }

    pub fn order(&self) -> ChannelOrder {
        rates::channel_order(self.h, self.g)
    }

    pub fn gamma_s(&self) -> f64 {
        self.h.max(self.g)
    }

    pub fn gamma_w(&self) -> f64 {
        self.h.min(self.g)
    }

    pub fn triple(&self) -> (usize, usize, usize) {
        (self.bs, self.ue1, self.ue2)
    }
}

/// Comparison-counting max search.
#[derive(Default)]
struct Counter(usize);

impl Counter {
    /// Index and value of the first maximum; `len - 1` comparisons.
    fn argmax(&mut self, values: &[f64]) -> (usize, f64) {
        let mut best = (0, values[0]);
        for (i, &v) in values.iter().enumerate().skip(1) {
            self.0 += 1;
            if v > best.1 {
                best = (i, v);
            }
        }
        best
    }

    /// `a >= b`, one comparison.
    fn at_least(&mut self, a: f64, b: f64) -> bool {
        self.0 += 1;
        a >= b
    }
}

/// Per-row maxima of both matrices, with their column indices.
struct RowMaxima {
    h: Vec<(usize, f64)>,
    g: Vec<(usize, f64)>,
}

impl RowMaxima {
    fn new(ch: &ChannelRealization, counter: &mut Counter) -> Self {
        let n = ch.n_bs();
        let h = (0..n).map(|r| counter.argmax(ch.h_row(r))).collect();
        let g = (0..n).map(|r| counter.argmax(ch.g_row(r))).collect();
        Self { h, g }
    }
}

fn es_search(ch: &ChannelRealization, mut objective: impl FnMut(f64, f64) -> f64) -> (usize, usize, usize, usize) {
    let mut best = (0, 0, 0);
    let mut best_val = f64::NEG_INFINITY;
    let mut evals = 0;
    for n in 0..ch.n_bs() {
        for m in 0..ch.m_ue1() {
            for k in 0..ch.k_ue2() {
                evals += 1;
                let v = objective(ch.h(n, m), ch.g(n, k));
                if v > best_val {
                    best_val = v;
                    best = (n, m, k);
                }
            }
        }
    }
    (best.0, best.1, best.2, evals)
}

/// Exhaustive F-NOMA search maximizing the instantaneous sum rate.
pub fn es_fnoma(ch: &ChannelRealization, split: PowerSplit, rho: f64) -> Selection {
    let (n, m, k, evals) = es_search(ch, |h, g| rates::fnoma_pair_rates(h, g, split, rho).sum());
    Selection::on(ch, n, m, k, split, evals)
}

/// Exhaustive CR-NOMA search maximizing the exact secondary rate.
///
/// Triples where the primary QoS cannot be met score zero instead of being
/// excluded, so a triple is always returned.
pub fn es_crnoma(ch: &ChannelRealization, rho: f64, r_th: f64) -> Selection {
    let (n, m, k, evals) = es_search(ch, |h, g| rates::cr_rates(h, g, rho, r_th, CrMode::Exact).r1);
    let split = rates::cr_power_split(ch.h(n, m), ch.g(n, k), rho, r_th, CrMode::Exact);
    Selection::on(ch, n, m, k, split, evals)
}

/// Max-max-max selection: maximize the strong user's gain, then give the
/// weak user the best antenna on the same BS row.
pub fn a3_as(ch: &ChannelRealization, split: PowerSplit) -> Selection {
    let mut counter = Counter::default();
    let rows = RowMaxima::new(ch, &mut counter);
    let strong: Vec<f64> =
        rows.h.iter().zip(&rows.g).map(|(&(_, h), &(_, g))| if counter.at_least(h, g) { h } else { g }).collect();
    let (n, _) = counter.argmax(&strong);
    Selection::on(ch, n, rows.h[n].0, rows.g[n].0, split, counter.0)
}

/// Max-min-max selection: maximize the weak user's gain, the strong user
/// takes the best antenna on the same BS row.
pub fn aia_as(ch: &ChannelRealization, split: PowerSplit) -> Selection {
    let mut counter = Counter::default();
    let rows = RowMaxima::new(ch, &mut counter);
    let weak: Vec<f64> =
        rows.h.iter().zip(&rows.g).map(|(&(_, h), &(_, g))| if counter.at_least(h, g) { g } else { h }).collect();
    let (n, _) = counter.argmax(&weak);
    Selection::on(ch, n, rows.h[n].0, rows.g[n].0, split, counter.0)
}

/// Maximum-channel-gain selection for CR-NOMA.
///
/// The larger of the two global maxima fixes the BS antenna; the other user
/// takes its best antenna on that row. The split uses the high-SNR form.
pub fn mcg_as(ch: &ChannelRealization, rho: f64, r_th: f64) -> Selection {
    let mut counter = Counter::default();
    let rows = RowMaxima::new(ch, &mut counter);
    let h_max: Vec<f64> = rows.h.iter().map(|r| r.1).collect();
    let g_max: Vec<f64> = rows.g.iter().map(|r| r.1).collect();
    let (nh, hv) = counter.argmax(&h_max);
    let (ng, gv) = counter.argmax(&g_max);
    let n = if counter.at_least(hv, gv) { nh } else { ng };
    let (m, k) = (rows.h[n].0, rows.g[n].0);
    let split = rates::cr_power_split(ch.h(n, m), ch.g(n, k), rho, r_th, CrMode::Asymptotic);
    Selection::on(ch, n, m, k, split, counter.0)
}

fn global_argmax(counter: &mut Counter, entries: &[f64], cols: usize) -> (usize, usize) {
    let (idx, _) = counter.argmax(entries);
    (idx / cols, idx % cols)
}

/// Primary-user-first selection: global maximum of `G`, then UE1's best
/// antenna on that row.
pub fn pu_as(ch: &ChannelRealization, rho: f64, r_th: f64) -> Selection {
    let mut counter = Counter::default();
    let (n, k) = global_argmax(&mut counter, ch.g_entries(), ch.k_ue2());
    let (m, _) = counter.argmax(ch.h_row(n));
    let split = rates::cr_power_split(ch.h(n, m), ch.g(n, k), rho, r_th, CrMode::Asymptotic);
    Selection::on(ch, n, m, k, split, counter.0)
}

/// Secondary-user-first selection: global maximum of `H`, then UE2's best
/// antenna on that row.
pub fn su_as(ch: &ChannelRealization, rho: f64, r_th: f64) -> Selection {
    let mut counter = Counter::default();
    let (n, m) = global_argmax(&mut counter, ch.h_entries(), ch.m_ue1());
    let (k, _) = counter.argmax(ch.g_row(n));
    let split = rates::cr_power_split(ch.h(n, m), ch.g(n, k), rho, r_th, CrMode::Asymptotic);
    Selection::on(ch, n, m, k, split, counter.0)
}

/// How a policy without its own power rule splits power.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Allocation {
    Fixed(PowerSplit),
    Cognitive { rho: f64, r_th: f64 },
}

/// Uniformly random antennas, deterministic in `seed`.
pub fn random_as(ch: &ChannelRealization, seed: u64, allocation: Allocation) -> Selection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_as_with(ch, &mut rng, allocation)
}

/// [`random_as`] drawing from a caller-supplied generator.
pub fn random_as_with<R: Rng>(ch: &ChannelRealization, rng: &mut R, allocation: Allocation) -> Selection {
    let n = rng.random_range(0..ch.n_bs());
    let m = rng.random_range(0..ch.m_ue1());
    let k = rng.random_range(0..ch.k_ue2());
    let split = match allocation {
        Allocation::Fixed(split) => split,
        Allocation::Cognitive { rho, r_th } => rates::cr_power_split(ch.h(n, m), ch.g(n, k), rho, r_th, CrMode::Exact),
    };
    Selection::on(ch, n, m, k, split, 0)
}

/// OMA baseline: each user independently takes the global maximum of its
/// own matrix, possibly on different BS antennas. The split records the
/// equal time shares.
pub fn oma_es(ch: &ChannelRealization) -> Selection {
    let mut counter = Counter::default();
    let (n1, m) = global_argmax(&mut counter, ch.h_entries(), ch.m_ue1());
    let (n2, k) = global_argmax(&mut counter, ch.g_entries(), ch.k_ue2());
    Selection {
        bs: n1,
        ue1: m,
        ue2: k,
        bs_ue2: n2,
        h: ch.h(n1, m),
        g: ch.g(n2, k),
        split: PowerSplit::clamped(0.5),
        eval_count: counter.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split() -> PowerSplit {
        PowerSplit::fnoma(0.4).unwrap()
    }

    fn single() -> ChannelRealization {
        ChannelRealization::from_gains(1, 1, 1, vec![0.3], vec![0.7]).unwrap()
    }

    #[test]
    fn singleton_search_space() {
        let ch = single();
        for s in [
            es_fnoma(&ch, split(), 10.0),
            es_crnoma(&ch, 10.0, 1.0),
            a3_as(&ch, split()),
            aia_as(&ch, split()),
            mcg_as(&ch, 10.0, 1.0),
            pu_as(&ch, 10.0, 1.0),
            su_as(&ch, 10.0, 1.0),
            random_as(&ch, 5, Allocation::Fixed(split())),
            oma_es(&ch),
        ] {
            assert_eq!(s.triple(), (0, 0, 0));
            assert_eq!(s.bs_ue2, 0);
        }
    }

    #[test]
    fn a3_picks_global_max_in_h() {
        // Largest entry is h[1][0] = 9 (row 2, column 1 in one-based terms).
        let ch = ChannelRealization::from_gains(
            3,
            2,
            2,
            vec![1.0, 2.0, 9.0, 0.5, 3.0, 1.0],
            vec![0.1, 0.2, 0.4, 0.3, 5.0, 0.9],
        )
        .unwrap();
        let s = a3_as(&ch, split());
        assert_eq!(s.triple(), (1, 0, 0));
        assert_eq!(s.order(), ChannelOrder::Ue1Strong);
        assert_eq!(s.gamma_s(), 9.0);
        assert_eq!(s.gamma_w(), 0.4);
    }

    #[test]
    fn aia_prefers_balanced_row() {
        // Row 0 holds the global max but a tiny UE2 gain; row 1 is balanced.
        let ch = ChannelRealization::from_gains(2, 1, 1, vec![10.0, 4.0], vec![0.01, 3.0]).unwrap();
        let a3 = a3_as(&ch, split());
        let aia = aia_as(&ch, split());
        assert_eq!(a3.bs, 0);
        assert_eq!(aia.bs, 1);
        assert!(aia.gamma_w() > a3.gamma_w());
    }

    #[test]
    fn pu_and_su_definitions() {
        // G global max at row 2 (zero-based), column 1.
        let ch = ChannelRealization::from_gains(
            3,
            2,
            2,
            vec![0.9, 0.1, 0.2, 0.3, 0.4, 0.6],
            vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.8],
        )
        .unwrap();
        let pu = pu_as(&ch, 1e3, 1.0);
        assert_eq!(pu.triple(), (2, 1, 1));
        let su = su_as(&ch, 1e3, 1.0);
        assert_eq!(su.triple(), (0, 0, 1));
    }

    #[test]
    fn complexity_counts() {
        let ch = ChannelRealization::from_gains(
            4,
            2,
            2,
            (1..=8).map(f64::from).collect(),
            (1..=8).map(|v| v as f64 * 0.5).collect(),
        )
        .unwrap();
        assert_eq!(es_fnoma(&ch, split(), 10.0).eval_count, 16);
        assert_eq!(es_crnoma(&ch, 10.0, 1.0).eval_count, 16);
        assert_eq!(a3_as(&ch, split()).eval_count, 4 * (2 + 2) - 1);
        assert!(pu_as(&ch, 10.0, 1.0).eval_count <= 10);
        assert!(su_as(&ch, 10.0, 1.0).eval_count <= 10);
        assert!(mcg_as(&ch, 10.0, 1.0).eval_count <= 4 * 4 + 2);
    }

    #[test]
    fn random_is_seeded() {
        let ch = ChannelRealization::from_gains(4, 3, 3, vec![1.0; 12], vec![2.0; 12]).unwrap();
        let a = random_as(&ch, 11, Allocation::Fixed(split()));
        let b = random_as(&ch, 11, Allocation::Fixed(split()));
        assert_eq!(a, b);
    }

    #[test]
    fn oma_can_split_bs_antennas() {
        let ch = ChannelRealization::from_gains(2, 1, 1, vec![5.0, 1.0], vec![1.0, 5.0]).unwrap();
        let s = oma_es(&ch);
        assert_eq!((s.bs, s.bs_ue2), (0, 1));
        assert_eq!((s.h, s.g), (5.0, 5.0));
    }
}
