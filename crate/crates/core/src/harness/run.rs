//! Monte Carlo runs over scenarios and sweeps.

use crate::channel::{sample_channels, trial_rng, ChannelRealization, Stream};
use crate::error::{Error, Result};
use crate::rates::{self, CrMode, RatePair};
use crate::selection::{self, Allocation, Selection};

use super::engine::{monte_carlo, workers_from_env, Moments};
use super::scenario::{Axis, Mode, Policy, Scenario};
use super::table::Table;

/// Standard errors of the per-metric means.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StdErrors {
    pub r1: f64,
    pub r2: f64,
    pub sum: f64,
    pub fairness: f64,
}

/// Averages of one policy over a set of trials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateReport {
    pub mean_r1: f64,
    pub mean_r2: f64,
    pub mean_sum: f64,
    pub mean_fairness: f64,
    pub std_err: StdErrors,
    pub trials_used: u64,
    pub mean_eval_count: f64,
}

#[derive(Clone, Copy, Debug, Default)]
struct Stats {
    r1: Moments,
    r2: Moments,
    sum: Moments,
    fairness: Moments,
    evals: Moments,
}

impl Stats {
    fn push(&mut self, sel: &Selection, rates: RatePair) {
        self.r1.push(rates.r1);
        self.r2.push(rates.r2);
        self.sum.push(rates.sum());
        self.fairness.push(rates::jain_fairness(rates.r1, rates.r2));
        self.evals.push(sel.eval_count as f64);
    }

    fn merge(self, o: Self) -> Self {
        Self {
            r1: self.r1.merge(o.r1),
            r2: self.r2.merge(o.r2),
            sum: self.sum.merge(o.sum),
            fairness: self.fairness.merge(o.fairness),
            evals: self.evals.merge(o.evals),
        }
    }

    fn report(&self) -> RateReport {
        RateReport {
            mean_r1: self.r1.mean(),
            mean_r2: self.r2.mean(),
            mean_sum: self.sum.mean(),
            mean_fairness: self.fairness.mean(),
            std_err: StdErrors {
                r1: self.r1.std_err(),
                r2: self.r2.std_err(),
                sum: self.sum.std_err(),
                fairness: self.fairness.std_err(),
            },
            trials_used: self.r1.count(),
            mean_eval_count: self.evals.mean(),
        }
    }
}

/// Runs `policy` under `mode` on one realization and returns its
/// instantaneous rates. CR-NOMA rates use the exact (finite-SNR) formulas.
///
/// `trial` seeds the random policy's own stream, so it is independent of
/// the gains.
pub fn evaluate(
    scn: &Scenario,
    mode: Mode,
    policy: Policy,
    ch: &ChannelRealization,
    trial: u64,
) -> (Selection, RatePair) {
    let rho = scn.fading.rho();
    let r_th = scn.r_th;
    let sel = match (mode, policy) {
        (Mode::Fnoma, Policy::Es) => selection::es_fnoma(ch, scn.split, rho),
        (Mode::Fnoma, Policy::A3) => selection::a3_as(ch, scn.split),
        (Mode::Fnoma, Policy::Aia) => selection::aia_as(ch, scn.split),
        (Mode::Fnoma, Policy::Random) => {
            let mut rng = trial_rng(scn.seed, trial, Stream::Selection);
            selection::random_as_with(ch, &mut rng, Allocation::Fixed(scn.split))
        }
        (Mode::Crnoma, Policy::Es) => selection::es_crnoma(ch, rho, r_th),
        (Mode::Crnoma, Policy::Mcg) => selection::mcg_as(ch, rho, r_th),
        (Mode::Crnoma, Policy::Pu) => selection::pu_as(ch, rho, r_th),
        (Mode::Crnoma, Policy::Su) => selection::su_as(ch, rho, r_th),
        (Mode::Crnoma, Policy::Random) => {
            let mut rng = trial_rng(scn.seed, trial, Stream::Selection);
            selection::random_as_with(ch, &mut rng, Allocation::Cognitive { rho, r_th })
        }
        (Mode::Oma, Policy::OmaEs) => selection::oma_es(ch),
        _ => unreachable!("policy `{policy}` in mode `{mode}` is rejected before any trial runs"),
    };
    let rates = match mode {
        Mode::Fnoma => rates::fnoma_pair_rates(sel.h, sel.g, sel.split, rho),
        Mode::Crnoma => rates::cr_rates(sel.h, sel.g, rho, r_th, CrMode::Exact),
        Mode::Oma => rates::oma_pair_rates(sel.h, sel.g, rho),
    };
    (sel, rates)
}

/// Runs several `(mode, policy)` arms on the same realizations (common
/// random numbers). `scn.mode` and `scn.policy` are ignored.
pub fn run_arms(scn: &Scenario, arms: &[(Mode, Policy)], workers: Option<usize>) -> Result<Vec<RateReport>> {
    for &(mode, policy) in arms {
        let mut probe = scn.clone();
        probe.mode = mode;
        probe.policy = policy;
        probe.validate()?;
    }
    let stats = monte_carlo(
        scn.trials,
        workers,
        || vec![Stats::default(); arms.len()],
        |acc, t| {
            let ch = sample_channels(&scn.fading, scn.seed, t);
            for (stats, &(mode, policy)) in acc.iter_mut().zip(arms) {
                let (sel, rates) = evaluate(scn, mode, policy, &ch, t);
                stats.push(&sel, rates);
            }
        },
        |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
    )?;
    Ok(stats.iter().map(Stats::report).collect())
}

/// Averages the scenario's policy over its trials using an explicit worker
/// count (`None` for automatic).
pub fn run_trials_with(scn: &Scenario, workers: Option<usize>) -> Result<RateReport> {
    scn.validate()?;
    Ok(run_arms(scn, &[(scn.mode, scn.policy)], workers)?[0])
}

/// Averages the scenario's policy over its trials; the worker count comes
/// from `NOMA_SIM_WORKERS`.
pub fn run_trials(scn: &Scenario) -> Result<RateReport> {
    run_trials_with(scn, workers_from_env()?)
}

/// One report per axis value. Every point reuses the base seed, so
/// neighbouring points see the same random numbers.
pub fn sweep(base: &Scenario, axis: Axis, values: &[f64], workers: Option<usize>) -> Result<Vec<(f64, RateReport)>> {
    if values.is_empty() {
        return Err(Error::config("sweep needs at least one value"));
    }
    let points = values.iter().map(|&v| axis.apply(base, v)).collect::<Result<Vec<_>>>()?;
    points.iter().zip(values).map(|(scn, &v)| Ok((v, run_trials_with(scn, workers)?))).collect()
}

/// Column names of [`report_table`] after the axis column.
pub const REPORT_COLUMNS: [&str; 10] = [
    "mean_r1",
    "mean_r2",
    "mean_sum",
    "mean_fairness",
    "se_r1",
    "se_r2",
    "se_sum",
    "se_fairness",
    "trials_used",
    "mean_eval_count",
];

/// Sweep results as a table, one row per axis value.
pub fn report_table(axis: Axis, rows: &[(f64, RateReport)]) -> Table {
    let mut columns = vec![axis.name().to_string()];
    columns.extend(REPORT_COLUMNS.iter().map(|c| c.to_string()));
    let mut table = Table::new(columns);
    for (v, r) in rows {
        table.push(vec![
            *v,
            r.mean_r1,
            r.mean_r2,
            r.mean_sum,
            r.mean_fairness,
            r.std_err.r1,
            r.std_err.r2,
            r.std_err.sum,
            r.std_err.fairness,
            r.trials_used as f64,
            r.mean_eval_count,
        ]);
    }
    table
}
