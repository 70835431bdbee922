//! Sweep tables behind figures 1 to 8.
//!
//! | id | y-axis              | x-axis | fixed parameters                        |
//! |----|---------------------|--------|-----------------------------------------|
//! | 1  | F-NOMA sum rate     | ps_dbm | N=2, d1=80, d2=200, b=0.4               |
//! | 2  | F-NOMA sum rate     | n_bs   | d1=80, d2=200, b=0.4, 10 dBm            |
//! | 3  | F-NOMA sum rate     | d2     | N=2, d1=80, b=0.4, 10 dBm               |
//! | 4  | F-NOMA sum rate     | b      | N=2, d1=80, d2=200, 10 dBm              |
//! | 5  | Jain fairness       | b      | N=4, d1=80, d2=200, 20 dBm              |
//! | 6  | CR secondary rate   | d1     | N=4, d2=200, R_th=5, 20 dBm             |
//! | 7  | CR secondary rate   | ps_dbm | N=4, d2=200, R_th=5, d1 in {80, 300}    |
//! | 8  | CR secondary rate   | n_bs   | d2=200, R_th=5, 20 dBm, d1 in {80, 300} |
//!
//! All figures use M=K=2, α=3 and a -110 dBm noise floor. Every sweep point
//! reuses the same seed, and all curves of a point share realizations.

use crate::analytics::{self, AnalyticConfig};
use crate::error::{Error, Result};

use super::run::run_arms;
use super::scenario::{Axis, Mode, Policy, Scenario};
use super::table::Table;

/// Figure ids accepted by [`reproduce_figure`].
pub const FIGURE_IDS: std::ops::RangeInclusive<u8> = 1..=8;

/// Secondary-user distances of the two curve families in figures 7 and 8.
pub const CR_D1_CASES: [f64; 2] = [80.0, 300.0];

fn grid(start: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| start + step * i as f64).collect()
}

/// The x-axis and its grid for a figure.
pub fn figure_axis(id: u8) -> Result<(Axis, Vec<f64>)> {
    Ok(match id {
        1 | 7 => (Axis::PsDbm, grid(0.0, 5.0, 9)),
        2 | 8 => (Axis::NBs, grid(1.0, 1.0, 8)),
        3 => (Axis::D2, grid(50.0, 50.0, 8)),
        // b = 0.5 would give both users equal power, which F-NOMA excludes.
        4 | 5 => (Axis::B, (0..8).map(|i| (10 + 5 * i) as f64 / 100.0).collect()),
        6 => (Axis::D1, vec![50.0, 80.0, 100.0, 150.0, 200.0, 250.0, 300.0, 350.0, 400.0]),
        _ => return Err(Error::config(format!("figure id must be 1..=8, got {id}"))),
    })
}

/// Scenario shared by every point of a figure, before the axis is applied.
pub fn figure_base(id: u8, trials: u64, seed: u64) -> Result<Scenario> {
    figure_axis(id)?;
    let mut scn = Scenario { trials, seed, ..Scenario::default() };
    let f = &mut scn.fading;
    f.m_ue1 = 2;
    f.k_ue2 = 2;
    f.d1 = 80.0;
    f.d2 = 200.0;
    f.alpha = 3.0;
    f.sigma2_dbm = -110.0;
    match id {
        1 => f.n_bs = 2,
        2..=4 => {
            f.n_bs = 2;
            f.ps_dbm = 10.0;
        }
        5 => {
            f.n_bs = 4;
            f.ps_dbm = 20.0;
        }
        _ => {
            f.n_bs = 4;
            f.ps_dbm = 20.0;
            scn.mode = Mode::Crnoma;
            scn.policy = Policy::Mcg;
            scn.r_th = 5.0;
        }
    }
    Ok(scn)
}

const FNOMA_ARMS: [(Mode, Policy); 5] = [
    (Mode::Fnoma, Policy::Es),
    (Mode::Fnoma, Policy::A3),
    (Mode::Fnoma, Policy::Aia),
    (Mode::Fnoma, Policy::Random),
    (Mode::Oma, Policy::OmaEs),
];

const CR_ARMS: [(Mode, Policy); 5] = [
    (Mode::Crnoma, Policy::Es),
    (Mode::Crnoma, Policy::Mcg),
    (Mode::Crnoma, Policy::Pu),
    (Mode::Crnoma, Policy::Su),
    (Mode::Crnoma, Policy::Random),
];

fn columns(axis: Axis, names: &[&str]) -> Vec<String> {
    std::iter::once(axis.name().to_string()).chain(names.iter().map(|s| s.to_string())).collect()
}

fn sum_rate_figure(axis: Axis, values: &[f64], base: &Scenario, workers: Option<usize>) -> Result<Table> {
    let mut table = Table::new(columns(
        axis,
        &["fnoma_es", "a3_sim", "a3_analytic", "aia_sim", "aia_analytic", "fnoma_ra", "oma_es"],
    ));
    for &v in values {
        let scn = axis.apply(base, v)?;
        let r = run_arms(&scn, &FNOMA_ARMS, workers)?;
        let cfg = AnalyticConfig::from_fading(&scn.fading, scn.split.b(), scn.r_th)?;
        let a3 = analytics::prop1_avg_sum_rate(&cfg)?.value;
        let aia = analytics::prop2_avg_sum_rate(&cfg)?.value;
        table.push(vec![v, r[0].mean_sum, r[1].mean_sum, a3, r[2].mean_sum, aia, r[3].mean_sum, r[4].mean_sum]);
    }
    Ok(table)
}

fn fairness_figure(axis: Axis, values: &[f64], base: &Scenario, workers: Option<usize>) -> Result<Table> {
    let mut table = Table::new(columns(axis, &["fnoma_es", "a3", "aia", "fnoma_ra", "oma_es", "a3_se", "aia_se"]));
    for &v in values {
        let scn = axis.apply(base, v)?;
        let r = run_arms(&scn, &FNOMA_ARMS, workers)?;
        table.push(vec![
            v,
            r[0].mean_fairness,
            r[1].mean_fairness,
            r[2].mean_fairness,
            r[3].mean_fairness,
            r[4].mean_fairness,
            r[1].std_err.fairness,
            r[2].std_err.fairness,
        ]);
    }
    Ok(table)
}

const CR_COLUMNS: [&str; 8] =
    ["cr_es", "mcg_sim", "mcg_analytic", "pu_sim", "pu_analytic", "su_sim", "su_analytic", "cr_ra"];

fn cr_point(scn: &Scenario, workers: Option<usize>) -> Result<Vec<f64>> {
    let r = run_arms(scn, &CR_ARMS, workers)?;
    let cfg = AnalyticConfig::from_fading(&scn.fading, scn.split.b(), scn.r_th)?;
    Ok(vec![
        r[0].mean_r1,
        r[1].mean_r1,
        analytics::mcg_avg_secondary_rate(&cfg)?.value,
        r[2].mean_r1,
        analytics::pu_avg_secondary_rate(&cfg)?.value,
        r[3].mean_r1,
        analytics::su_avg_secondary_rate(&cfg)?.value,
        r[4].mean_r1,
    ])
}

fn cr_figure(axis: Axis, values: &[f64], base: &Scenario, d1_cases: &[f64], workers: Option<usize>) -> Result<Table> {
    let names: Vec<String> = if d1_cases.is_empty() {
        CR_COLUMNS.iter().map(|s| s.to_string()).collect()
    } else {
        d1_cases.iter().flat_map(|d| CR_COLUMNS.iter().map(move |c| format!("{c}_d1_{d}"))).collect()
    };
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut table = Table::new(columns(axis, &names));
    for &v in values {
        let scn = axis.apply(base, v)?;
        let mut row = vec![v];
        if d1_cases.is_empty() {
            row.extend(cr_point(&scn, workers)?);
        }
        for &d1 in d1_cases {
            let mut s = scn.clone();
            s.fading.d1 = d1;
            row.extend(cr_point(&s, workers)?);
        }
        table.push(row);
    }
    Ok(table)
}

/// Computes the full table of figure `id`.
pub fn reproduce_figure(id: u8, trials: u64, seed: u64, workers: Option<usize>) -> Result<Table> {
    let (axis, values) = figure_axis(id)?;
    let base = figure_base(id, trials, seed)?;
    match id {
        1..=4 => sum_rate_figure(axis, &values, &base, workers),
        5 => fairness_figure(axis, &values, &base, workers),
        6 => cr_figure(axis, &values, &base, &[], workers),
        _ => cr_figure(axis, &values, &base, &CR_D1_CASES, workers),
    }
}
