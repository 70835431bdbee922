use noma_core::channel::sample_channels;
use noma_core::harness::figures::{figure_axis, figure_base, CR_D1_CASES};
use noma_core::harness::{self, evaluate, run_arms, run_trials_with, Axis, Mode, Policy, Scenario, Table};

fn small(mode: Mode, policy: Policy, trials: u64) -> Scenario {
    Scenario { mode, policy, trials, seed: 9, ..Scenario::default() }
}

#[test]
fn standard_error_shrinks_with_root_trials() {
    let a = run_trials_with(&small(Mode::Fnoma, Policy::Aia, 20_000), None).unwrap();
    let b = run_trials_with(&small(Mode::Fnoma, Policy::Aia, 80_000), None).unwrap();
    let ratio = a.std_err.sum / b.std_err.sum;
    assert!((ratio - 2.0).abs() < 0.1, "ratio {ratio}");
    assert_eq!(b.trials_used, 80_000);
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let scn = small(Mode::Crnoma, Policy::Mcg, 5_000);
    let one = run_trials_with(&scn, Some(1)).unwrap();
    for workers in [Some(2), Some(3), Some(8), None] {
        assert_eq!(run_trials_with(&scn, workers).unwrap(), one);
    }
}

#[test]
fn single_trial_matches_direct_evaluation() {
    for (mode, policy) in [
        (Mode::Fnoma, Policy::Es),
        (Mode::Fnoma, Policy::Random),
        (Mode::Crnoma, Policy::Su),
        (Mode::Crnoma, Policy::Random),
        (Mode::Oma, Policy::OmaEs),
    ] {
        let scn = small(mode, policy, 1);
        let report = run_trials_with(&scn, None).unwrap();
        let ch = sample_channels(&scn.fading, scn.seed, 0);
        let (sel, rates) = evaluate(&scn, mode, policy, &ch, 0);
        assert_eq!(report.mean_r1, rates.r1);
        assert_eq!(report.mean_r2, rates.r2);
        assert_eq!(report.mean_eval_count, sel.eval_count as f64);
        assert_eq!(report.std_err.r1, 0.0);
    }
}

#[test]
fn sum_rate_figures_keep_their_ordering() {
    let arms = [
        (Mode::Fnoma, Policy::Es),
        (Mode::Fnoma, Policy::A3),
        (Mode::Fnoma, Policy::Aia),
        (Mode::Fnoma, Policy::Random),
    ];
    for id in 1..=3 {
        let (axis, values) = figure_axis(id).unwrap();
        let base = figure_base(id, 2_000, 3).unwrap();
        for v in values {
            let scn = axis.apply(&base, v).unwrap();
            let r = run_arms(&scn, &arms, None).unwrap();
            let (es, a3, aia, ra) = (r[0].mean_sum, r[1].mean_sum, r[2].mean_sum, r[3].mean_sum);
            assert!(es >= a3 && a3 >= ra, "figure {id} at {v}: {es} {a3} {ra}");
            assert!(es >= aia && aia >= ra, "figure {id} at {v}: {es} {aia} {ra}");
        }
    }
}

#[test]
fn cognitive_figures_keep_their_ordering() {
    let arms = [
        (Mode::Crnoma, Policy::Es),
        (Mode::Crnoma, Policy::Mcg),
        (Mode::Crnoma, Policy::Pu),
        (Mode::Crnoma, Policy::Su),
        (Mode::Crnoma, Policy::Random),
    ];
    for id in 6..=8 {
        let (axis, values) = figure_axis(id).unwrap();
        let base = figure_base(id, 2_000, 3).unwrap();
        let families: &[f64] = if id == 6 { &[f64::NAN] } else { &CR_D1_CASES };
        for &d1 in families {
            for &v in &values {
                let mut scn = axis.apply(&base, v).unwrap();
                if !d1.is_nan() {
                    scn = Axis::D1.apply(&scn, d1).unwrap();
                }
                let r = run_arms(&scn, &arms, None).unwrap();
                let (es, mcg, pu, su, ra) = (r[0].mean_r1, r[1].mean_r1, r[2].mean_r1, r[3].mean_r1, r[4].mean_r1);
                let slack = 2.0 * r[2].std_err.r1.max(r[3].std_err.r1);
                let at = format!("figure {id}, d1 {d1}, x {v}");
                assert!(es >= mcg, "{at}");
                assert!(mcg >= pu.max(su) - slack, "{at}: mcg {mcg}, pu {pu}, su {su}");
                for other in [mcg, pu, su] {
                    assert!(other >= ra, "{at}");
                }
            }
        }
    }
}

#[test]
fn sum_rate_grows_with_power() {
    let base = small(Mode::Fnoma, Policy::A3, 2_000);
    let rows = harness::sweep(&base, Axis::PsDbm, &[0.0, 10.0, 20.0, 30.0, 40.0], None).unwrap();
    for pair in rows.windows(2) {
        assert!(pair[1].1.mean_sum > pair[0].1.mean_sum);
    }
    let table = harness::report_table(Axis::PsDbm, &rows);
    assert_eq!(table.column("ps_dbm").unwrap(), vec![0.0, 10.0, 20.0, 30.0, 40.0]);
    assert_eq!(Table::from_csv(&table.to_csv()).unwrap(), table);
}

#[test]
fn scenario_text_round_trips() {
    let mut scn = small(Mode::Crnoma, Policy::Pu, 1234);
    scn.fading.ps_dbm = -7.25;
    scn.fading.d1 = 123.456;
    scn.r_th = 2.5;
    assert_eq!(Scenario::parse(&scn.to_text()).unwrap(), scn);
}

#[test]
fn figures_are_reproducible() {
    let a = harness::reproduce_figure(4, 200, 17, Some(2)).unwrap();
    let b = harness::reproduce_figure(4, 200, 17, Some(5)).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    let c = harness::reproduce_figure(4, 200, 18, Some(2)).unwrap();
    assert_ne!(a.to_csv(), c.to_csv());
}
