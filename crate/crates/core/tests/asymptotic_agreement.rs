use barbell_walk::asymptotics::{
    laplacian_baseline, resonant_probabilities, second_stage_probabilities,
    unweighted_probabilities, ScheduleConstants,
};
use barbell_walk::experiments::{run_single_stage, run_two_stage, sweep_weights, SwitchTime};
use barbell_walk::propagator::{find_first_peak, uniform_grid, Walk};
use barbell_walk::{Observable, Params, WalkKind};

fn max_gap(n: usize, w: f64, closed: impl Fn(f64) -> f64) -> f64 {
    let walk = Walk::new(Params::critical(n, w, WalkKind::Adjacency).unwrap()).unwrap();
    let traj = walk.from_state(&walk.initial_state());
    uniform_grid(5.0 * (n as f64).sqrt(), 2001)
        .map(|t| (traj.observable(Observable::MarkedVertex, t) - closed(t)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn closed_forms_approach_exact_evolution() {
    let mut previous = [f64::INFINITY; 2];
    for n in [4096usize, 16384] {
        let unweighted = max_gap(n, 1.0, |t| unweighted_probabilities(n, t)[0]);
        let resonant = max_gap(n, n as f64 / 2.0, |t| resonant_probabilities(n, t)[0]);
        assert!(
            unweighted <= 0.02 && resonant <= 0.02,
            "N={n}: {unweighted} {resonant}"
        );
        assert!(unweighted < previous[0] && resonant < previous[1]);
        previous = [unweighted, resonant];
    }
}

#[test]
fn closed_forms_at_n_1024() {
    let n = 1024;
    let unweighted = Walk::new(Params::critical(n, 1.0, WalkKind::Laplacian).unwrap()).unwrap();
    let p = unweighted
        .from_state(&unweighted.initial_state())
        .observable(Observable::MarkedVertex, 35.543);
    assert!((p - unweighted_probabilities(n, 35.543)[0]).abs() < 0.05);
    assert!(max_gap(n, 512.0, |t| resonant_probabilities(n, t)[0]) < 0.02);
}

#[test]
fn second_stage_closed_form_tracks_two_stage_run() {
    let n = 4096;
    let r = run_two_stage::<f64>(n, 1.0, SwitchTime::Analytic, 201).unwrap();
    for i in r.seam_index..r.series.len() {
        let dt = r.series.times[i] - r.switch_time;
        let closed = second_stage_probabilities(n, dt)[0];
        assert!((r.series.aggregate[0][i] - closed).abs() < 0.02);
    }
}

#[test]
fn two_stage_success_is_n_independent() {
    let peaks: Vec<f64> = [1024usize, 2048, 4096]
        .iter()
        .map(|&n| {
            run_two_stage::<f64>(n, 1.0, SwitchTime::Analytic, 16)
                .unwrap()
                .final_peak
                .p_star
        })
        .collect();
    for p in &peaks {
        assert!((p - 0.996).abs() < 0.005);
        for q in &peaks {
            assert!((p - q).abs() < 0.005);
        }
    }
}

#[test]
fn numeric_switch_matches_analytic_schedule() {
    for n in [1024usize, 4096] {
        let a = run_two_stage::<f64>(n, 1.0, SwitchTime::Analytic, 16).unwrap();
        let b = run_two_stage::<f64>(n, 1.0, SwitchTime::NumericCliquePeak, 16).unwrap();
        assert!((a.final_peak.p_star - b.final_peak.p_star).abs() < 0.003);
        assert!((a.switch_time - b.switch_time).abs() / a.switch_time < 0.01);
    }
}

#[test]
fn resonant_single_stage_is_n_independent() {
    let k = ScheduleConstants::<f64>::compute();
    for n in [1024usize, 2048, 4096] {
        let params = Params::critical(n, n as f64 / 2.0, WalkKind::Adjacency).unwrap();
        let peak =
            find_first_peak(&params, Observable::MarkedVertex, 6.0 * (n as f64).sqrt()).unwrap();
        assert!((peak.p_star - 0.820).abs() < 0.005);
        let expected = k.single_peak_x * (n as f64).sqrt();
        assert!(
            (peak.t_star - expected).abs() / expected < 0.01,
            "N={n}: {}",
            peak.t_star
        );
    }
    let n = 2048;
    let (_, peak) = run_single_stage(
        &Params::critical(n, 1024.0, WalkKind::Adjacency).unwrap(),
        200.0,
        3,
    )
    .unwrap();
    assert!((peak.t_star - 114.0).abs() < 0.7);
}

#[test]
fn off_resonance_matches_unweighted_baseline() {
    let n = 4096;
    let base = laplacian_baseline::<f64>(n);
    let nf = n as f64;
    let mut cases: Vec<(WalkKind, f64)> = [1.0, nf / 4.0, 2.0 * nf]
        .iter()
        .map(|&w| (WalkKind::Adjacency, w))
        .collect();
    cases.extend(
        [1.0, 256.0, nf / 2.0, nf, 2.0 * nf]
            .iter()
            .map(|&w| (WalkKind::Laplacian, w)),
    );
    for (kind, w) in cases {
        let params = Params::critical(n, w, kind).unwrap();
        let peak = find_first_peak(&params, Observable::MarkedVertex, 6.0 * nf.sqrt()).unwrap();
        assert!(
            (peak.t_star - base.t_star).abs() / base.t_star < 0.02
                && (peak.p_star - base.p_star).abs() < 0.02,
            "{kind:?} w={w}: {peak:?}"
        );
    }
}

#[test]
fn laplacian_sweep_is_flat() {
    let sweep = sweep_weights::<f64>(
        1024,
        WalkKind::Laplacian,
        &[1.0, 256.0, 512.0, 768.0, 1024.0, 2048.0],
        2,
    )
    .unwrap();
    let heights: Vec<f64> = sweep.rows.iter().map(|r| r.peak.p_star).collect();
    for a in &heights {
        for b in &heights {
            assert!((a - b).abs() < 0.02);
        }
    }
}

#[test]
fn resonant_row_tops_the_sweep() {
    let weights = [
        430.0, 460.0, 477.0, 484.0, 498.0, 512.0, 522.0, 532.0, 562.0, 710.0,
    ];
    let sweep = sweep_weights::<f64>(1024, WalkKind::Adjacency, &weights, 2).unwrap();
    let best = sweep
        .rows
        .iter()
        .max_by(|a, b| a.peak.p_star.partial_cmp(&b.peak.p_star).unwrap())
        .unwrap();
    assert_eq!(best.w, 512.0);
}

#[test]
fn resonant_runtime_exceeds_unweighted_expected_runtime() {
    let k = ScheduleConstants::<f64>::compute();
    let base = laplacian_baseline::<f64>(1);
    assert!(k.single_peak_x > base.expected_total);
}
