//! Drivers: single-stage runs, weight sweeps, the two-stage algorithm and the
//! full-space cross-check.

use rayon::prelude::*;

use crate::asymptotics::{laplacian_baseline, two_stage_schedule, TwoStageSchedule};
use crate::error::{Error, Result};
use crate::graph_model::{
    build_fullspace_hamiltonian, BarbellParams, FullSpaceLayout, WalkKind, SUBSPACE_DIM,
};
use crate::propagator::{
    eigendecompose, uniform_grid, EigenSystem, Observable, PeakResult, TimeSeries, Walk,
};
use crate::scalar::{real, Cplx, Real};

/// Default full-space size cap for [`oracle_crosscheck`] callers.
pub const DEFAULT_FULLSPACE_CAP: usize = 1024;
/// Sweep peak window in units of `√N`.
pub const SWEEP_WINDOW_X: f64 = 6.0;
/// A second local maximum counts as the resonant transfer peak only before
/// this multiple of the unweighted peak time; later maxima are ordinary
/// revivals.
pub const SECOND_MAX_CUTOFF: f64 = 2.5;
/// Default stage-two bridge weight.
pub const DEFAULT_STAGE2_WEIGHT: f64 = 1.0;

/// Exact subspace run from the uniform start: the sampled series and the
/// first marked-vertex peak in `(0, t_max]`.
pub fn run_single_stage<T: Real>(
    params: &BarbellParams<T>,
    t_max: T,
    n_samples: usize,
) -> Result<(TimeSeries<T>, PeakResult<T>)> {
    let walk = Walk::new(*params)?;
    let traj = walk.from_state(&walk.initial_state());
    let series = traj.series(t_max, n_samples)?;
    let peak = traj.first_peak(Observable::MarkedVertex, t_max)?;
    Ok((series, peak))
}

/// How the two-stage algorithm picks its switching time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchTime<T> {
    /// `t' = 3.265√N` from the clique-peak equation.
    Analytic,
    /// The first dominant marked-clique peak of the exact resonant run.
    NumericCliquePeak,
    Override(T),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoStageResult<T> {
    pub switch_time: T,
    /// Stage one on `[0, t']` followed by stage two on `[t', t' + window]`.
    /// The sample at `t'` appears twice: last of stage one, first of stage
    /// two.
    pub series: TimeSeries<T>,
    /// Index of the first stage-two sample.
    pub seam_index: usize,
    /// Marked-vertex peak during stage two, in absolute time.
    pub final_peak: PeakResult<T>,
    pub schedule: TwoStageSchedule<T>,
}

/// Resonant evolution up to the switch, then evolution of the carried state
/// under an adjacency walk with bridge weight `stage2_weight`.
pub fn run_two_stage<T: Real>(
    n: usize,
    stage2_weight: T,
    switch: SwitchTime<T>,
    samples_per_stage: usize,
) -> Result<TwoStageResult<T>> {
    let schedule = two_stage_schedule::<T>(n);
    let stage1 = Walk::new(BarbellParams::critical(
        n,
        T::from_count(n) / T::lit(2.0),
        WalkKind::Adjacency,
    )?)?;
    let stage2 = Walk::new(BarbellParams::critical(
        n,
        stage2_weight,
        WalkKind::Adjacency,
    )?)?;
    let first = stage1.from_state(&stage1.initial_state());

    let switch_time = match switch {
        SwitchTime::Analytic => schedule.switch_time,
        SwitchTime::NumericCliquePeak => {
            first
                .first_peak(Observable::MarkedClique, schedule.switch_time * T::lit(1.5))?
                .t_star
        }
        SwitchTime::Override(t) => {
            if !(t > T::zero() && t.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "switch time must be positive, got {t}"
                )));
            }
            t
        }
    };

    let mut series = first.series(switch_time, samples_per_stage)?;
    let seam_index = series.len();
    let boundary = first.state(switch_time);
    let second = stage2.from_state(&boundary);
    let window = schedule.second_stage_time * T::lit(2.0);
    series.extend_shifted(&second.series(window, samples_per_stage)?, switch_time);

    let peak = second.first_peak(Observable::MarkedVertex, window)?;
    Ok(TwoStageResult {
        switch_time,
        series,
        seam_index,
        final_peak: PeakResult {
            t_star: peak.t_star + switch_time,
            ..peak
        },
        schedule,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub w: T,
    /// First dominant marked-vertex peak.
    pub peak: PeakResult<T>,
    /// Every refined local maximum of `p_a` in the window.
    pub maxima: Vec<PeakResult<T>>,
    /// Index into [`Sweep::curves`].
    pub curve_id: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep<T> {
    pub n: usize,
    pub kind: WalkKind,
    pub t_max: T,
    /// Rows sorted by weight.
    pub rows: Vec<SweepRow<T>>,
    pub curves: Vec<TimeSeries<T>>,
}

impl<T: Real> Sweep<T> {
    pub fn curve(&self, row: &SweepRow<T>) -> &TimeSeries<T> {
        &self.curves[row.curve_id]
    }
}

type SweepRun<T> = (T, PeakResult<T>, Vec<PeakResult<T>>, TimeSeries<T>);

/// One run per weight over `t_max = 6√N`, executed in parallel and returned
/// in increasing `w`.
pub fn sweep_weights<T: Real>(
    n: usize,
    kind: WalkKind,
    weights: &[T],
    n_samples: usize,
) -> Result<Sweep<T>> {
    if weights.is_empty() {
        return Err(Error::InvalidArgument("weight list is empty".into()));
    }
    let t_max = T::lit(SWEEP_WINDOW_X) * T::from_count(n).sqrt();
    let mut order: Vec<T> = weights.to_vec();
    order.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));

    let runs: Vec<Result<SweepRun<T>>> = order
        .par_iter()
        .map(|&w| {
            let walk = Walk::new(BarbellParams::critical(n, w, kind)?)?;
            let traj = walk.from_state(&walk.initial_state());
            let maxima = traj.local_maxima(Observable::MarkedVertex, t_max)?;
            let peak = crate::propagator::select_dominant(&maxima)
                .ok_or(Error::NoPeakFound(t_max.as_f64()))?;
            Ok((w, peak, maxima, traj.series(t_max, n_samples)?))
        })
        .collect();

    let mut rows = Vec::with_capacity(runs.len());
    let mut curves = Vec::with_capacity(runs.len());
    for (curve_id, run) in runs.into_iter().enumerate() {
        let (w, peak, maxima, series) = run?;
        rows.push(SweepRow {
            w,
            peak,
            maxima,
            curve_id,
        });
        curves.push(series);
    }
    Ok(Sweep {
        n,
        kind,
        t_max,
        rows,
        curves,
    })
}

/// The second local maximum of `p_a` if it comes before
/// `2.5 × π√N/(2√2)`; near resonance this is the inter-clique transfer peak,
/// away from it the maximum is absent.
pub fn resonant_second_maximum<T: Real>(row: &SweepRow<T>, n: usize) -> Option<PeakResult<T>> {
    let cutoff = T::lit(SECOND_MAX_CUTOFF) * laplacian_baseline::<T>(n).t_star;
    row.maxima.get(1).copied().filter(|p| p.t_star < cutoff)
}

/// Exact evolution on the explicit `N`-vertex graph.
#[derive(Debug, Clone)]
pub struct FullSpaceWalk<T> {
    layout: FullSpaceLayout,
    eigen: EigenSystem<T>,
    coeffs: Vec<Cplx<T>>,
}

impl<T: Real> FullSpaceWalk<T> {
    /// Uniform initial state, marked vertex `marked`, subject to `cap`.
    pub fn new(params: &BarbellParams<T>, marked: usize, cap: usize) -> Result<Self> {
        if params.n() > cap {
            return Err(Error::CapExceeded { n: params.n(), cap });
        }
        let h = build_fullspace_hamiltonian(params, marked)?;
        let layout = FullSpaceLayout::new(params.n(), marked)?;
        let eigen = eigendecompose(&h)?;
        let amp = real(T::one() / T::from_count(params.n()).sqrt());
        let coeffs = eigen.coefficients(&vec![amp; params.n()])?;
        Ok(Self {
            layout,
            eigen,
            coeffs,
        })
    }

    pub fn layout(&self) -> &FullSpaceLayout {
        &self.layout
    }

    pub fn state(&self, t: T) -> Vec<Cplx<T>> {
        self.eigen.evolve_coefficients(&self.coeffs, t)
    }

    pub fn aggregate_probabilities(&self, t: T) -> [T; SUBSPACE_DIM] {
        self.layout.aggregate_probabilities(&self.state(t))
    }
}

/// Largest per-type probability gap between full-space and subspace
/// evolution over `n_times` uniform samples on `[0, 5√N]`.
pub fn oracle_crosscheck<T: Real>(
    n: usize,
    w: T,
    kind: WalkKind,
    n_times: usize,
    cap: usize,
) -> Result<T> {
    let params = BarbellParams::critical(n, w, kind)?;
    let full = FullSpaceWalk::new(&params, 0, cap)?;
    let walk = Walk::new(params)?;
    let sub = walk.from_state(&walk.initial_state());
    let t_max = T::lit(5.0) * T::from_count(n).sqrt();
    let mut worst = T::zero();
    for t in uniform_grid(t_max, n_times.max(2)) {
        let a = full.aggregate_probabilities(t);
        let b = sub.probabilities(t).aggregate;
        for (x, y) in a.iter().zip(&b) {
            worst = worst.max((*x - *y).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonant_single_stage_peak() {
        let params = BarbellParams::<f64>::critical(1024, 512.0, WalkKind::Adjacency).unwrap();
        let (series, peak) = run_single_stage(&params, 160.0, 401).unwrap();
        assert_eq!(series.len(), 401);
        assert!((peak.t_star - 80.6).abs() < 0.5, "{peak:?}");
        assert!((peak.p_star - 0.820).abs() < 0.005);
    }

    #[test]
    fn two_stage_seam_and_peak() {
        let r = run_two_stage::<f64>(1024, 1.0, SwitchTime::Analytic, 200).unwrap();
        let before = r.series.row(r.seam_index - 1);
        let after = r.series.row(r.seam_index);
        assert_eq!(
            r.series.times[r.seam_index - 1],
            r.series.times[r.seam_index]
        );
        for k in 0..SUBSPACE_DIM {
            assert!((before.aggregate[k] - after.aggregate[k]).abs() < 1e-12);
        }
        assert!(
            (r.final_peak.t_star - 147.5).abs() < 1.0,
            "{:?}",
            r.final_peak
        );
        assert!((r.final_peak.p_star - 0.996).abs() < 0.003);
    }

    #[test]
    fn numeric_switch_is_close_to_analytic() {
        let r = run_two_stage::<f64>(1024, 1.0, SwitchTime::NumericCliquePeak, 50).unwrap();
        assert!((r.switch_time - 104.4).abs() < 0.7, "{}", r.switch_time);
        assert!(matches!(
            run_two_stage::<f64>(1024, 1.0, SwitchTime::Override(-1.0), 50),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sweep_is_sorted() {
        let sweep = sweep_weights::<f64>(64, WalkKind::Adjacency, &[40.0, 1.0, 32.0], 20).unwrap();
        let ws: Vec<f64> = sweep.rows.iter().map(|r| r.w).collect();
        assert_eq!(ws, [1.0, 32.0, 40.0]);
        assert_eq!(sweep.curve(&sweep.rows[2]).len(), 20);
        assert!(sweep_weights::<f64>(64, WalkKind::Adjacency, &[], 20).is_err());
    }

    #[test]
    fn crosscheck_small() {
        assert!(oracle_crosscheck::<f64>(64, 32.0, WalkKind::Adjacency, 20, 1024).unwrap() < 1e-8);
        assert!(matches!(
            oracle_crosscheck::<f64>(2048, 1.0, WalkKind::Laplacian, 2, 1024),
            Err(Error::CapExceeded { n: 2048, cap: 1024 })
        ));
    }
}
