//! Large-`N` closed forms for the success probability, the transcendental
//! peak equations, and the analytic two-stage schedule.
//!
//! Times are measured in units of `√N` wherever a constant is dimensionless;
//! `x = t/√N`.

use crate::graph_model::{SubspaceState, SUBSPACE_DIM};
use crate::roots::find_roots;
use crate::scalar::{cplx, real, Cplx, Real};

/// Root search window on `x`.
pub const ROOT_WINDOW: (f64, f64) = (0.0, 8.0);
/// Bracketing grid step.
pub const ROOT_STEP: f64 = 1e-3;
/// Bisection bracket width.
pub const ROOT_TOL: f64 = 1e-12;

fn sqrt_n<T: Real>(n: usize) -> T {
    T::from_count(n).sqrt()
}

/// `(√(2+√2), √(2-√2))`
fn resonant_rates<T: Real>() -> (T, T) {
    let two = T::lit(2.0);
    let r2 = two.sqrt();
    ((two + r2).sqrt(), (two - r2).sqrt())
}

/// Aggregate type probabilities `(p_a, p_b, p_c, p_d, p_e)` of the
/// unweighted (small-weight) walk at the critical rate.
pub fn unweighted_probabilities<T: Real>(n: usize, t: T) -> [T; SUBSPACE_DIM] {
    let half = T::lit(0.5);
    let arg = (T::lit(2.0) / T::from_count(n)).sqrt() * t;
    let (s, c) = arg.sin_cos();
    [half * s * s, half * c * c, T::zero(), T::zero(), half]
}

/// Resonant amplitudes on `(|a>, |b>, |cd>, |e>)` as functions of `x = t/√N`.
fn resonant_scaled_amplitudes<T: Real>(x: T) -> [Cplx<T>; 4] {
    let (sp, sm) = resonant_rates::<T>();
    let r2 = T::lit(2.0).sqrt();
    let pre = T::one() / (T::lit(2.0) * r2);
    let (sin_p, cos_p) = (sp * x).sin_cos();
    let (sin_m, cos_m) = (sm * x).sin_cos();
    [
        cplx(T::zero(), pre * (sp * sin_p - sm * sin_m)),
        real(pre * ((T::one() + r2) * cos_p + (T::one() - r2) * cos_m)),
        cplx(T::zero(), pre * (sp * sin_p + sm * sin_m)),
        real(pre * (cos_p + cos_m)),
    ]
}

/// Resonant (`w = N/2`, `γ = 2/N`) amplitudes on `(|a>, |b>, |cd>, |e>)`
/// with the global phase `e^{it}` removed.
pub fn resonant_amplitudes<T: Real>(n: usize, t: T) -> [Cplx<T>; 4] {
    resonant_scaled_amplitudes(t / sqrt_n(n))
}

fn split_cd<T: Real>(amps: [Cplx<T>; 4]) -> [Cplx<T>; SUBSPACE_DIM] {
    let cd = amps[2] / T::lit(2.0).sqrt();
    [amps[0], amps[1], cd, cd, amps[3]]
}

fn scaled_probabilities<T: Real>(x: T) -> [T; SUBSPACE_DIM] {
    split_cd(resonant_scaled_amplitudes(x)).map(|z| z.norm_sqr())
}

/// Aggregate type probabilities of the resonant walk.
pub fn resonant_probabilities<T: Real>(n: usize, t: T) -> [T; SUBSPACE_DIM] {
    scaled_probabilities(t / sqrt_n(n))
}

/// One root of a peak equation with the probability it selects on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakConstant<T> {
    pub x: T,
    pub probability: T,
    pub residual: T,
}

fn best_root<T: Real>(f: impl Fn(T) -> T, lo: T, score: impl Fn(T) -> T) -> PeakConstant<T> {
    let roots = find_roots(
        &f,
        lo,
        T::lit(ROOT_WINDOW.1),
        T::lit(ROOT_STEP),
        T::lit(ROOT_TOL),
    );
    roots
        .into_iter()
        .map(|x| PeakConstant {
            x,
            probability: score(x),
            residual: f(x).abs(),
        })
        .fold(None, |best: Option<PeakConstant<T>>, c| match best {
            Some(b) if b.probability >= c.probability => Some(b),
            _ => Some(c),
        })
        .expect("peak equation has roots on the search window")
}

/// `(2-√2)cos(√(2-√2)x) - (2+√2)cos(√(2+√2)x)`
pub fn single_peak_equation<T: Real>(x: T) -> T {
    let (sp, sm) = resonant_rates::<T>();
    let two = T::lit(2.0);
    let r2 = two.sqrt();
    (two - r2) * (sm * x).cos() - (two + r2) * (sp * x).cos()
}

/// `√(2-√2)sin(√(2-√2)x) + √(2+√2)sin(√(2+√2)x)`
pub fn clique_peak_equation<T: Real>(x: T) -> T {
    let (sp, sm) = resonant_rates::<T>();
    sm * (sm * x).sin() + sp * (sp * x).sin()
}

/// Root of the single-peak equation on `(0, 8]` maximizing `p_a`.
pub fn single_peak_root<T: Real>() -> PeakConstant<T> {
    best_root(single_peak_equation, T::lit(ROOT_STEP), |x| {
        scaled_probabilities(x)[0]
    })
}

/// Root of the clique-peak equation on `(0, 8]` maximizing
/// `p_a + p_b + p_c`. The trivial root at `x = 0` is excluded.
pub fn clique_peak_root<T: Real>() -> PeakConstant<T> {
    best_root(clique_peak_equation, T::lit(ROOT_STEP), |x| {
        let p = scaled_probabilities(x);
        p[0] + p[1] + p[2]
    })
}

/// Resonant single-run peak time in units of `√N` (≈ 2.518).
pub fn solve_single_peak_constant<T: Real>() -> T {
    single_peak_root::<T>().x
}

/// Resonant clique-probability peak time in units of `√N` (≈ 3.265).
pub fn solve_clique_peak_constant<T: Real>() -> T {
    clique_peak_root::<T>().x
}

/// The state at the end of the resonant stage. In the large-`N` form it does
/// not depend on `N`.
pub fn stage_boundary_state<T: Real>(_n: usize) -> SubspaceState<T> {
    resonant_boundary(solve_clique_peak_constant::<T>())
}

fn resonant_boundary<T: Real>(x: T) -> SubspaceState<T> {
    SubspaceState::from_raw(split_cd(resonant_scaled_amplitudes(x)))
}

/// Coefficients of a state on the small-weight eigenvectors
/// `(|a>+|b>)/√2`, `(-|a>+|b>)/√2` and `|e>`.
pub fn eigenbasis_coefficients<T: Real>(state: &SubspaceState<T>) -> [Cplx<T>; 3] {
    let r = T::one() / T::lit(2.0).sqrt();
    let a = state.amplitude(crate::basis::A);
    let b = state.amplitude(crate::basis::B);
    [(a + b) * r, (b - a) * r, state.amplitude(crate::basis::E)]
}

/// Constants of the resonant single run and the two-stage algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleConstants<T> {
    /// Single-run peak time over `√N`.
    pub single_peak_x: T,
    /// Clique-probability peak time over `√N`.
    pub clique_peak_x: T,
    /// Second-stage duration over `√N`.
    pub second_stage_x: T,
    /// Total two-stage time over `√N`.
    pub total_x: T,
    /// Single-run success probability.
    pub single_peak_p: T,
    /// Two-stage success probability (clique probability at the switch).
    pub two_stage_p: T,
    /// Phase of the second-stage oscillation.
    pub boundary_phase: T,
}

impl<T: Real> ScheduleConstants<T> {
    pub fn compute() -> Self {
        let single = single_peak_root::<T>();
        let clique = clique_peak_root::<T>();
        let boundary = resonant_boundary::<T>(clique.x);
        let boundary_phase = -eigenbasis_coefficients(&boundary)[0].arg();
        let second_stage_x = (T::FRAC_PI_2() + boundary_phase) / T::lit(2.0).sqrt();
        ScheduleConstants {
            single_peak_x: single.x,
            clique_peak_x: clique.x,
            second_stage_x,
            total_x: clique.x + second_stage_x,
            single_peak_p: single.probability,
            two_stage_p: clique.probability,
            boundary_phase,
        }
    }
}

/// Second-stage type probabilities `delta_t` after the switch to a
/// small-weight bridge, given precomputed constants.
pub fn second_stage_probabilities_with<T: Real>(
    constants: &ScheduleConstants<T>,
    n: usize,
    delta_t: T,
) -> [T; SUBSPACE_DIM] {
    let p = constants.two_stage_p;
    let arg = (T::lit(2.0) / T::from_count(n)).sqrt() * delta_t - constants.boundary_phase;
    let (s, c) = arg.sin_cos();
    [p * s * s, p * c * c, T::zero(), T::zero(), T::one() - p]
}

pub fn second_stage_probabilities<T: Real>(n: usize, delta_t: T) -> [T; SUBSPACE_DIM] {
    second_stage_probabilities_with(&ScheduleConstants::compute(), n, delta_t)
}

/// Two-stage schedule in absolute times for a given `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStageSchedule<T> {
    pub n: usize,
    pub constants: ScheduleConstants<T>,
    pub switch_time: T,
    pub second_stage_time: T,
    pub total_time: T,
}

pub fn two_stage_schedule<T: Real>(n: usize) -> TwoStageSchedule<T> {
    let constants = ScheduleConstants::compute();
    let root = sqrt_n::<T>(n);
    TwoStageSchedule {
        n,
        constants,
        switch_time: constants.clique_peak_x * root,
        second_stage_time: constants.second_stage_x * root,
        total_time: constants.total_x * root,
    }
}

/// Unweighted-graph reference: first peak time and height, and the expected
/// runtime with repetitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplacianBaseline<T> {
    pub t_star: T,
    pub p_star: T,
    pub expected_total: T,
}

pub fn laplacian_baseline<T: Real>(n: usize) -> LaplacianBaseline<T> {
    let t_star = T::PI() * sqrt_n::<T>(n) / (T::lit(2.0) * T::lit(2.0).sqrt());
    let p_star = T::lit(0.5);
    LaplacianBaseline {
        t_star,
        p_star,
        expected_total: t_star / p_star,
    }
}
