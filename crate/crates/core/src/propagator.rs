//! Exact Schrödinger evolution `e^{-iHt}` through a Hermitian
//! eigendecomposition, per-type probabilities, time series and peak search.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph_model::{
    basis, build_initial_state, build_search_hamiltonian, multiplicities_for, BarbellParams,
    SubspaceState, SUBSPACE_DIM,
};
use crate::linalg::{jacobi_eigen, symmetric_eigen, HermitianOperator, RawEigen};
use crate::roots::golden_section_max;
use crate::scalar::{phase, real, Cplx, Real};

/// Samples in the coarse peak scan.
pub const PEAK_SCAN_SAMPLES: usize = 2000;

/// A sampled local maximum counts only if it rises this far above the lower
/// of its two neighbours.
pub const PEAK_PROMINENCE: f64 = 1e-6;

/// The reported peak is the first local maximum reaching this fraction of the
/// tallest local maximum in the scan window.
pub const PEAK_DOMINANCE: f64 = 0.95;

/// Refinement stops once the bracket is narrower than this times `√N`.
pub const PEAK_TIME_RESOLUTION: f64 = 1e-6;

/// Real eigenvalues in ascending order with orthonormal eigenvectors.
///
/// Each eigenvector is phase-fixed so that its largest-magnitude component
/// is real and positive; ties go to the lowest index.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<T> {
    dim: usize,
    values: Vec<T>,
    // column-major: vectors[k * dim + i] is component i of eigenvector k
    vectors: Vec<Cplx<T>>,
}

/// Diagonalizes `h`. Real input uses tridiagonal QL, complex input uses
/// cyclic Jacobi.
pub fn eigendecompose<T: Real>(h: &HermitianOperator<T>) -> Result<EigenSystem<T>> {
    let n = h.dim();
    let raw = if h.is_real() {
        symmetric_eigen(n, &h.real_part())?
    } else {
        jacobi_eigen(h)?
    };
    Ok(EigenSystem::from_raw(n, raw))
}

impl<T: Real> EigenSystem<T> {
    fn from_raw(dim: usize, raw: RawEigen<T>) -> Self {
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| {
            raw.values[a]
                .partial_cmp(&raw.values[b])
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });
        let mut values = Vec::with_capacity(dim);
        let mut vectors = Vec::with_capacity(dim * dim);
        for &k in &order {
            values.push(raw.values[k]);
            let col = &raw.vectors[k * dim..(k + 1) * dim];
            let biggest = col.iter().map(|z| z.norm()).fold(T::zero(), T::max);
            let cutoff = biggest * (T::one() - T::tol(1e-9));
            let pivot = col
                .iter()
                .find(|z| z.norm() >= cutoff)
                .copied()
                .unwrap_or_else(|| real(T::one()));
            let fix = if pivot.norm() > T::zero() {
                pivot.conj() / pivot.norm()
            } else {
                real(T::one())
            };
            vectors.extend(col.iter().map(|z| z * fix));
        }
        Self {
            dim,
            values,
            vectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.values
    }

    pub fn eigenvector(&self, k: usize) -> &[Cplx<T>] {
        &self.vectors[k * self.dim..(k + 1) * self.dim]
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: len,
            });
        }
        Ok(())
    }

    /// Expansion coefficients `U† ψ`.
    pub fn coefficients(&self, psi: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
        self.check_dim(psi.len())?;
        Ok((0..self.dim)
            .map(|k| {
                self.eigenvector(k)
                    .iter()
                    .zip(psi)
                    .map(|(u, x)| u.conj() * x)
                    .sum()
            })
            .collect())
    }

    /// `Σ_k c_k e^{-i λ_k t} u_k` for precomputed coefficients.
    pub fn evolve_coefficients(&self, coeffs: &[Cplx<T>], t: T) -> Vec<Cplx<T>> {
        let mut out = vec![real(T::zero()); self.dim];
        for (k, (&c, &lambda)) in coeffs.iter().zip(&self.values).enumerate() {
            let ck = c * phase(lambda * t);
            if ck == real(T::zero()) {
                continue;
            }
            for (o, u) in out.iter_mut().zip(self.eigenvector(k)) {
                *o += u * ck;
            }
        }
        out
    }

    /// `U e^{-iΛt} U† ψ0`; `t = 0` returns `ψ0` unchanged.
    pub fn evolve(&self, psi0: &[Cplx<T>], t: T) -> Result<Vec<Cplx<T>>> {
        self.check_dim(psi0.len())?;
        if t == T::zero() {
            return Ok(psi0.to_vec());
        }
        let c = self.coefficients(psi0)?;
        Ok(self.evolve_coefficients(&c, t))
    }

    /// `max |H - U Λ U†|`.
    pub fn reconstruction_error(&self, h: &HermitianOperator<T>) -> Result<T> {
        self.check_dim(h.dim())?;
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                let mut acc = real(T::zero());
                for k in 0..n {
                    let u = self.eigenvector(k);
                    acc += u[i] * u[j].conj() * self.values[k];
                }
                worst = worst.max((acc - h.get(i, j)).norm());
            }
        }
        Ok(worst)
    }

    /// `max |U†U - I|`.
    pub fn orthonormality_error(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for a in 0..n {
            for b in a..n {
                let dot: Cplx<T> = self
                    .eigenvector(a)
                    .iter()
                    .zip(self.eigenvector(b))
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let target = if a == b {
                    real(T::one())
                } else {
                    real(T::zero())
                };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

/// Free-function form of [`EigenSystem::evolve`].
pub fn evolve<T: Real>(eigsys: &EigenSystem<T>, psi0: &[Cplx<T>], t: T) -> Result<Vec<Cplx<T>>> {
    eigsys.evolve(psi0, t)
}

/// Which probability a peak search maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    /// `p_a`, the success probability.
    MarkedVertex,
    /// `p_a + p_b + p_c`.
    MarkedClique,
}

/// Per-type probabilities of one subspace state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probabilities<T> {
    /// Probability of the whole type class, `|amplitude|²`.
    pub aggregate: [T; SUBSPACE_DIM],
    /// Probability of a single vertex of each type.
    pub per_vertex: [T; SUBSPACE_DIM],
    /// Marked-clique probability `p_a + p_b + p_c`.
    pub clique: T,
}

impl<T: Real> Probabilities<T> {
    pub fn from_aggregate(aggregate: [T; SUBSPACE_DIM], n: usize) -> Self {
        let mult = multiplicities_for(n);
        let mut per_vertex = [T::zero(); SUBSPACE_DIM];
        for t in 0..SUBSPACE_DIM {
            per_vertex[t] = aggregate[t] / T::from_count(mult.get(t));
        }
        Self {
            aggregate,
            per_vertex,
            clique: aggregate[basis::A] + aggregate[basis::B] + aggregate[basis::C],
        }
    }

    pub fn total(&self) -> T {
        self.aggregate.iter().copied().sum()
    }

    pub fn get(&self, obs: Observable) -> T {
        match obs {
            Observable::MarkedVertex => self.aggregate[basis::A],
            Observable::MarkedClique => self.clique,
        }
    }
}

pub fn probabilities<T: Real>(
    state: &SubspaceState<T>,
    params: &BarbellParams<T>,
) -> Probabilities<T> {
    amplitude_probabilities(state.amplitudes(), params.n())
}

pub(crate) fn amplitude_probabilities<T: Real>(amps: &[Cplx<T>], n: usize) -> Probabilities<T> {
    let mut agg = [T::zero(); SUBSPACE_DIM];
    for (p, z) in agg.iter_mut().zip(amps) {
        *p = z.norm_sqr();
    }
    Probabilities::from_aggregate(agg, n)
}

/// Sampled per-type probabilities over time.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimeSeries<T> {
    pub times: Vec<T>,
    pub aggregate: [Vec<T>; SUBSPACE_DIM],
    pub per_vertex: [Vec<T>; SUBSPACE_DIM],
    pub clique: Vec<T>,
}

impl<T: Real> TimeSeries<T> {
    pub fn push(&mut self, t: T, p: &Probabilities<T>) {
        self.times.push(t);
        for k in 0..SUBSPACE_DIM {
            self.aggregate[k].push(p.aggregate[k]);
            self.per_vertex[k].push(p.per_vertex[k]);
        }
        self.clique.push(p.clique);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn row(&self, i: usize) -> Probabilities<T> {
        let mut aggregate = [T::zero(); SUBSPACE_DIM];
        let mut per_vertex = [T::zero(); SUBSPACE_DIM];
        for k in 0..SUBSPACE_DIM {
            aggregate[k] = self.aggregate[k][i];
            per_vertex[k] = self.per_vertex[k][i];
        }
        Probabilities {
            aggregate,
            per_vertex,
            clique: self.clique[i],
        }
    }

    pub fn observable(&self, obs: Observable) -> &[T] {
        match obs {
            Observable::MarkedVertex => &self.aggregate[basis::A],
            Observable::MarkedClique => &self.clique,
        }
    }

    /// Appends `other`, shifting its times by `offset`.
    pub fn extend_shifted(&mut self, other: &TimeSeries<T>, offset: T) {
        for i in 0..other.len() {
            self.push(other.times[i] + offset, &other.row(i));
        }
    }
}

/// A refined extremum of an observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakResult<T> {
    pub t_star: T,
    pub p_star: T,
    pub which: Observable,
}

/// Search Hamiltonian together with its eigendecomposition; the unit of
/// reuse for every time-domain computation.
#[derive(Debug, Clone)]
pub struct Walk<T> {
    params: BarbellParams<T>,
    hamiltonian: HermitianOperator<T>,
    eigen: EigenSystem<T>,
}

impl<T: Real> Walk<T> {
    pub fn new(params: BarbellParams<T>) -> Result<Self> {
        let hamiltonian = build_search_hamiltonian(&params);
        let eigen = eigendecompose(&hamiltonian)?;
        Ok(Self {
            params,
            hamiltonian,
            eigen,
        })
    }

    pub fn params(&self) -> &BarbellParams<T> {
        &self.params
    }

    pub fn hamiltonian(&self) -> &HermitianOperator<T> {
        &self.hamiltonian
    }

    pub fn eigen(&self) -> &EigenSystem<T> {
        &self.eigen
    }

    pub fn initial_state(&self) -> SubspaceState<T> {
        build_initial_state(&self.params)
    }

    pub fn evolve(&self, psi0: &SubspaceState<T>, t: T) -> SubspaceState<T> {
        let out = self
            .eigen
            .evolve(psi0.amplitudes(), t)
            .expect("subspace dimension is fixed");
        SubspaceState::from_raw(out.try_into().expect("subspace dimension is fixed"))
    }

    /// Evaluator of probabilities at arbitrary times from a fixed start.
    pub fn from_state(&self, psi0: &SubspaceState<T>) -> Trajectory<'_, T> {
        Trajectory {
            walk: self,
            coeffs: self
                .eigen
                .coefficients(psi0.amplitudes())
                .expect("subspace dimension is fixed"),
            start: psi0.clone(),
        }
    }
}

/// Evolution from one initial state under one [`Walk`].
#[derive(Debug, Clone)]
pub struct Trajectory<'a, T> {
    walk: &'a Walk<T>,
    coeffs: Vec<Cplx<T>>,
    start: SubspaceState<T>,
}

impl<T: Real> Trajectory<'_, T> {
    pub fn state(&self, t: T) -> SubspaceState<T> {
        if t == T::zero() {
            return self.start.clone();
        }
        let amps = self.walk.eigen.evolve_coefficients(&self.coeffs, t);
        SubspaceState::from_raw(amps.try_into().expect("subspace dimension is fixed"))
    }

    pub fn probabilities(&self, t: T) -> Probabilities<T> {
        probabilities(&self.state(t), &self.walk.params)
    }

    pub fn observable(&self, obs: Observable, t: T) -> T {
        self.probabilities(t).get(obs)
    }

    /// Uniform grid over `[0, t_max]` with both endpoints.
    pub fn series(&self, t_max: T, n_samples: usize) -> Result<TimeSeries<T>> {
        check_grid(t_max, n_samples)?;
        let mut series = TimeSeries::default();
        for t in uniform_grid(t_max, n_samples) {
            series.push(t, &self.probabilities(t));
        }
        Ok(series)
    }

    /// Every refined local maximum of `obs` over `(0, t_max]`, in time order.
    pub fn local_maxima(&self, obs: Observable, t_max: T) -> Result<Vec<PeakResult<T>>> {
        if t_max.is_nan() || t_max <= T::zero() {
            return Err(Error::InvalidArgument(format!(
                "peak scan window must be positive, got {}",
                t_max
            )));
        }
        let dt = t_max / T::from_count(PEAK_SCAN_SAMPLES);
        let f: Vec<T> = (0..=PEAK_SCAN_SAMPLES)
            .map(|k| self.observable(obs, dt * T::from_count(k)))
            .collect();
        let prominence = T::lit(PEAK_PROMINENCE);
        let resolution = T::tol(PEAK_TIME_RESOLUTION) * T::from_count(self.walk.params.n()).sqrt();
        let mut peaks = Vec::new();
        for k in 1..PEAK_SCAN_SAMPLES {
            let (prev, here, next) = (f[k - 1], f[k], f[k + 1]);
            if here > prev && here >= next && here - prev.min(next) > prominence {
                let lo = dt * T::from_count(k - 1);
                let hi = dt * T::from_count(k + 1);
                let (t_star, p_star) =
                    golden_section_max(|t| self.observable(obs, t), lo, hi, resolution);
                peaks.push(PeakResult {
                    t_star,
                    p_star,
                    which: obs,
                });
            }
        }
        Ok(peaks)
    }

    /// The first local maximum whose height reaches [`PEAK_DOMINANCE`] of the
    /// tallest one in the window.
    pub fn first_peak(&self, obs: Observable, t_max: T) -> Result<PeakResult<T>> {
        let peaks = self.local_maxima(obs, t_max)?;
        select_dominant(&peaks).ok_or(Error::NoPeakFound(t_max.as_f64()))
    }
}

pub(crate) fn select_dominant<T: Real>(peaks: &[PeakResult<T>]) -> Option<PeakResult<T>> {
    let tallest = peaks
        .iter()
        .map(|p| p.p_star)
        .fold(T::neg_infinity(), T::max);
    let bar = tallest * T::lit(PEAK_DOMINANCE);
    peaks.iter().find(|p| p.p_star >= bar).copied()
}

fn check_grid<T: Real>(t_max: T, n_samples: usize) -> Result<()> {
    if !(t_max > T::zero() && t_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "t_max must be positive, got {}",
            t_max
        )));
    }
    if n_samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    Ok(())
}

/// `n` points from 0 to `t_max` inclusive; the last point is exactly `t_max`.
pub fn uniform_grid<T: Real>(t_max: T, n: usize) -> impl Iterator<Item = T> {
    let last = n.saturating_sub(1).max(1);
    (0..n).map(move |k| {
        if k == last {
            t_max
        } else {
            t_max * T::from_count(k) / T::from_count(last)
        }
    })
}

/// Time series of the uniform initial state under `params`.
pub fn sample_series<T: Real>(
    params: &BarbellParams<T>,
    t_max: T,
    n_samples: usize,
) -> Result<TimeSeries<T>> {
    let walk = Walk::new(*params)?;
    walk.from_state(&walk.initial_state())
        .series(t_max, n_samples)
}

/// First dominant peak of `observable` from the uniform initial state.
pub fn find_first_peak<T: Real>(
    params: &BarbellParams<T>,
    observable: Observable,
    t_hint_max: T,
) -> Result<PeakResult<T>> {
    let walk = Walk::new(*params)?;
    walk.from_state(&walk.initial_state())
        .first_peak(observable, t_hint_max)
}
