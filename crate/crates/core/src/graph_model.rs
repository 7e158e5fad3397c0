//! The weighted barbell graph: two cliques of `N/2` vertices joined by one
//! bridge edge of weight `w`.
//!
//! Vertices fall into five symmetry types:
//!
//! ```text
//!   a  the marked vertex (in the marked clique)
//!   b  the other N/2 - 2 vertices of the marked clique
//!   c  the bridge endpoint in the marked clique
//!   d  the bridge endpoint in the unmarked clique
//!   e  the other N/2 - 1 vertices of the unmarked clique
//! ```
//!
//! Uniform superpositions over each type span a 5-dimensional subspace that
//! contains the initial state and is invariant under the search Hamiltonian.
//! Subspace operators are expressed in that orthonormal basis, ordered
//! `(a, b, c, d, e)`.
//!
//! **Sign convention:** the Laplacian here is `L = A - D`, the negative of the
//! more common `D - A`. Search Hamiltonians are `H = -γ L + V` and
//! `H = -γ A + V`.

use crate::error::{Error, Result};
use crate::linalg::HermitianOperator;
use crate::scalar::{real, Cplx, Real};

/// Number of vertex types, and the dimension of the symmetric subspace.
pub const SUBSPACE_DIM: usize = 5;

/// Indices of the vertex types within subspace vectors.
pub mod basis {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const D: usize = 3;
    pub const E: usize = 4;
    pub const LABELS: [&str; 5] = ["a", "b", "c", "d", "e"];
}

/// Largest full-space dimension any builder will accept (dense storage).
pub const FULLSPACE_HARD_CAP: usize = 4096;

/// Which quantum walk drives the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkKind {
    /// `H = -γ (A - D) + V`
    Laplacian,
    /// `H = -γ A + V`
    Adjacency,
}

impl WalkKind {
    pub fn name(self) -> &'static str {
        match self {
            WalkKind::Laplacian => "laplacian",
            WalkKind::Adjacency => "adjacency",
        }
    }
}

/// A validated search problem instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarbellParams<T> {
    n: usize,
    w: T,
    gamma: T,
    kind: WalkKind,
}

impl<T: Real> BarbellParams<T> {
    /// Checks `N` even, `N >= 6`, `w >= 0`, `γ > 0`.
    pub fn new(n: usize, w: T, gamma: T, kind: WalkKind) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::OddN(n));
        }
        if n < 6 {
            return Err(Error::NTooSmall(n));
        }
        if !(w.is_finite() && w >= T::zero()) {
            return Err(Error::NegativeWeight(w.as_f64()));
        }
        if !(gamma.is_finite() && gamma > T::zero()) {
            return Err(Error::NonPositiveGamma(gamma.as_f64()));
        }
        Ok(Self { n, w, gamma, kind })
    }

    /// Uses the critical jumping rate `γ = 2/N`.
    pub fn critical(n: usize, w: T, kind: WalkKind) -> Result<Self> {
        Self::new(n, w, critical_gamma(n), kind)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self) -> T {
        self.w
    }

    #[inline]
    pub fn gamma(&self) -> T {
        self.gamma
    }

    #[inline]
    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn with_weight(&self, w: T) -> Result<Self> {
        Self::new(self.n, w, self.gamma, self.kind)
    }

    pub fn with_kind(&self, kind: WalkKind) -> Self {
        Self { kind, ..*self }
    }

    /// `N/2` as a scalar.
    #[inline]
    pub(crate) fn half(&self) -> T {
        T::from_count(self.n / 2)
    }
}

/// Free-function form of [`BarbellParams::new`].
pub fn validate_params<T: Real>(
    n: usize,
    w: T,
    gamma: T,
    kind: WalkKind,
) -> Result<BarbellParams<T>> {
    BarbellParams::new(n, w, gamma, kind)
}

/// `γ_c = 2/N`.
pub fn critical_gamma<T: Real>(n: usize) -> T {
    T::lit(2.0) / T::from_count(n)
}

/// Vertex counts per type, ordered `(a, b, c, d, e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexTypeMultiplicities(pub [usize; SUBSPACE_DIM]);

impl VertexTypeMultiplicities {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn get(&self, ty: usize) -> usize {
        self.0[ty]
    }
}

pub fn multiplicities<T: Real>(params: &BarbellParams<T>) -> VertexTypeMultiplicities {
    multiplicities_for(params.n)
}

pub(crate) fn multiplicities_for(n: usize) -> VertexTypeMultiplicities {
    let h = n / 2;
    VertexTypeMultiplicities([1, h - 2, 1, 1, h - 1])
}

/// Unit-norm state in the symmetric subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceState<T> {
    amplitudes: [Cplx<T>; SUBSPACE_DIM],
}

impl<T: Real> SubspaceState<T> {
    /// Accepts amplitudes whose squared norm is 1 within `1e-10`.
    pub fn new(amplitudes: [Cplx<T>; SUBSPACE_DIM]) -> Result<Self> {
        let s = Self { amplitudes };
        let dev = (s.norm_sqr() - T::one()).abs();
        if dev.is_nan() || dev > T::tol(1e-10) {
            return Err(Error::InvalidArgument(format!(
                "subspace state is not normalized (|norm^2 - 1| = {:e})",
                dev.as_f64()
            )));
        }
        Ok(s)
    }

    /// Wraps amplitudes without the normalization check.
    pub(crate) fn from_raw(amplitudes: [Cplx<T>; SUBSPACE_DIM]) -> Self {
        Self { amplitudes }
    }

    pub fn from_slice(v: &[Cplx<T>]) -> Result<Self> {
        let arr: [Cplx<T>; SUBSPACE_DIM] = v.try_into().map_err(|_| Error::DimensionMismatch {
            expected: SUBSPACE_DIM,
            actual: v.len(),
        })?;
        Self::new(arr)
    }

    pub fn amplitudes(&self) -> &[Cplx<T>; SUBSPACE_DIM] {
        &self.amplitudes
    }

    pub fn amplitude(&self, ty: usize) -> Cplx<T> {
        self.amplitudes[ty]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `√(N/2 - 2)` and `√(N/2 - 1)`, the two non-trivial coupling surds.
fn surds<T: Real>(params: &BarbellParams<T>) -> (T, T) {
    let h = params.half();
    ((h - T::lit(2.0)).sqrt(), (h - T::one()).sqrt())
}

/// Adjacency matrix restricted to the symmetric subspace.
pub fn build_subspace_adjacency<T: Real>(params: &BarbellParams<T>) -> HermitianOperator<T> {
    let h = params.half();
    let (sb, se) = surds(params);
    let z = T::zero();
    let one = T::one();
    HermitianOperator::from_real_rows([
        [z, sb, one, z, z],
        [sb, h - T::lit(3.0), sb, z, z],
        [one, sb, z, params.w, z],
        [z, z, params.w, z, se],
        [z, z, z, se, h - T::lit(2.0)],
    ])
}

/// Weighted degree matrix in the symmetric subspace.
pub fn build_subspace_degree<T: Real>(params: &BarbellParams<T>) -> HermitianOperator<T> {
    let base = params.half() - T::one();
    let bridged = base + params.w;
    HermitianOperator::diagonal(&[base, base, bridged, bridged, base])
}

/// `L = A - D` in the symmetric subspace.
pub fn build_subspace_laplacian<T: Real>(params: &BarbellParams<T>) -> HermitianOperator<T> {
    build_subspace_adjacency(params)
        .try_sub(&build_subspace_degree(params))
        .expect("subspace operators share dimension")
}

/// Oracle `V = -|a><a|`.
pub fn build_oracle<T: Real>() -> HermitianOperator<T> {
    let mut v = HermitianOperator::zeros(SUBSPACE_DIM);
    v.set_hermitian(basis::A, basis::A, real(-T::one()));
    v
}

/// `H = -γ L + V` or `H = -γ A + V` depending on the walk kind.
pub fn build_search_hamiltonian<T: Real>(params: &BarbellParams<T>) -> HermitianOperator<T> {
    let walk = match params.kind {
        WalkKind::Laplacian => build_subspace_laplacian(params),
        WalkKind::Adjacency => build_subspace_adjacency(params),
    };
    walk.scaled(-params.gamma)
        .try_add(&build_oracle())
        .expect("subspace operators share dimension")
}

/// Uniform superposition over all vertices, in the type basis.
pub fn build_initial_state<T: Real>(params: &BarbellParams<T>) -> SubspaceState<T> {
    let (sb, se) = surds(params);
    let inv = T::one() / T::from_count(params.n).sqrt();
    SubspaceState::from_raw([
        real(inv),
        real(sb * inv),
        real(inv),
        real(inv),
        real(se * inv),
    ])
}

/// Vertex-to-type assignment for the full `N`-vertex graph.
///
/// Vertices `0..N/2` form the marked clique and `N/2..N` the unmarked one.
/// Vertex 1 is `c` and vertex `N/2` is `d`; the bridge joins them. The marked
/// vertex defaults to 0 and may be any other vertex of the marked clique
/// except `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSpaceLayout {
    n: usize,
    marked: usize,
    types: Vec<usize>,
}

impl FullSpaceLayout {
    pub const BRIDGE_MARKED_SIDE: usize = 1;

    pub fn new(n: usize, marked: usize) -> Result<Self> {
        let half = n / 2;
        if marked >= half || marked == Self::BRIDGE_MARKED_SIDE {
            return Err(Error::BadMarkedIndex { index: marked, n });
        }
        let types = (0..n)
            .map(|v| {
                if v == marked {
                    basis::A
                } else if v == Self::BRIDGE_MARKED_SIDE {
                    basis::C
                } else if v < half {
                    basis::B
                } else if v == half {
                    basis::D
                } else {
                    basis::E
                }
            })
            .collect();
        Ok(Self { n, marked, types })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn bridge(&self) -> (usize, usize) {
        (Self::BRIDGE_MARKED_SIDE, self.n / 2)
    }

    pub fn vertex_type(&self, v: usize) -> usize {
        self.types[v]
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    /// Unit-norm uniform superposition over every vertex of type `ty`.
    pub fn basis_vector<T: Real>(&self, ty: usize) -> Vec<T> {
        let m = multiplicities_for(self.n).get(ty);
        let amp = T::one() / T::from_count(m).sqrt();
        self.types
            .iter()
            .map(|&t| if t == ty { amp } else { T::zero() })
            .collect()
    }

    /// Inner products with the five type basis vectors, plus the norm of the
    /// component orthogonal to the symmetric subspace.
    pub fn project<T: Real>(&self, full: &[Cplx<T>]) -> Result<(SubspaceState<T>, T)> {
        if full.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: full.len(),
            });
        }
        let mult = multiplicities_for(self.n);
        let mut sums = [real(T::zero()); SUBSPACE_DIM];
        for (z, &t) in full.iter().zip(&self.types) {
            sums[t] += z;
        }
        let mut amplitudes = [real(T::zero()); SUBSPACE_DIM];
        let mut means = [real(T::zero()); SUBSPACE_DIM];
        for t in 0..SUBSPACE_DIM {
            let m = T::from_count(mult.get(t));
            amplitudes[t] = sums[t] / m.sqrt();
            means[t] = sums[t] / m;
        }
        let residual: T = full
            .iter()
            .zip(&self.types)
            .map(|(z, &t)| (z - means[t]).norm_sqr())
            .sum::<T>()
            .sqrt();
        Ok((SubspaceState::from_raw(amplitudes), residual))
    }

    /// Per-type aggregate probability `Σ_{v of type} |ψ_v|²`.
    pub fn aggregate_probabilities<T: Real>(&self, full: &[Cplx<T>]) -> [T; SUBSPACE_DIM] {
        let mut p = [T::zero(); SUBSPACE_DIM];
        for (z, &t) in full.iter().zip(&self.types) {
            p[t] += z.norm_sqr();
        }
        p
    }
}

/// Dense `N × N` search Hamiltonian on the explicit barbell graph.
pub fn build_fullspace_hamiltonian<T: Real>(
    params: &BarbellParams<T>,
    marked_index: usize,
) -> Result<HermitianOperator<T>> {
    let layout = FullSpaceLayout::new(params.n, marked_index)?;
    if params.n > FULLSPACE_HARD_CAP {
        return Err(Error::CapExceeded {
            n: params.n,
            cap: FULLSPACE_HARD_CAP,
        });
    }
    Ok(fullspace_hamiltonian(params, &layout))
}

pub(crate) fn fullspace_hamiltonian<T: Real>(
    params: &BarbellParams<T>,
    layout: &FullSpaceLayout,
) -> HermitianOperator<T> {
    let n = params.n;
    let half = n / 2;
    let (c, d) = layout.bridge();
    let g = params.gamma;
    let w = params.w;
    HermitianOperator::from_upper_fn(n, |i, j| {
        let adjacency = if i == j {
            T::zero()
        } else if (i < half) == (j < half) {
            T::one()
        } else if (i, j) == (c, d) {
            w
        } else {
            T::zero()
        };
        let mut h = -g * adjacency;
        if i == j {
            if params.kind == WalkKind::Laplacian {
                let mut degree = T::from_count(half - 1);
                if i == c || i == d {
                    degree += w;
                }
                h += g * degree;
            }
            if i == layout.marked {
                h -= T::one();
            }
        }
        h
    })
}

/// Projects a full-space state onto the symmetric subspace of the default
/// layout (marked vertex 0).
pub fn project_to_subspace<T: Real>(
    full_state: &[Cplx<T>],
    params: &BarbellParams<T>,
) -> Result<(SubspaceState<T>, T)> {
    FullSpaceLayout::new(params.n, 0)?.project(full_state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, w: f64, kind: WalkKind) -> BarbellParams<f64> {
        BarbellParams::critical(n, w, kind).unwrap()
    }

    #[test]
    fn validate_accepts_fig5_instance() {
        let params = validate_params(1024, 512.0, 2.0 / 1024.0, WalkKind::Adjacency).unwrap();
        assert_eq!(params.n(), 1024);
        assert_eq!(params.weight(), 512.0);
    }

    #[test]
    fn validate_error_paths() {
        assert_eq!(
            validate_params(7, 1.0, 0.1, WalkKind::Laplacian),
            Err(Error::OddN(7))
        );
        assert_eq!(
            validate_params(4, 1.0, 0.1, WalkKind::Laplacian),
            Err(Error::NTooSmall(4))
        );
        assert!(matches!(
            validate_params(8, -0.5, 0.1, WalkKind::Laplacian),
            Err(Error::NegativeWeight(_))
        ));
        assert!(matches!(
            validate_params(8, f64::NAN, 0.1, WalkKind::Laplacian),
            Err(Error::NegativeWeight(_))
        ));
        assert!(matches!(
            validate_params(8, 1.0, 0.0, WalkKind::Laplacian),
            Err(Error::NonPositiveGamma(_))
        ));
        // disconnected graph is allowed
        assert!(validate_params(6, 0.0, 1.0, WalkKind::Laplacian).is_ok());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(
            multiplicities(&p(10, 1.0, WalkKind::Adjacency)).0,
            [1, 3, 1, 1, 4]
        );
        assert_eq!(
            multiplicities(&p(6, 1.0, WalkKind::Adjacency)).0,
            [1, 1, 1, 1, 2]
        );
        for n in (6..200).step_by(2) {
            assert_eq!(multiplicities_for(n).total(), n);
        }
    }

    #[test]
    fn adjacency_rows() {
        let a = build_subspace_adjacency(&p(10, 1.0, WalkKind::Adjacency));
        let s3 = 3f64.sqrt();
        let row: Vec<f64> = (0..5).map(|j| a.get(1, j).re).collect();
        let expected = [s3, 2.0, s3, 0.0, 0.0];
        for (x, y) in row.iter().zip(&expected) {
            assert!((x - y).abs() < 1e-15);
        }
        let a5 = build_subspace_adjacency(&p(10, 5.0, WalkKind::Adjacency));
        assert_eq!(a5.get(2, 3).re, 5.0);
        assert_eq!(a5.get(3, 2).re, 5.0);
        assert_eq!(a5.hermiticity_error(), 0.0);
    }

    #[test]
    fn degree_diagonals() {
        let d = build_subspace_degree(&p(1024, 512.0, WalkKind::Adjacency));
        let diag: Vec<f64> = (0..5).map(|i| d.get(i, i).re).collect();
        assert_eq!(diag, vec![511.0, 511.0, 1023.0, 1023.0, 511.0]);
        let d0 = build_subspace_degree(&p(1024, 0.0, WalkKind::Adjacency));
        assert!((0..5).all(|i| d0.get(i, i).re == 511.0));
        let d10 = build_subspace_degree(&p(10, 1.0, WalkKind::Adjacency));
        let diag: Vec<f64> = (0..5).map(|i| d10.get(i, i).re).collect();
        assert_eq!(diag, vec![4.0, 4.0, 5.0, 5.0, 4.0]);
    }

    #[test]
    fn laplacian_entries_and_kernel() {
        let l = build_subspace_laplacian(&p(10, 1.0, WalkKind::Laplacian));
        assert_eq!(l.get(1, 1).re, -2.0);
        assert_eq!(l.get(0, 0).re, -4.0);
        let big = build_subspace_laplacian(&p(1024, 2048.0, WalkKind::Laplacian));
        assert_eq!(big.get(2, 2).re, -2559.0);
        assert_eq!(big.get(3, 3).re, -2559.0);

        for &(n, w) in &[
            (6usize, 0.0),
            (10, 1.0),
            (64, 32.0),
            (1024, 2048.0),
            (1000, 0.37),
        ] {
            let params = p(n, w, WalkKind::Laplacian);
            let h = (n / 2) as f64;
            let v = [1.0, (h - 2.0).sqrt(), 1.0, 1.0, (h - 1.0).sqrt()];
            let lv = build_subspace_laplacian(&params).apply_real(&v).unwrap();
            assert!(lv.iter().all(|z| z.norm() < 1e-10), "N={n} w={w}");
        }
    }

    #[test]
    fn oracle_properties() {
        let v = build_oracle::<f64>();
        let a = v.apply_real(&[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(a[0].re, -1.0);
        let b = v.apply_real(&[0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(b.iter().all(|z| z.norm() == 0.0));
        assert_eq!(v.trace().re, -1.0);
    }

    #[test]
    fn search_hamiltonian_forms() {
        let params = p(1024, 512.0, WalkKind::Adjacency);
        let h = build_search_hamiltonian(&params);
        assert!((h.get(0, 0).re + 1.0).abs() < 1e-15);

        let lp = p(64, 3.0, WalkKind::Laplacian);
        let hl = build_search_hamiltonian(&lp);
        let manual = build_subspace_laplacian(&lp)
            .scaled(-lp.gamma())
            .try_add(&build_oracle())
            .unwrap();
        assert_eq!(hl.max_abs_diff(&manual).unwrap(), 0.0);
    }

    #[test]
    fn regular_graph_identity_shift() {
        for &n in &[6usize, 10, 64, 1024] {
            let lp = p(n, 0.0, WalkKind::Laplacian);
            let hl = build_search_hamiltonian(&lp);
            let ha = build_search_hamiltonian(&lp.with_kind(WalkKind::Adjacency));
            let shift = lp.gamma() * ((n / 2) as f64 - 1.0);
            let expected = HermitianOperator::identity(5).scaled(shift);
            assert!(hl.try_sub(&ha).unwrap().max_abs_diff(&expected).unwrap() < 1e-15);
        }
    }

    #[test]
    fn initial_state_examples() {
        let s = build_initial_state(&p(8, 1.0, WalkKind::Laplacian));
        let r8 = 8f64.sqrt();
        let expected = [
            1.0 / r8,
            2f64.sqrt() / r8,
            1.0 / r8,
            1.0 / r8,
            3f64.sqrt() / r8,
        ];
        for (z, e) in s.amplitudes().iter().zip(&expected) {
            assert!((z.re - e).abs() < 1e-15 && z.im == 0.0);
        }
        let s = build_initial_state(&p(1024, 1.0, WalkKind::Laplacian));
        assert!((s.amplitude(basis::A).re - 1.0 / 32.0).abs() < 1e-16);
        for n in (6..500).step_by(2) {
            let s = build_initial_state(&p(n, 1.0, WalkKind::Laplacian));
            assert!((s.norm_sqr() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn fullspace_row_sums() {
        let params = p(6, 1.0, WalkKind::Laplacian);
        let h = build_fullspace_hamiltonian(&params, 0).unwrap();
        for i in 0..6 {
            let row_sum: f64 = (0..6).map(|j| h.get(i, j).re).sum();
            let expected = if i == 0 { -1.0 } else { 0.0 };
            assert!((row_sum - expected).abs() < 1e-14, "row {i}: {row_sum}");
        }
    }

    #[test]
    fn fullspace_rejects_bad_marked_index() {
        let params = p(10, 1.0, WalkKind::Adjacency);
        assert!(matches!(
            build_fullspace_hamiltonian(&params, 1),
            Err(Error::BadMarkedIndex { index: 1, n: 10 })
        ));
        assert!(matches!(
            build_fullspace_hamiltonian(&params, 5),
            Err(Error::BadMarkedIndex { .. })
        ));
        assert!(build_fullspace_hamiltonian(&params, 4).is_ok());
    }

    #[test]
    fn projection_examples() {
        let params = p(10, 1.0, WalkKind::Adjacency);
        let uniform = vec![real(1.0 / 10f64.sqrt()); 10];
        let (s, residual) = project_to_subspace(&uniform, &params).unwrap();
        assert!(residual < 1e-15);
        let s0 = build_initial_state(&params);
        for (a, b) in s.amplitudes().iter().zip(s0.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }

        // one b-type vertex (vertex 2 in the default layout)
        let mut single = vec![real(0.0); 10];
        single[2] = real(1.0);
        let (s, residual) = project_to_subspace(&single, &params).unwrap();
        assert!((s.amplitude(basis::B).re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((residual * residual - 2.0 / 3.0).abs() < 1e-15);

        assert!(matches!(
            project_to_subspace(&single[..9], &params),
            Err(Error::DimensionMismatch {
                expected: 10,
                actual: 9
            })
        ));
    }
}
