//! Degenerate perturbation theory for the search Hamiltonian.
//!
//! For each weight regime the subspace Hamiltonian is split into a leading
//! term `H0` and a first-order correction `H1`, using the large-`N` forms
//! (`√(N/2 - 2) → √(N/2)` and so on). The eigenvectors of `H0` that are
//! degenerate with `|a>` at `γ = 2/N` span a small space on which `H0 + H1`
//! reduces to an effective matrix with closed-form eigenpairs.
//!
//! The regime is always named by the caller: scaling classes such as
//! `w = o(√N)` describe families of instances and cannot be inferred from a
//! single `(N, w)`.

use crate::error::{Error, Result};
use crate::graph_model::{basis, build_search_hamiltonian, BarbellParams, WalkKind, SUBSPACE_DIM};
use crate::linalg::HermitianOperator;
use crate::propagator::eigendecompose;
use crate::scalar::{real, Real};

/// Weight regime of the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Laplacian walk, `w = o(√N)`.
    LaplacianSmall,
    /// Laplacian walk, `w = Ω(√N)` and `w = o(N)`.
    LaplacianMedium,
    /// Laplacian walk, `w = Ω(N)`.
    LaplacianLarge,
    /// Adjacency walk, `w = o(√N)`.
    AdjacencySmall,
    /// Adjacency walk, `w = Ω(√N)` and `w = o(N)`.
    AdjacencyMedium,
    /// Adjacency walk at exactly `w = N/2`, `γ = 2/N`.
    AdjacencyResonant,
    /// Adjacency walk, `w = Ω(N)` with `w ≠ N/2`.
    AdjacencyLargeOffResonant,
}

impl Regime {
    pub const ALL: [Regime; 7] = [
        Regime::LaplacianSmall,
        Regime::LaplacianMedium,
        Regime::LaplacianLarge,
        Regime::AdjacencySmall,
        Regime::AdjacencyMedium,
        Regime::AdjacencyResonant,
        Regime::AdjacencyLargeOffResonant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::LaplacianSmall => "laplacian-small",
            Regime::LaplacianMedium => "laplacian-medium",
            Regime::LaplacianLarge => "laplacian-large",
            Regime::AdjacencySmall => "adjacency-small",
            Regime::AdjacencyMedium => "adjacency-medium",
            Regime::AdjacencyResonant => "adjacency-resonant",
            Regime::AdjacencyLargeOffResonant => "adjacency-large-off-resonant",
        }
    }

    pub fn kind(self) -> WalkKind {
        match self {
            Regime::LaplacianSmall | Regime::LaplacianMedium | Regime::LaplacianLarge => {
                WalkKind::Laplacian
            }
            _ => WalkKind::Adjacency,
        }
    }

    /// Whether the bridge weight enters `H0` (the `|cd>`, `|cd->` basis).
    fn weight_in_leading_order(self) -> bool {
        matches!(
            self,
            Regime::LaplacianLarge | Regime::AdjacencyResonant | Regime::AdjacencyLargeOffResonant
        )
    }

    /// Whether the bridge weight enters `H1`.
    fn weight_in_first_order(self) -> bool {
        matches!(self, Regime::LaplacianMedium | Regime::AdjacencyMedium)
    }
}

/// A symbolic eigenvector (coefficients in the `(a, b, c, d, e)` basis) with
/// its eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledEigenpair<T> {
    pub label: &'static str,
    pub vector: [T; SUBSPACE_DIM],
    pub eigenvalue: T,
}

fn check_regime<T: Real>(regime: Regime, params: &BarbellParams<T>) -> Result<()> {
    let mismatch = |reason: String| Error::RegimeMismatch {
        regime: regime.name(),
        reason,
    };
    if params.kind() != regime.kind() {
        return Err(mismatch(format!(
            "requires a {} walk",
            regime.kind().name()
        )));
    }
    let half = params.half();
    let critical = T::lit(2.0) / T::from_count(params.n());
    match regime {
        Regime::AdjacencyResonant => {
            if params.weight() != half {
                return Err(mismatch(format!(
                    "requires w = N/2 = {half}, got {}",
                    params.weight()
                )));
            }
            if params.gamma() != critical {
                return Err(mismatch(format!(
                    "requires gamma = 2/N, got {}",
                    params.gamma()
                )));
            }
        }
        Regime::AdjacencyLargeOffResonant if params.weight() == half => {
            return Err(mismatch("w = N/2 is the resonant case".into()));
        }
        _ => {}
    }
    Ok(())
}

fn unit(ty: usize) -> [f64; SUBSPACE_DIM] {
    let mut v = [0.0; SUBSPACE_DIM];
    v[ty] = 1.0;
    v
}

fn lift<T: Real>(v: [f64; SUBSPACE_DIM]) -> [T; SUBSPACE_DIM] {
    v.map(T::lit)
}

/// Leading and first-order parts `(H0, H1)` of the subspace Hamiltonian.
pub fn split_hamiltonian<T: Real>(
    params: &BarbellParams<T>,
    regime: Regime,
) -> Result<(HermitianOperator<T>, HermitianOperator<T>)> {
    check_regime(regime, params)?;
    let g = params.gamma();
    let h = params.half();
    let w = params.weight();
    let s = h.sqrt();
    let (a, b, c, d, e) = (basis::A, basis::B, basis::C, basis::D, basis::E);

    let mut h0 = HermitianOperator::zeros(SUBSPACE_DIM);
    match regime.kind() {
        WalkKind::Laplacian => {
            // -γ diag(-N/2 + 1/γ, 0, -N/2, -N/2, 0)
            h0.set_hermitian(a, a, real(g * h - T::one()));
            h0.set_hermitian(c, c, real(g * h));
            h0.set_hermitian(d, d, real(g * h));
        }
        WalkKind::Adjacency => {
            // -γ diag(1/γ, N/2, 0, 0, N/2)
            h0.set_hermitian(a, a, real(-T::one()));
            h0.set_hermitian(b, b, real(-g * h));
            h0.set_hermitian(e, e, real(-g * h));
        }
    }
    if regime.weight_in_leading_order() {
        h0.set_hermitian(c, d, real(-g * w));
        if regime.kind() == WalkKind::Laplacian {
            h0.set_hermitian(c, c, real(g * (h + w)));
            h0.set_hermitian(d, d, real(g * (h + w)));
        }
    }

    let mut h1 = HermitianOperator::zeros(SUBSPACE_DIM);
    for (i, j) in [(a, b), (b, c), (d, e)] {
        h1.set_hermitian(i, j, real(-g * s));
    }
    if regime.weight_in_first_order() {
        // The printed first-order term carries the Laplacian-style bridge
        // block for both walks.
        h1.set_hermitian(c, d, real(-g * w));
        h1.set_hermitian(c, c, real(g * w));
        h1.set_hermitian(d, d, real(g * w));
    }
    Ok((h0, h1))
}

/// Labeled eigenpairs of `H0`.
pub fn h0_eigensystem<T: Real>(
    regime: Regime,
    params: &BarbellParams<T>,
) -> Result<Vec<LabeledEigenpair<T>>> {
    check_regime(regime, params)?;
    let g = params.gamma();
    let h = params.half();
    let w = params.weight();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let cd = lift([0.0, 0.0, r, r, 0.0]);
    let cd_minus = lift([0.0, 0.0, r, -r, 0.0]);
    let pair = |label, vector, eigenvalue| LabeledEigenpair {
        label,
        vector,
        eigenvalue,
    };

    let list = match regime {
        Regime::LaplacianSmall | Regime::LaplacianMedium => vec![
            pair("|a>", lift(unit(basis::A)), g * h - T::one()),
            pair("|b>", lift(unit(basis::B)), T::zero()),
            pair("|c>", lift(unit(basis::C)), g * h),
            pair("|d>", lift(unit(basis::D)), g * h),
            pair("|e>", lift(unit(basis::E)), T::zero()),
        ],
        Regime::LaplacianLarge => vec![
            pair("|a>", lift(unit(basis::A)), g * h - T::one()),
            pair("|b>", lift(unit(basis::B)), T::zero()),
            pair("|cd>", cd, g * h),
            pair("|cd->", cd_minus, g * h + T::lit(2.0) * g * w),
            pair("|e>", lift(unit(basis::E)), T::zero()),
        ],
        Regime::AdjacencySmall | Regime::AdjacencyMedium => vec![
            pair("|a>", lift(unit(basis::A)), -T::one()),
            pair("|b>", lift(unit(basis::B)), -g * h),
            pair("|c>", lift(unit(basis::C)), T::zero()),
            pair("|d>", lift(unit(basis::D)), T::zero()),
            pair("|e>", lift(unit(basis::E)), -g * h),
        ],
        Regime::AdjacencyResonant | Regime::AdjacencyLargeOffResonant => vec![
            pair("|a>", lift(unit(basis::A)), -T::one()),
            pair("|b>", lift(unit(basis::B)), -g * h),
            pair("|cd>", cd, -g * w),
            pair("|cd->", cd_minus, g * w),
            pair("|e>", lift(unit(basis::E)), -g * h),
        ],
    };
    Ok(list)
}

fn degeneracy_tol<T: Real>(values: impl Iterator<Item = T>) -> T {
    let scale = values.map(T::abs).fold(T::one(), T::max);
    T::tol(1e-10) * scale
}

/// The `H0` eigenvectors sharing the eigenvalue of `|a>`.
pub fn degenerate_set<T: Real>(
    regime: Regime,
    params: &BarbellParams<T>,
) -> Result<Vec<LabeledEigenpair<T>>> {
    let all = h0_eigensystem(regime, params)?;
    let tol = degeneracy_tol(all.iter().map(|p| p.eigenvalue));
    let target = all[0].eigenvalue;
    Ok(all
        .into_iter()
        .filter(|p| (p.eigenvalue - target).abs() <= tol)
        .collect())
}

fn to_cplx<T: Real>(v: &[T]) -> Vec<crate::scalar::Cplx<T>> {
    v.iter().map(|&x| real(x)).collect()
}

/// `<u_i|(H0 + H1)|u_j>` over a set of degenerate `H0` eigenvectors.
pub fn effective_degenerate_matrix<T: Real>(
    h0: &HermitianOperator<T>,
    h1: &HermitianOperator<T>,
    degenerate_set: &[[T; SUBSPACE_DIM]],
) -> Result<HermitianOperator<T>> {
    if degenerate_set.is_empty() {
        return Err(Error::NotDegenerate("empty set".into()));
    }
    let vecs: Vec<_> = degenerate_set.iter().map(|v| to_cplx(v)).collect();
    let scale = h0.max_abs().max(T::one());
    let tol = T::tol(1e-10) * scale;
    let mut eigenvalues = Vec::with_capacity(vecs.len());
    for (k, u) in vecs.iter().enumerate() {
        let hu = h0.apply(u)?;
        let norm_sqr: T = u.iter().map(|z| z.norm_sqr()).sum();
        let lambda = h0.expectation(u)? / norm_sqr;
        let residual: T = hu
            .iter()
            .zip(u)
            .map(|(x, y)| (x - y * lambda).norm_sqr())
            .sum::<T>()
            .sqrt();
        if residual > tol {
            return Err(Error::NotDegenerate(format!(
                "vector {k} is not an eigenvector of H0 (residual {:e})",
                residual.as_f64()
            )));
        }
        eigenvalues.push(lambda);
    }
    let spread = eigenvalues
        .iter()
        .fold(T::zero(), |m, &l| m.max((l - eigenvalues[0]).abs()));
    if spread > degeneracy_tol(eigenvalues.iter().copied()) {
        return Err(Error::NotDegenerate(format!(
            "eigenvalues differ by {:e}",
            spread.as_f64()
        )));
    }

    let full = h0.try_add(h1)?;
    let k = vecs.len();
    let mut m = HermitianOperator::zeros(k);
    for i in 0..k {
        for j in i..k {
            m.set_hermitian(i, j, full.matrix_element(&vecs[i], &vecs[j])?);
        }
    }
    Ok(m)
}

/// Effective matrix of `regime` on its own degenerate set.
pub fn regime_effective_matrix<T: Real>(
    regime: Regime,
    params: &BarbellParams<T>,
) -> Result<HermitianOperator<T>> {
    let (h0, h1) = split_hamiltonian(params, regime)?;
    let set: Vec<_> = degenerate_set(regime, params)?
        .into_iter()
        .map(|p| p.vector)
        .collect();
    effective_degenerate_matrix(&h0, &h1, &set)
}

fn normalized<T: Real>(v: [T; SUBSPACE_DIM]) -> [T; SUBSPACE_DIM] {
    let norm = v.iter().map(|&x| x * x).sum::<T>().sqrt();
    v.map(|x| x / norm)
}

/// Normalized closed-form eigenpairs of `H0 + H1` within the degenerate set,
/// evaluated at the critical jumping rate.
pub fn closed_form_perturbed_eigensystem<T: Real>(
    regime: Regime,
    params: &BarbellParams<T>,
) -> Result<Vec<LabeledEigenpair<T>>> {
    check_regime(regime, params)?;
    let n = T::from_count(params.n());
    let two = T::lit(2.0);
    let z = T::zero();
    let one = T::one();

    if regime == Regime::AdjacencyResonant {
        let r2 = two.sqrt();
        let sp = (two + r2).sqrt();
        let sm = (two - r2).sqrt();
        let ep = ((two + r2) / n).sqrt();
        let em = ((two - r2) / n).sqrt();
        // |cd> = (|c> + |d>)/√2 spreads its coefficient over c and d.
        let split = |x: T| x / r2;
        let pair = |label, v: [T; 5], eigenvalue| LabeledEigenpair {
            label,
            vector: normalized(v),
            eigenvalue,
        };
        return Ok(vec![
            pair(
                "psi1 = √(2+√2)|a> + (1+√2)|b> + √(2+√2)|cd> + |e>",
                [sp, one + r2, split(sp), split(sp), one],
                -one - ep,
            ),
            pair(
                "psi2 = -√(2+√2)|a> + (1+√2)|b> - √(2+√2)|cd> + |e>",
                [-sp, one + r2, -split(sp), -split(sp), one],
                -one + ep,
            ),
            pair(
                "psi3 = -√(2-√2)|a> + (1-√2)|b> + √(2-√2)|cd> + |e>",
                [-sm, one - r2, split(sm), split(sm), one],
                -one - em,
            ),
            pair(
                "psi4 = √(2-√2)|a> + (1-√2)|b> - √(2-√2)|cd> + |e>",
                [sm, one - r2, -split(sm), -split(sm), one],
                -one + em,
            ),
        ]);
    }

    let gap = (two / n).sqrt();
    let shift = match regime.kind() {
        WalkKind::Laplacian => z,
        // Adjacency eigenvalues sit γN/2 below the Laplacian ones.
        WalkKind::Adjacency => -params.gamma() * params.half(),
    };
    let r = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    Ok(vec![
        LabeledEigenpair {
            label: "psi1 = (|a> + |b>)/√2",
            vector: [r, r, z, z, z],
            eigenvalue: shift - gap,
        },
        LabeledEigenpair {
            label: "psi2 = (-|a> + |b>)/√2",
            vector: [-r, r, z, z, z],
            eigenvalue: shift + gap,
        },
        LabeledEigenpair {
            label: "psi3 = |e>",
            vector: [z, z, z, z, one],
            eigenvalue: shift,
        },
    ])
}

/// Numerical check of one regime's perturbative claims.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport<T> {
    /// Largest gap between closed-form eigenvalues and the numerically
    /// diagonalized effective matrix.
    pub effective_eigenvalue_deviation: T,
    /// Largest `1 - |<closed form|numeric>|` over the eigenvectors.
    pub overlap_deficit: T,
    /// Largest distance from a closed-form eigenvalue to the nearest exact
    /// eigenvalue of the untruncated subspace Hamiltonian.
    pub exact_eigenvalue_deviation: T,
}

pub fn verify_regime<T: Real>(
    regime: Regime,
    params: &BarbellParams<T>,
) -> Result<RegimeReport<T>> {
    let set = degenerate_set(regime, params)?;
    let (h0, h1) = split_hamiltonian(params, regime)?;
    let basis_vecs: Vec<_> = set.iter().map(|p| p.vector).collect();
    let eff = effective_degenerate_matrix(&h0, &h1, &basis_vecs)?;
    let numeric = eigendecompose(&eff)?;
    let closed = closed_form_perturbed_eigensystem(regime, params)?;

    let mut eig_dev = T::zero();
    let mut deficit = T::zero();
    for pair in &closed {
        // closed-form vector in degenerate-set coordinates
        let coords: Vec<T> = basis_vecs
            .iter()
            .map(|u| u.iter().zip(&pair.vector).map(|(&x, &y)| x * y).sum())
            .collect();
        let (best, overlap) = (0..numeric.dim())
            .map(|j| {
                let ov: crate::scalar::Cplx<T> = numeric
                    .eigenvector(j)
                    .iter()
                    .zip(&coords)
                    .map(|(u, &c)| u.conj() * c)
                    .sum();
                (j, ov.norm())
            })
            .fold(
                (0, T::neg_infinity()),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            );
        eig_dev = eig_dev.max((numeric.eigenvalues()[best] - pair.eigenvalue).abs());
        deficit = deficit.max(T::one() - overlap);
    }

    let exact = eigendecompose(&build_search_hamiltonian(params))?;
    let exact_dev = closed
        .iter()
        .map(|p| {
            exact
                .eigenvalues()
                .iter()
                .map(|&x| (x - p.eigenvalue).abs())
                .fold(T::infinity(), T::min)
        })
        .fold(T::zero(), T::max);

    Ok(RegimeReport {
        effective_eigenvalue_deviation: eig_dev,
        overlap_deficit: deficit,
        exact_eigenvalue_deviation: exact_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, w: f64, kind: WalkKind) -> BarbellParams<f64> {
        BarbellParams::critical(n, w, kind).unwrap()
    }

    #[test]
    fn laplacian_small_h0_diagonal() {
        let params = p(1024, 1.0, WalkKind::Laplacian);
        let (h0, _) = split_hamiltonian(&params, Regime::LaplacianSmall).unwrap();
        let g = params.gamma();
        let expected = [-g * (-512.0 + 1.0 / g), 0.0, g * 512.0, g * 512.0, 0.0];
        for (i, e) in expected.iter().enumerate() {
            assert!((h0.get(i, i).re - e).abs() < 1e-15);
        }
        assert_eq!(
            h0.max_abs_diff(&HermitianOperator::diagonal(&expected))
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn resonant_bridge_block() {
        let params = p(1024, 512.0, WalkKind::Adjacency);
        let (h0, _) = split_hamiltonian(&params, Regime::AdjacencyResonant).unwrap();
        assert_eq!(h0.get(basis::C, basis::D).re, -1.0);
        assert_eq!(h0.get(basis::D, basis::C).re, -1.0);
    }

    #[test]
    fn medium_and_large_laplacian_sum_identically() {
        let params = p(1024, 100.0, WalkKind::Laplacian);
        let (m0, m1) = split_hamiltonian(&params, Regime::LaplacianMedium).unwrap();
        let (l0, l1) = split_hamiltonian(&params, Regime::LaplacianLarge).unwrap();
        let mid = m0.try_add(&m1).unwrap();
        let large = l0.try_add(&l1).unwrap();
        assert!(mid.max_abs_diff(&large).unwrap() < 1e-15);
    }

    #[test]
    fn regime_mismatch_errors() {
        let lap = p(1024, 512.0, WalkKind::Laplacian);
        assert!(matches!(
            split_hamiltonian(&lap, Regime::AdjacencyResonant),
            Err(Error::RegimeMismatch { .. })
        ));
        let off = p(1024, 500.0, WalkKind::Adjacency);
        assert!(matches!(
            split_hamiltonian(&off, Regime::AdjacencyResonant),
            Err(Error::RegimeMismatch { .. })
        ));
        let res = p(1024, 512.0, WalkKind::Adjacency);
        assert!(matches!(
            split_hamiltonian(&res, Regime::AdjacencyLargeOffResonant),
            Err(Error::RegimeMismatch { .. })
        ));
        let wrong_gamma = BarbellParams::new(1024, 512.0, 0.01, WalkKind::Adjacency).unwrap();
        assert!(matches!(
            h0_eigensystem(Regime::AdjacencyResonant, &wrong_gamma),
            Err(Error::RegimeMismatch { .. })
        ));
    }

    #[test]
    fn h0_lists_are_eigenpairs() {
        let cases = [
            (Regime::LaplacianSmall, 1024, 1.0),
            (Regime::LaplacianMedium, 1024, 100.0),
            (Regime::LaplacianLarge, 1024, 4096.0),
            (Regime::AdjacencySmall, 1024, 1.0),
            (Regime::AdjacencyMedium, 1024, 100.0),
            (Regime::AdjacencyResonant, 1024, 512.0),
            (Regime::AdjacencyLargeOffResonant, 1024, 2048.0),
        ];
        for (regime, n, w) in cases {
            let params = p(n, w, regime.kind());
            let (h0, _) = split_hamiltonian(&params, regime).unwrap();
            for pair in h0_eigensystem(regime, &params).unwrap() {
                let hv = h0.apply_real(&pair.vector).unwrap();
                for (x, &v) in hv.iter().zip(&pair.vector) {
                    assert!(
                        (x.re - pair.eigenvalue * v).abs() < 1e-12,
                        "{regime:?} {}",
                        pair.label
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_sets_per_regime() {
        let labels = |r, w, kind| -> Vec<&str> {
            degenerate_set(r, &p(1024, w, kind))
                .unwrap()
                .iter()
                .map(|x| x.label)
                .collect()
        };
        assert_eq!(
            labels(Regime::LaplacianSmall, 1.0, WalkKind::Laplacian),
            ["|a>", "|b>", "|e>"]
        );
        assert_eq!(
            labels(Regime::AdjacencyResonant, 512.0, WalkKind::Adjacency),
            ["|a>", "|b>", "|cd>", "|e>"]
        );
        assert_eq!(
            labels(
                Regime::AdjacencyLargeOffResonant,
                2048.0,
                WalkKind::Adjacency
            ),
            ["|a>", "|b>", "|e>"]
        );
        let off = h0_eigensystem(
            Regime::AdjacencyLargeOffResonant,
            &p(1024, 2048.0, WalkKind::Adjacency),
        )
        .unwrap();
        assert!((off[2].eigenvalue + 4.0).abs() < 1e-15);
    }

    #[test]
    fn not_degenerate_is_rejected() {
        let params = p(1024, 1.0, WalkKind::Laplacian);
        let (h0, h1) = split_hamiltonian(&params, Regime::LaplacianSmall).unwrap();
        // |a> (eigenvalue 0) with |c> (eigenvalue 1)
        let bad = [[1.0, 0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0, 0.0]];
        assert!(matches!(
            effective_degenerate_matrix(&h0, &h1, &bad),
            Err(Error::NotDegenerate(_))
        ));
        let not_eigen = [[1.0, 0.0, 1.0, 0.0, 0.0]];
        assert!(matches!(
            effective_degenerate_matrix(&h0, &h1, &not_eigen),
            Err(Error::NotDegenerate(_))
        ));
    }

    #[test]
    fn closed_forms_are_orthonormal() {
        for (regime, w) in [
            (Regime::LaplacianSmall, 1.0),
            (Regime::AdjacencyResonant, 512.0),
            (Regime::AdjacencyLargeOffResonant, 2048.0),
        ] {
            let set =
                closed_form_perturbed_eigensystem(regime, &p(1024, w, regime.kind())).unwrap();
            for (i, u) in set.iter().enumerate() {
                for (j, v) in set.iter().enumerate() {
                    let dot: f64 = u.vector.iter().zip(&v.vector).map(|(a, b)| a * b).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - target).abs() < 1e-12, "{regime:?} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn closed_form_values() {
        let lap = closed_form_perturbed_eigensystem(
            Regime::LaplacianSmall,
            &p(1024, 1.0, WalkKind::Laplacian),
        )
        .unwrap();
        assert!((lap[0].eigenvalue + 0.04419417382415922).abs() < 1e-15);
        let res = closed_form_perturbed_eigensystem(
            Regime::AdjacencyResonant,
            &p(1024, 512.0, WalkKind::Adjacency),
        )
        .unwrap();
        // -1 - √((2+√2)/1024)
        assert!((res[0].eigenvalue + 1.0577424707819554).abs() < 1e-14);
    }
}
