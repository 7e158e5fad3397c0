//! Dense Hermitian operators and the two eigensolvers behind
//! [`crate::propagator::eigendecompose`].
//!
//! Real symmetric input goes through Householder tridiagonalization followed
//! by implicit QL iteration. Genuinely complex input goes through cyclic
//! Jacobi with complex phase-adjusted rotations, which is only intended for
//! small matrices.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{real, Cplx, Real};

/// Dense complex Hermitian matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T> {
    dim: usize,
    entries: Vec<Cplx<T>>,
}

impl<T: Real> HermitianOperator<T> {
    /// Validates Hermiticity to within `1e-12` (scaled by the largest entry).
    pub fn new(dim: usize, entries: Vec<Cplx<T>>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        let op = Self { dim, entries };
        let scale = op.max_abs().max(T::one());
        let dev = op.hermiticity_error();
        if dev.is_nan() || dev > T::tol(1e-12) * scale {
            return Err(Error::NotHermitian(dev.as_f64()));
        }
        Ok(op)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Cplx::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            op.entries[i * dim + i] = real(T::one());
        }
        op
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let mut op = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            op.entries[i * diag.len() + i] = real(d);
        }
        op
    }

    /// Builds a real symmetric operator from its upper triangle.
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = real(f(i, j));
                op.entries[i * dim + j] = v;
                op.entries[j * dim + i] = v;
            }
        }
        op
    }

    /// Builds a real symmetric operator from nested rows; only the upper
    /// triangle is read.
    pub fn from_real_rows<const D: usize>(rows: [[T; D]; D]) -> Self {
        Self::from_upper_fn(D, |i, j| rows[i][j])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cplx<T> {
        self.entries[i * self.dim + j]
    }

    /// Sets `(i, j)` and its mirror `(j, i)` to keep the operator Hermitian.
    pub fn set_hermitian(&mut self, i: usize, j: usize, value: Cplx<T>) {
        let d = self.dim;
        if i == j {
            self.entries[i * d + i] = real(value.re);
        } else {
            self.entries[i * d + j] = value;
            self.entries[j * d + i] = value.conj();
        }
    }

    pub fn entries(&self) -> &[Cplx<T>] {
        &self.entries
    }

    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), T::max)
    }

    /// `max |H_ij - conj(H_ji)|`.
    pub fn hermiticity_error(&self) -> T {
        let d = self.dim;
        let mut worst = T::zero();
        for i in 0..d {
            for j in i..d {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == T::zero())
    }

    pub fn trace(&self) -> Cplx<T> {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn apply(&self, v: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok(self
            .entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }

    /// `H · v` for a real vector.
    pub fn apply_real(&self, v: &[T]) -> Result<Vec<Cplx<T>>> {
        let cv: Vec<Cplx<T>> = v.iter().map(|&x| real(x)).collect();
        self.apply(&cv)
    }

    /// `<v|H|v>` (real for Hermitian `H`).
    pub fn expectation(&self, v: &[Cplx<T>]) -> Result<T> {
        let hv = self.apply(v)?;
        Ok(v.iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum())
    }

    /// `<u|H|v>`.
    pub fn matrix_element(&self, u: &[Cplx<T>], v: &[Cplx<T>]) -> Result<Cplx<T>> {
        let hv = self.apply(v)?;
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: u.len(),
            });
        }
        Ok(u.iter().zip(&hv).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scaled(&self, k: T) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * k).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Cplx<T>, Cplx<T>) -> Cplx<T>) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `max |A_ij - B_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        Ok(self.try_sub(other)?.max_abs())
    }

    /// Real parts, row-major.
    pub(crate) fn real_part(&self) -> Vec<T> {
        self.entries.iter().map(|z| z.re).collect()
    }
}

impl<T: Real> Index<(usize, usize)> for HermitianOperator<T> {
    type Output = Cplx<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Cplx<T> {
        &self.entries[i * self.dim + j]
    }
}

/// Raw output of an eigensolver: unsorted eigenvalues and eigenvectors stored
/// column-major (`vectors[k * n + i]` is component `i` of vector `k`).
pub(crate) struct RawEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Cplx<T>>,
}

const MAX_QL_ITERATIONS: usize = 60;

/// Eigen-decomposition of a real symmetric matrix given row-major.
pub(crate) fn symmetric_eigen<T: Real>(n: usize, a: &[T]) -> Result<RawEigen<T>> {
    debug_assert_eq!(a.len(), n * n);
    // Column-major working copy; `a` is symmetric so the layout of the input
    // does not matter.
    let mut v = a.to_vec();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    if n == 0 {
        return Ok(RawEigen {
            values: d,
            vectors: Vec::new(),
        });
    }
    tridiagonalize(n, &mut v, &mut d, &mut e);
    implicit_ql(n, &mut v, &mut d, &mut e)?;
    Ok(RawEigen {
        values: d,
        vectors: v.into_iter().map(real).collect(),
    })
}

/// Householder reduction to tridiagonal form, accumulating the orthogonal
/// transform in `v` (column-major, `v[c * n + r]`).
fn tridiagonalize<T: Real>(n: usize, v: &mut [T], d: &mut [T], e: &mut [T]) {
    let at = |r: usize, c: usize| c * n + r;

    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }

    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for &dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
                v[at(j, i)] = T::zero();
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in &mut e[..i] {
                *ej = T::zero();
            }

            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                let col = &v[at(0, j)..at(0, j) + n];
                for k in (j + 1)..i {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                let col = &mut v[at(0, j)..at(0, j) + n];
                for k in j..i {
                    col[k] -= f * e[k] + g * d[k];
                }
                d[j] = col[i - 1];
                col[i] = T::zero();
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    let dk = d[k];
                    v[at(k, j)] -= g * dk;
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = T::zero();
    }
    v[at(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
}

/// Implicit QL iteration on the tridiagonal `(d, e)`, rotating the columns
/// of `v`.
fn implicit_ql<T: Real>(n: usize, v: &mut [T], d: &mut [T], e: &mut [T]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let eps = T::epsilon();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        // e[n-1] == 0 guarantees the scan stops inside the matrix.
        let m = m.min(n - 1);

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::ConvergenceFailure(iter));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (e[l] + e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[(l + 2)..n] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (left, right) = v.split_at_mut((i + 1) * n);
                    let col_i = &mut left[i * n..];
                    let col_i1 = &mut right[..n];
                    for (vi, vi1) in col_i.iter_mut().zip(col_i1.iter_mut()) {
                        let hk = *vi1;
                        *vi1 = s * *vi + c * hk;
                        *vi = c * *vi - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    Ok(())
}

const MAX_JACOBI_SWEEPS: usize = 100;

/// Cyclic Jacobi eigen-decomposition of a complex Hermitian matrix.
pub(crate) fn jacobi_eigen<T: Real>(op: &HermitianOperator<T>) -> Result<RawEigen<T>> {
    let n = op.dim();
    // Row-major working copy of the matrix and the accumulated unitary
    // (column-major, matching RawEigen).
    let mut a: Vec<Cplx<T>> = op.entries().to_vec();
    let mut v = vec![real(T::zero()); n * n];
    for i in 0..n {
        v[i * n + i] = real(T::one());
    }
    let idx = |r: usize, c: usize| r * n + c;
    let vat = |r: usize, c: usize| c * n + r;

    let scale = op.max_abs().max(T::min_positive_value());
    let threshold = T::epsilon() * scale;

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[idx(p, q)].norm());
            }
        }
        if off <= threshold {
            return Ok(RawEigen {
                values: (0..n).map(|i| a[idx(i, i)].re).collect(),
                vectors: v,
            });
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let z = a[idx(p, q)];
                let r = z.norm();
                if r <= threshold {
                    continue;
                }
                // Rotate column/row q by the phase of a_pq so the pivot is real.
                let ph = z.conj() / r; // e^{-i phi}
                for k in 0..n {
                    a[idx(k, q)] = a[idx(k, q)] * ph;
                }
                for k in 0..n {
                    a[idx(q, k)] = a[idx(q, k)] * ph.conj();
                }
                for k in 0..n {
                    v[vat(k, q)] = v[vat(k, q)] * ph;
                }

                let app = a[idx(p, p)].re;
                let aqq = a[idx(q, q)].re;
                let theta = (aqq - app) / (r + r);
                let mut t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                if theta < T::zero() {
                    t = -t;
                }
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    let nkp = akp * c - akq * s;
                    let nkq = akp * s + akq * c;
                    a[idx(k, p)] = nkp;
                    a[idx(p, k)] = nkp.conj();
                    a[idx(k, q)] = nkq;
                    a[idx(q, k)] = nkq.conj();
                }
                a[idx(p, p)] = real(app - t * r);
                a[idx(q, q)] = real(aqq + t * r);
                a[idx(p, q)] = real(T::zero());
                a[idx(q, p)] = real(T::zero());

                for k in 0..n {
                    let vkp = v[vat(k, p)];
                    let vkq = v[vat(k, q)];
                    v[vat(k, p)] = vkp * c - vkq * s;
                    v[vat(k, q)] = vkp * s + vkq * c;
                }
            }
        }
    }
    Err(Error::ConvergenceFailure(MAX_JACOBI_SWEEPS))
}
