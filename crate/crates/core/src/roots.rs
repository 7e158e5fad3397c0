//! One-dimensional root bracketing, bisection and golden-section search.

use crate::scalar::Real;

/// Scans `[lo, hi]` on a uniform grid of spacing `step` and returns every
/// interval `[x_k, x_{k+1}]` across which `f` changes sign, plus degenerate
/// intervals where a grid point is an exact zero.
pub fn bracket_roots<T: Real>(f: impl Fn(T) -> T, lo: T, hi: T, step: T) -> Vec<(T, T)> {
    let steps = ((hi - lo) / step).ceil().to_usize().unwrap_or(0);
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == T::zero() {
        out.push((x0, x0));
    }
    for k in 1..=steps {
        let x1 = (lo + step * T::from_count(k)).min(hi);
        let f1 = f(x1);
        if f1 == T::zero() {
            out.push((x1, x1));
        } else if f0 != T::zero() && (f0 < T::zero()) != (f1 < T::zero()) {
            out.push((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

/// Bisection on a sign-changing bracket until its width is at most `tol`.
pub fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T) -> T {
    let mut flo = f(lo);
    if flo == T::zero() {
        return lo;
    }
    if f(hi) == T::zero() {
        return hi;
    }
    let two = T::lit(2.0);
    // Bounded by the number of halvings that can shrink a float interval.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / two
}

/// All roots of `f` on `[lo, hi]`, bracketed at `step` and bisected to `tol`.
pub fn find_roots<T: Real>(f: impl Fn(T) -> T, lo: T, hi: T, step: T, tol: T) -> Vec<T> {
    bracket_roots(&f, lo, hi, step)
        .into_iter()
        .map(|(a, b)| if a == b { a } else { bisect(&f, a, b, tol) })
        .collect()
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`;
/// stops when the bracket is narrower than `tol`.
pub fn golden_section_max<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
