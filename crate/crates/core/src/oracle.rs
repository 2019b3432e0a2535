//! Brute-force second opinions for the test suites and `--cross-check`.
//!
//! Nothing here calls into the contraction, spectral, structure or search
//! code: every oracle reads raw entries and does its own index arithmetic.
//! They are slow and capped on purpose.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::Tensor;

/// `lo <= rho <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, v: f64, slack: f64) -> bool {
        self.lo - slack <= v && v <= self.hi + slack
    }
}

pub const MATRIX_CAP: usize = 12;
pub const SUBSET_CAP: usize = 10;
pub const GRID_CAP: usize = 3;

fn check_nonnegative_matrix(m: &DMatrix<f64>) -> Result<()> {
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if m[(r, c)] < 0.0 {
                return Err(Error::NegativeEntry { index: vec![r, c], value: m[(r, c)] });
            }
        }
    }
    Ok(())
}

/// Largest eigenvalue modulus of a nonnegative square matrix, from a Schur
/// decomposition.
pub fn matrix_rho(m: &DMatrix<f64>) -> Result<f64> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch { expected: n, actual: m.ncols() });
    }
    if n > MATRIX_CAP {
        return Err(Error::TooLarge { dim: n, cap: MATRIX_CAP });
    }
    check_nonnegative_matrix(m)?;
    Ok(m.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max))
}

// Odometer over all multi-indices; index 0 of `idx` is the leading index.
fn next_index(idx: &mut [usize], n: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < n {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// `(A x^{m-1})_i` for every `i`, by scanning every entry.
fn naive_apply(a: &Tensor, x: &[f64]) -> Vec<f64> {
    let n = a.dim();
    let mut idx = vec![0usize; a.order()];
    let mut out = vec![0.0; n];
    let mut k = 0;
    loop {
        let mut term = a.entries()[k];
        for &j in &idx[1..] {
            term *= x[j];
        }
        out[idx[0]] += term;
        k += 1;
        if !next_index(&mut idx, n) {
            break;
        }
    }
    out
}

fn naive_form(a: &Tensor, x: &[f64]) -> f64 {
    naive_apply(a, x).iter().zip(x).map(|(y, xi)| y * xi).sum()
}

fn ratios(a: &Tensor, x: &[f64]) -> Vec<f64> {
    let p = (a.order() - 1) as i32;
    naive_apply(a, x).iter().zip(x).map(|(y, xi)| y / xi.powi(p)).collect()
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| (lo.min(r), hi.max(r)))
}

/// Every index reaches every other through "row `i` has a nonzero entry
/// mentioning `j`", by repeated relaxation.
fn weakly_linked(a: &Tensor) -> bool {
    let n = a.dim();
    if n == 1 {
        return true;
    }
    let mut edge = vec![vec![false; n]; n];
    let mut idx = vec![0usize; a.order()];
    let mut k = 0;
    loop {
        if a.entries()[k] != 0.0 {
            for &j in &idx[1..] {
                if j != idx[0] {
                    edge[idx[0]][j] = true;
                }
            }
        }
        k += 1;
        if !next_index(&mut idx, n) {
            break;
        }
    }
    (0..n).all(|s| {
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                if seen[i] {
                    for j in 0..n {
                        if edge[i][j] && !seen[j] {
                            seen[j] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        seen.into_iter().all(|v| v)
    })
}

/// Collatz-Wielandt bracket for `rho(A)` of a weakly irreducible nonnegative
/// tensor. A sum-normalized shifted power phase is followed by coordinate
/// hill climbing on each bound separately; `effort` bounds both phases.
/// The bracket is valid whatever the number of steps taken.
pub fn cw_refine(a: &Tensor, effort: usize) -> Result<Bracket> {
    if let Some(k) = a.entries().iter().position(|&v| v < 0.0) {
        return Err(Error::NegativeEntry { index: a.multi_index(k), value: a.entries()[k] });
    }
    if !weakly_linked(a) {
        return Err(Error::WeaklyReducible);
    }
    let n = a.dim();
    let p = (a.order() - 1) as f64;
    let mut x = vec![1.0 / n as f64; n];
    let (lo0, hi0) = min_max(&ratios(a, &x));
    let mut best = Bracket { lo: lo0, hi: hi0 };
    let mut best_lo_x = x.clone();
    let mut best_hi_x = x.clone();

    for _ in 0..effort {
        if best.width() <= 1e-13 * best.hi.abs().max(1.0) {
            break;
        }
        let y = naive_apply(a, &x);
        let mut next: Vec<f64> = y.iter().zip(&x).map(|(yi, xi)| (yi + xi.powf(p)).powf(1.0 / p)).collect();
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        x = next;
        let (lo, hi) = min_max(&ratios(a, &x));
        if lo > best.lo {
            best.lo = lo;
            best_lo_x = x.clone();
        }
        if hi < best.hi {
            best.hi = hi;
            best_hi_x = x.clone();
        }
    }

    // Shrinking the coordinate with the smallest ratio can only raise that
    // ratio; growing the one with the largest ratio can only lower it.
    let climb = |mut x: Vec<f64>, mut bound: f64, lower: bool| -> f64 {
        let mut factor = 1e-2;
        for _ in 0..effort {
            if factor < 1e-15 {
                break;
            }
            let r = ratios(a, &x);
            let i = if lower {
                (0..n).min_by(|&p, &q| r[p].total_cmp(&r[q]))
            } else {
                (0..n).max_by(|&p, &q| r[p].total_cmp(&r[q]))
            }
            .expect("nonempty");
            let mut trial = x.clone();
            trial[i] *= if lower { 1.0 - factor } else { 1.0 + factor };
            let (lo, hi) = min_max(&ratios(a, &trial));
            // Gains at rounding level are not evidence.
            let eps = 8.0 * f64::EPSILON * bound.abs().max(f64::MIN_POSITIVE);
            let better = if lower { lo > bound + eps } else { hi < bound - eps };
            if better {
                bound = if lower { lo } else { hi };
                x = trial;
            } else {
                factor *= 0.5;
            }
        }
        bound
    };
    best.lo = climb(best_lo_x, best.lo, true);
    best.hi = climb(best_hi_x, best.hi, false);
    Ok(best)
}

/// Irreducibility by trying every nonempty proper subset `alpha` and scanning
/// every entry for one with leading index in `alpha` and all trailing
/// indices outside it.
pub fn subset_irreducible(a: &Tensor) -> Result<bool> {
    let n = a.dim();
    if n > SUBSET_CAP {
        return Err(Error::TooLarge { dim: n, cap: SUBSET_CAP });
    }
    for mask in 1u32..(1u32 << n) - 1 {
        let inside = |i: usize| mask >> i & 1 == 1;
        let mut idx = vec![0usize; a.order()];
        let mut k = 0;
        let mut vanishes = true;
        loop {
            if inside(idx[0]) && idx[1..].iter().all(|&j| !inside(j)) && a.entries()[k] != 0.0 {
                vanishes = false;
                break;
            }
            k += 1;
            if !next_index(&mut idx, n) {
                break;
            }
        }
        if vanishes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimum of `A x^m` over a grid on the unit sphere with the given angular
/// step (radians), for `n <= 3`.
pub fn grid_min_form(a: &Tensor, resolution: f64) -> Result<f64> {
    let n = a.dim();
    if n > GRID_CAP {
        return Err(Error::TooLarge { dim: n, cap: GRID_CAP });
    }
    let tau = std::f64::consts::TAU;
    let pi = std::f64::consts::PI;
    let steps = |range: f64| (range / resolution).ceil() as usize;
    let mut best = f64::INFINITY;
    match n {
        1 => {
            for x in [1.0, -1.0] {
                best = best.min(naive_form(a, &[x]));
            }
        }
        2 => {
            let k = steps(tau);
            for t in 0..k {
                let th = tau * t as f64 / k as f64;
                best = best.min(naive_form(a, &[th.cos(), th.sin()]));
            }
        }
        _ => {
            let kt = steps(pi);
            let kp = steps(tau);
            for t in 0..=kt {
                let th = pi * t as f64 / kt as f64;
                for q in 0..kp {
                    let ph = tau * q as f64 / kp as f64;
                    let x = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
                    best = best.min(naive_form(a, &x));
                }
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorClass {
    P,
    P0,
    Neither,
}

// Gaussian elimination with partial pivoting.
fn determinant(mut rows: Vec<Vec<f64>>) -> f64 {
    let k = rows.len();
    let mut det = 1.0;
    for c in 0..k {
        let pivot = (c..k).max_by(|&p, &q| rows[p][c].abs().total_cmp(&rows[q][c].abs())).expect("nonempty");
        if rows[pivot][c] == 0.0 {
            return 0.0;
        }
        if pivot != c {
            rows.swap(pivot, c);
            det = -det;
        }
        det *= rows[c][c];
        for r in c + 1..k {
            let f = rows[r][c] / rows[c][c];
            if f != 0.0 {
                for j in c..k {
                    rows[r][j] -= f * rows[c][j];
                }
            }
        }
    }
    det
}

/// Every principal minor of `m`, keyed by the index bitmask.
pub fn principal_minors(m: &DMatrix<f64>) -> Result<Vec<(u32, f64)>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch { expected: n, actual: m.ncols() });
    }
    if n > MATRIX_CAP {
        return Err(Error::TooLarge { dim: n, cap: MATRIX_CAP });
    }
    Ok((1u32..1u32 << n)
        .map(|mask| {
            let alpha: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let rows = alpha.iter().map(|&r| alpha.iter().map(|&c| m[(r, c)]).collect()).collect();
            (mask, determinant(rows))
        })
        .collect())
}

/// P iff every principal minor is positive, P0 iff every one is nonnegative.
pub fn p_matrix_minors(m: &DMatrix<f64>) -> Result<MinorClass> {
    minor_class(m, 0.0)
}

/// As [`p_matrix_minors`] with minors in `[-tol, tol]` treated as zero.
pub fn minor_class(m: &DMatrix<f64>, tol: f64) -> Result<MinorClass> {
    let minors = principal_minors(m)?;
    Ok(if minors.iter().all(|&(_, d)| d > tol) {
        MinorClass::P
    } else if minors.iter().all(|&(_, d)| d >= -tol) {
        MinorClass::P0
    } else {
        MinorClass::Neither
    })
}

/// Definiteness of the quadratic form of `m`: its symmetric part is PD iff it
/// is a P-matrix and PSD iff it is a P0-matrix.
pub fn matrix_definiteness(m: &DMatrix<f64>, tol: f64) -> Result<MinorClass> {
    let sym = (m + m.transpose()) * 0.5;
    minor_class(&sym, tol)
}
