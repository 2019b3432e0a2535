//! Dense square tensors and the multilinear primitives built on them.
//!
//! A tensor of order `m` and dimension `n` stores `n^m` reals in row-major
//! order (first index slowest). Vectors are plain `f64` slices.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted set of distinct indices, used to select principal subtensors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Builds a set from arbitrary indices; duplicates are rejected, order is normalized.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("duplicate index in {indices:?}")));
        }
        Ok(IndexSet(indices))
    }

    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    /// Members of the bitmask `mask` over `{0, .., n-1}`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        IndexSet((0..n).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    fn validate_for(&self, n: usize) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::InvalidIndexSet("empty index set".into()));
        }
        if let Some(&bad) = self.0.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidIndexSet(format!("index {bad} out of range for dimension {n}")));
        }
        Ok(())
    }
}

/// Result of an entrywise comparison between two tensors of equal shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    /// Every entry of the left tensor is `<=` the right one.
    pub leq: bool,
    /// `leq` holds and the tensors differ somewhere.
    pub lt: bool,
    pub eq: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
}

impl Tensor {
    pub fn new(order: usize, dim: usize, entries: Vec<f64>) -> Result<Self> {
        if order == 0 || dim == 0 {
            return Err(Error::EmptyShape { order, dim });
        }
        let expected = checked_len(order, dim)?;
        if entries.len() != expected {
            return Err(Error::EntryCount { order, dim, expected, actual: entries.len() });
        }
        Ok(Tensor { order, dim, entries })
    }

    pub fn zeros(order: usize, dim: usize) -> Self {
        Self::filled(order, dim, 0.0)
    }

    pub fn filled(order: usize, dim: usize, value: f64) -> Self {
        assert!(order >= 1 && dim >= 1, "order and dim must be positive");
        Tensor { order, dim, entries: vec![value; dim.pow(order as u32)] }
    }

    /// The all-ones tensor.
    pub fn ones(order: usize, dim: usize) -> Self {
        Self::filled(order, dim, 1.0)
    }

    /// Unit tensor: ones on the superdiagonal `i1 = .. = im`.
    pub fn identity(order: usize, dim: usize) -> Self {
        let mut t = Self::zeros(order, dim);
        let stride = t.diagonal_stride();
        for i in 0..dim {
            t.entries[i * stride] = 1.0;
        }
        t
    }

    /// Diagonal tensor with the given superdiagonal.
    pub fn diagonal(order: usize, diag: &[f64]) -> Self {
        let mut t = Self::zeros(order, diag.len());
        let stride = t.diagonal_stride();
        for (i, &d) in diag.iter().enumerate() {
            t.entries[i * stride] = d;
        }
        t
    }

    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut t = Self::zeros(order, dim);
        let mut idx = vec![0usize; order];
        for flat in 0..t.entries.len() {
            t.decode_into(flat, &mut idx);
            t.entries[flat] = f(&idx);
        }
        t
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Flat offset between consecutive superdiagonal entries.
    pub(crate) fn diagonal_stride(&self) -> usize {
        (0..self.order).fold(0, |acc, _| acc * self.dim + 1)
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    /// Writes the multi-index of `flat` into `out` (length `order`).
    pub fn decode_into(&self, mut flat: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
    }

    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.order];
        self.decode_into(flat, &mut out);
        out
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.entries[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let k = self.flat_index(idx);
        self.entries[k] = value;
    }

    pub fn is_diagonal_index(idx: &[usize]) -> bool {
        idx.windows(2).all(|w| w[0] == w[1])
    }

    pub fn diagonal_entries(&self) -> Vec<f64> {
        let stride = self.diagonal_stride();
        (0..self.dim).map(|i| self.entries[i * stride]).collect()
    }

    fn check_vector(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: x.len() });
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Tensor) -> Result<()> {
        if self.order != other.order || self.dim != other.dim {
            return Err(Error::ShapeMismatch(self.order, self.dim, other.order, other.dim));
        }
        Ok(())
    }

    /// `A x^{m-1}`: the vector with components `sum A[i, i2, .., im] x[i2] .. x[im]`.
    ///
    /// Contracts the trailing index first, so the summation order is fixed and
    /// lexicographic in `(i2, .., im)`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        Ok(self.contract_tail(x))
    }

    pub(crate) fn contract_tail(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut buf = self.entries.clone();
        let mut len = buf.len();
        for _ in 1..self.order {
            len /= n;
            for p in 0..len {
                let row = &buf[p * n..(p + 1) * n];
                let mut acc = 0.0;
                for (a, xi) in row.iter().zip(x) {
                    acc += a * xi;
                }
                buf[p] = acc;
            }
        }
        buf.truncate(n);
        buf
    }

    /// The homogeneous form `A x^m`.
    pub fn form_value(&self, x: &[f64]) -> Result<f64> {
        self.check_vector(x)?;
        Ok(dot(x, &self.contract_tail(x)))
    }

    /// Gradient of `x -> A x^m`: every index position contributes the
    /// contraction over the remaining positions.
    pub fn form_gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        let mut grad = vec![0.0; self.dim];
        self.for_each_partial(x, 0, |pos_index, partial| grad[pos_index] += partial);
        Ok(grad)
    }

    /// Jacobian of `x -> A x^{m-1}` as row-major `n x n`; entry `(i, k)` is
    /// `d (A x^{m-1})_i / d x_k`.
    pub fn apply_jacobian(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        let n = self.dim;
        let mut jac = vec![0.0; n * n];
        let mut idx = vec![0usize; self.order];
        let mut prefix = vec![1.0; self.order + 1];
        let mut suffix = vec![1.0; self.order + 1];
        for (flat, &a) in self.entries.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            self.decode_into(flat, &mut idx);
            let tail = &idx[1..];
            partial_products(tail, x, &mut prefix, &mut suffix);
            for (p, &k) in tail.iter().enumerate() {
                jac[idx[0] * n + k] += a * prefix[p] * suffix[p + 1];
            }
        }
        Ok(jac)
    }

    // Calls `f(i_p, A[idx] * prod_{q != p} x[i_q])` for every entry and every
    // position p >= `first`.
    fn for_each_partial(&self, x: &[f64], first: usize, mut f: impl FnMut(usize, f64)) {
        let mut idx = vec![0usize; self.order];
        let mut prefix = vec![1.0; self.order + 1];
        let mut suffix = vec![1.0; self.order + 1];
        for (flat, &a) in self.entries.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            self.decode_into(flat, &mut idx);
            let roles = &idx[first..];
            partial_products(roles, x, &mut prefix, &mut suffix);
            for (p, &k) in roles.iter().enumerate() {
                f(k, a * prefix[p] * suffix[p + 1]);
            }
        }
    }

    pub fn principal_subtensor(&self, alpha: &IndexSet) -> Result<Tensor> {
        alpha.validate_for(self.dim)?;
        let sel = alpha.as_slice();
        let r = sel.len();
        let mut src = vec![0usize; self.order];
        Ok(Tensor::from_fn(self.order, r, |idx| {
            for (s, &k) in src.iter_mut().zip(idx) {
                *s = sel[k];
            }
            self.get(&src)
        }))
    }

    /// `C = A B .. B` with `C[i1..im] = sum A[j1..jm] B[i1, j1] .. B[im, jm]`.
    pub fn matrix_product(&self, b: &DMatrix<f64>) -> Result<Tensor> {
        if b.nrows() != self.dim || b.ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: b.nrows().max(b.ncols()) });
        }
        // Mode-k products applied one index position at a time.
        let n = self.dim;
        let mut cur = self.entries.clone();
        let mut next = vec![0.0; cur.len()];
        for pos in 0..self.order {
            let inner = n.pow((self.order - pos - 1) as u32);
            let outer = cur.len() / (inner * n);
            for o in 0..outer {
                for i in 0..n {
                    for q in 0..inner {
                        let mut acc = 0.0;
                        for j in 0..n {
                            acc += b[(i, j)] * cur[(o * n + j) * inner + q];
                        }
                        next[(o * n + i) * inner + q] = acc;
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(Tensor { order: self.order, dim: n, entries: cur })
    }

    pub fn compare(&self, other: &Tensor) -> Result<Comparison> {
        self.check_same_shape(other)?;
        let leq = self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b);
        let eq = self.entries == other.entries;
        Ok(Comparison { leq, lt: leq && !eq, eq })
    }

    /// First multi-index where `self > other`, if any.
    pub fn first_exceeding(&self, other: &Tensor) -> Result<Option<Vec<usize>>> {
        self.check_same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a > b)
            .map(|k| self.multi_index(k)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&a| a >= 0.0)
    }

    pub(crate) fn require_nonnegative(&self) -> Result<()> {
        match self.entries.iter().position(|&a| !(a >= 0.0)) {
            Some(k) => Err(Error::NegativeEntry { index: self.multi_index(k), value: self.entries[k] }),
            None => Ok(()),
        }
    }

    /// Invariance under every permutation of index positions.
    pub fn is_symmetric(&self) -> bool {
        let mut idx = vec![0usize; self.order];
        let mut sorted = vec![0usize; self.order];
        for (flat, &a) in self.entries.iter().enumerate() {
            self.decode_into(flat, &mut idx);
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            if self.get(&sorted) != a {
                return false;
            }
        }
        true
    }

    /// Averages every entry over its permutation orbit.
    pub fn symmetrized(&self) -> Tensor {
        use std::collections::HashMap;
        let mut sums: HashMap<Vec<usize>, (f64, usize)> = HashMap::new();
        let mut idx = vec![0usize; self.order];
        for (flat, &a) in self.entries.iter().enumerate() {
            self.decode_into(flat, &mut idx);
            let mut key = idx.clone();
            key.sort_unstable();
            let e = sums.entry(key).or_insert((0.0, 0));
            e.0 += a;
            e.1 += 1;
        }
        Tensor::from_fn(self.order, self.dim, |idx| {
            let mut key = idx.to_vec();
            key.sort_unstable();
            let (s, c) = sums[&key];
            s / c as f64
        })
    }

    /// `a (A + b I)`.
    pub fn scale_shift(&self, a: f64, b: f64) -> Tensor {
        let mut out = self.clone();
        if b != 0.0 {
            let stride = self.diagonal_stride();
            for i in 0..self.dim {
                out.entries[i * stride] += b;
            }
        }
        for e in &mut out.entries {
            *e *= a;
        }
        out
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scaled(&self, c: f64) -> Tensor {
        self.map(|a| a * c)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Tensor {
        Tensor { order: self.order, dim: self.dim, entries: self.entries.iter().map(|&a| f(a)).collect() }
    }

    pub fn zip_with(&self, other: &Tensor, f: impl Fn(f64, f64) -> f64) -> Result<Tensor> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            order: self.order,
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// First off-diagonal entry that is strictly positive.
    pub fn positive_off_diagonal(&self) -> Option<(Vec<usize>, f64)> {
        let mut idx = vec![0usize; self.order];
        for (flat, &a) in self.entries.iter().enumerate() {
            if a > 0.0 {
                self.decode_into(flat, &mut idx);
                if !Self::is_diagonal_index(&idx) {
                    return Some((idx, a));
                }
            }
        }
        None
    }

    /// Every off-diagonal entry is `<= 0`.
    pub fn is_z(&self) -> bool {
        self.positive_off_diagonal().is_none()
    }

    /// Views an order-2 tensor as a matrix.
    pub fn to_matrix(&self) -> Option<DMatrix<f64>> {
        (self.order == 2).then(|| DMatrix::from_row_slice(self.dim, self.dim, &self.entries))
    }

    pub fn from_matrix(m: &DMatrix<f64>) -> Result<Tensor> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), actual: m.ncols() });
        }
        let n = m.nrows();
        Tensor::new(2, n, (0..n * n).map(|k| m[(k / n, k % n)]).collect())
    }
}

fn checked_len(order: usize, dim: usize) -> Result<usize> {
    let mut len = 1usize;
    for _ in 0..order {
        len = len
            .checked_mul(dim)
            .ok_or_else(|| Error::Format(format!("tensor with order {order} and dim {dim} is too large")))?;
    }
    Ok(len)
}

fn partial_products(roles: &[usize], x: &[f64], prefix: &mut [f64], suffix: &mut [f64]) {
    let k = roles.len();
    prefix[0] = 1.0;
    for p in 0..k {
        prefix[p + 1] = prefix[p] * x[roles[p]];
    }
    suffix[k] = 1.0;
    for p in (0..k).rev() {
        suffix[p] = suffix[p + 1] * x[roles[p]];
    }
}

/// Componentwise `x_i^k`.
pub fn hadamard_power(x: &[f64], k: u32) -> Vec<f64> {
    x.iter().map(|v| v.powi(k as i32)).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub fn max_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Diagonal matrix with the given diagonal.
pub fn diag_matrix(d: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d))
}
