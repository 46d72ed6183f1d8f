//! Nonnegative square matrices and score vectors.
//!
//! Matrices are stored either densely (row-major) or compressed by column.
//! Both layouts accumulate `M x` in ascending column order, so a dense matrix
//! and its sparse copy give bit-identical products.

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Anything that can be applied to a vector as a nonnegative linear map.
///
/// Implementations must write `op * x` into `out` (both of length `dim()`),
/// overwriting its previous contents.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], out: &mut [f64]);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StorageKind {
    Dense,
    SparseByColumn,
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    /// Row-major, `n * n` entries.
    Dense(Vec<f64>),
    /// Compressed sparse column. Row indices are ascending within a column
    /// and all stored values are strictly positive.
    Csc {
        col_ptr: Vec<usize>,
        row_idx: Vec<usize>,
        values: Vec<f64>,
    },
}

/// Square matrix with nonnegative finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct NonNegMatrix {
    n: usize,
    storage: Storage,
}

fn check_entry(row: usize, col: usize, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidEntry { row, col, value })
    }
}

impl NonNegMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { n });
            }
            for (j, &v) in row.iter().enumerate() {
                check_entry(i, j, v)?;
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            n,
            storage: Storage::Dense(data),
        })
    }

    /// Dense matrix from `n * n` row-major entries.
    pub fn from_dense(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if data.len() != n * n {
            return Err(Error::NotSquare { n });
        }
        for (k, &v) in data.iter().enumerate() {
            check_entry(k / n, k % n, v)?;
        }
        Ok(Self {
            n,
            storage: Storage::Dense(data),
        })
    }

    /// Sparse matrix from `(row, col, value)` triplets. Duplicate positions
    /// are summed; explicit zeros are dropped.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut sorted = Vec::with_capacity(triplets.len());
        for &(i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: i.max(j) + 1,
                });
            }
            check_entry(i, j, v)?;
            sorted.push((j, i, v));
        }
        sorted.sort_by_key(|&(j, i, _)| (j, i));

        let mut col_ptr = vec![0usize; n + 1];
        let mut row_idx = Vec::with_capacity(sorted.len());
        let mut values: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut last: Option<(usize, usize)> = None;
        for (j, i, v) in sorted {
            if last == Some((j, i)) {
                *values.last_mut().expect("duplicate follows an entry") += v;
                continue;
            }
            row_idx.push(i);
            values.push(v);
            col_ptr[j + 1] += 1;
            last = Some((j, i));
        }
        for j in 0..n {
            col_ptr[j + 1] += col_ptr[j];
        }
        let m = Self {
            n,
            storage: Storage::Csc {
                col_ptr,
                row_idx,
                values,
            },
        };
        // Summed duplicates can only grow, but explicit zeros must go.
        Ok(m.compact())
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_dense(n, vec![0.0; n * n])
    }

    fn compact(self) -> Self {
        match &self.storage {
            Storage::Csc { values, .. } if values.contains(&0.0) => self.to_sparse_filtered(),
            _ => self,
        }
    }

    fn to_sparse_filtered(&self) -> Self {
        let n = self.n;
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        col_ptr.push(0);
        for j in 0..n {
            for (i, v) in self.column(j) {
                if v != 0.0 {
                    row_idx.push(i);
                    values.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Self {
            n,
            storage: Storage::Csc {
                col_ptr,
                row_idx,
                values,
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn storage_kind(&self) -> StorageKind {
        match self.storage {
            Storage::Dense(_) => StorageKind::Dense,
            Storage::Csc { .. } => StorageKind::SparseByColumn,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(
            i < self.n && j < self.n,
            "index ({i}, {j}) out of bounds for n = {}",
            self.n
        );
        match &self.storage {
            Storage::Dense(data) => data[i * self.n + j],
            Storage::Csc {
                col_ptr,
                row_idx,
                values,
            } => {
                let (lo, hi) = (col_ptr[j], col_ptr[j + 1]);
                match row_idx[lo..hi].binary_search(&i) {
                    Ok(k) => values[lo + k],
                    Err(_) => 0.0,
                }
            }
        }
    }

    /// Strictly positive entries of column `j` as `(row, value)`, rows ascending.
    pub fn column(&self, j: usize) -> Box<dyn Iterator<Item = (usize, f64)> + '_> {
        match &self.storage {
            Storage::Dense(data) => {
                let n = self.n;
                Box::new((0..n).map(move |i| (i, data[i * n + j])).filter(|&(_, v)| v > 0.0))
            }
            Storage::Csc {
                col_ptr,
                row_idx,
                values,
            } => {
                let range = col_ptr[j]..col_ptr[j + 1];
                Box::new(
                    row_idx[range.clone()]
                        .iter()
                        .copied()
                        .zip(values[range].iter().copied()),
                )
            }
        }
    }

    pub fn column_sum(&self, j: usize) -> f64 {
        self.column(j).map(|(_, v)| v).sum()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn to_dense(&self) -> Self {
        match &self.storage {
            Storage::Dense(_) => self.clone(),
            Storage::Csc { .. } => {
                let n = self.n;
                let mut data = vec![0.0; n * n];
                for j in 0..n {
                    for (i, v) in self.column(j) {
                        data[i * n + j] = v;
                    }
                }
                Self {
                    n,
                    storage: Storage::Dense(data),
                }
            }
        }
    }

    pub fn to_sparse(&self) -> Self {
        match &self.storage {
            Storage::Csc { .. } => self.clone(),
            Storage::Dense(_) => self.to_sparse_filtered(),
        }
    }

    /// Entrywise map that keeps the storage layout. `f(0) = 0` must hold for
    /// sparse storage.
    fn map_entries(&self, f: impl Fn(f64) -> f64) -> Self {
        let storage = match &self.storage {
            Storage::Dense(data) => Storage::Dense(data.iter().map(|&v| f(v)).collect()),
            Storage::Csc {
                col_ptr,
                row_idx,
                values,
            } => Storage::Csc {
                col_ptr: col_ptr.clone(),
                row_idx: row_idx.clone(),
                values: values.iter().map(|&v| f(v)).collect(),
            },
        };
        Self { n: self.n, storage }
    }

    /// `M + c I` as a dense matrix.
    pub fn shifted(&self, c: f64) -> Result<Self> {
        let mut rows = self.rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] += c;
        }
        Self::from_rows(&rows)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: len,
            })
        }
    }
}

impl LinearOperator for NonNegMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n;
        debug_assert_eq!(x.len(), n);
        debug_assert_eq!(out.len(), n);
        match &self.storage {
            Storage::Dense(data) => {
                for (i, o) in out.iter_mut().enumerate() {
                    let row = &data[i * n..(i + 1) * n];
                    let mut acc = 0.0;
                    for (&a, &b) in row.iter().zip(x) {
                        if a != 0.0 {
                            acc += a * b;
                        }
                    }
                    *o = acc;
                }
            }
            Storage::Csc {
                col_ptr,
                row_idx,
                values,
            } => {
                out.fill(0.0);
                for (j, &xj) in x.iter().enumerate() {
                    for k in col_ptr[j]..col_ptr[j + 1] {
                        out[row_idx[k]] += values[k] * xj;
                    }
                }
            }
        }
    }
}

/// Nonnegative finite scores, one per participant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScoreVector(Vec<f64>);

impl ScoreVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidVectorEntry { index, value });
        }
        Ok(Self(values))
    }

    /// Wraps values already known to be nonnegative and finite.
    pub(crate) fn from_raw(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite() && *v >= 0.0), "{values:?}");
        Self(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// 1-norm distance to `other`.
    pub fn l1_distance(&self, other: &ScoreVector) -> f64 {
        l1_distance(&self.0, &other.0)
    }
}

impl Index<usize> for ScoreVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub(crate) fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub fn mat_vec(m: &NonNegMatrix, v: &ScoreVector) -> Result<ScoreVector> {
    m.check_len(v.len())?;
    let mut out = vec![0.0; m.n()];
    m.apply(v.values(), &mut out);
    Ok(ScoreVector::from_raw(out))
}

pub fn one_vector(n: usize) -> Result<ScoreVector> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    Ok(ScoreVector(vec![1.0; n]))
}

/// Rescales `v` to sum 1.
pub fn normalize_1(v: &ScoreVector) -> Result<ScoreVector> {
    let s = v.sum();
    if s.is_nan() || s <= 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(ScoreVector(v.values().iter().map(|x| x / s).collect()))
}

pub fn scale(m: &NonNegMatrix, c: f64) -> Result<NonNegMatrix> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidScale(c));
    }
    let scaled = m.map_entries(|v| v * c);
    // Overflow to infinity would break the finiteness invariant.
    for j in 0..scaled.n {
        for (i, v) in scaled.column(j) {
            check_entry(i, j, v)?;
        }
    }
    Ok(scaled)
}
