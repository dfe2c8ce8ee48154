use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use super::{ln0, Result, TropicalError};

/// Dense nonnegative square matrix, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct MaxMatrix {
    n: usize,
    data: Vec<f64>,
}

impl MaxMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(TropicalError::Empty);
        }
        if data.len() != n * n {
            return Err(TropicalError::DimensionMismatch {
                left: n * n,
                right: data.len(),
            });
        }
        for (idx, &value) in data.iter().enumerate() {
            if !(value.is_finite() && value >= 0.0) {
                return Err(TropicalError::InvalidEntry {
                    row: idx / n,
                    col: idx % n,
                    value,
                });
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(TropicalError::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(TropicalError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            data.extend(r);
        }
        Self::new(n, data)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let data = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        Self::new(n, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|&v| v > 0.0)
    }

    /// `c · A` for a finite `c > 0`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        Self::new(self.n, self.data.iter().map(|v| v * c).collect())
    }

    /// Entrywise maximum `A ⊕ B`.
    pub fn max_plus(&self, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.max(*b))
            .collect();
        Ok(Self { n: self.n, data })
    }

    /// Entrywise comparison `A ≤ B` with relative slack `rel_tol`.
    pub fn le_within(&self, other: &Self, rel_tol: f64) -> bool {
        self.n == other.n
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| *a <= b * (1.0 + rel_tol))
    }

    /// Entrywise equality up to relative tolerance `rel_tol`.
    pub fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        self.n == other.n
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| rel_close(*a, *b, rel_tol))
    }

    /// Log-domain copy of the entries (`0 ↦ −∞`).
    pub(crate) fn log_entries(&self) -> Vec<f64> {
        self.data.iter().map(|&v| ln0(v)).collect()
    }

    pub(crate) fn from_log_entries(n: usize, logs: &[f64]) -> Result<Self> {
        Self::new(n, logs.iter().map(|l| l.exp()).collect())
    }
}

impl Index<(usize, usize)> for MaxMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl AsRef<MaxMatrix> for MaxMatrix {
    fn as_ref(&self) -> &MaxMatrix {
        self
    }
}

impl TryFrom<Vec<Vec<f64>>> for MaxMatrix {
    type Error = TropicalError;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<MaxMatrix> for Vec<Vec<f64>> {
    fn from(m: MaxMatrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for MaxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n)).finish()
    }
}

impl fmt::Display for MaxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.4}")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Vector with finite, strictly positive entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PositiveVector(Vec<f64>);

impl PositiveVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(TropicalError::Empty);
        }
        for (index, &value) in entries.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(TropicalError::NotPositive { index, value });
            }
        }
        Ok(Self(entries))
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Rescaled so that the first entry is exactly one.
    pub fn normalized_first(&self) -> Self {
        let first = self.0[0];
        let mut v: Vec<f64> = self.0.iter().map(|x| x / first).collect();
        v[0] = 1.0;
        Self(v)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Largest relative deviation between two vectors.
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()))
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for PositiveVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<f64>> for PositiveVector {
    type Error = TropicalError;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PositiveVector> for Vec<f64> {
    fn from(v: PositiveVector) -> Self {
        v.0
    }
}

/// `(A ⊗ B)_ij = max_k a_ik · b_kj`.
pub fn max_matmul(a: &MaxMatrix, b: &MaxMatrix) -> Result<MaxMatrix> {
    check_dims(a.n, b.n)?;
    let n = a.n;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a.data[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                let p = aik * b.data[k * n + j];
                if p > data[i * n + j] {
                    data[i * n + j] = p;
                }
            }
        }
    }
    MaxMatrix::new(n, data)
}

/// `(A ⊗ x)_i = max_j a_ij · x_j`.
///
/// The result is nonnegative; it is positive whenever `A` has no zero row.
pub fn max_matvec(a: &MaxMatrix, x: &PositiveVector) -> Result<Vec<f64>> {
    check_dims(a.n, x.len())?;
    Ok((0..a.n)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(x.as_slice())
                .map(|(aij, xj)| aij * xj)
                .fold(0.0, f64::max)
        })
        .collect())
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(TropicalError::DimensionMismatch { left, right });
    }
    Ok(())
}

#[inline]
pub(crate) fn rel_close(a: f64, b: f64, rel_tol: f64) -> bool {
    a == b || (a - b).abs() <= rel_tol * a.abs().max(b.abs())
}
