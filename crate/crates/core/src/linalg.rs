//! Small dense linear algebra: LU with partial pivoting and Householder least
//! squares. Problem sizes here are tiny (a handful of unknowns), so everything
//! is row-major `Vec<f64>` without blocking.

use thiserror::Error;

/// Pivot ratio `min |pivot| / max |pivot|` below which a system is declared
/// singular.
pub const PIVOT_RATIO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is singular to working precision (pivot ratio {0:e})")]
    Singular(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from column vectors of equal length.
    pub fn from_columns(columns: &[&[f64]]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, |c| c.len());
        Self::from_fn(rows, cols, |i, j| columns[j][i])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Sub-matrix made of the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |i, k| self.get(i, cols[k]))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// `Aᵀ v`.
    pub fn tr_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (i, vi) in v.iter().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * vi;
            }
        }
        out
    }

    /// Gram matrix `AᵀA`.
    pub fn gram(&self) -> Matrix {
        let mut g = Matrix::zeros(self.cols, self.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for j in 0..self.cols {
                for k in j..self.cols {
                    g.data[j * self.cols + k] += row[j] * row[k];
                }
            }
        }
        for j in 0..self.cols {
            for k in 0..j {
                g.data[j * self.cols + k] = g.data[k * self.cols + j];
            }
        }
        g
    }
}

/// Solves the square system `A x = b` by Gaussian elimination with partial
/// pivoting.
pub fn lu_solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    let n = a.rows;
    if a.cols != n {
        return Err(LinalgError::Dimension {
            expected: n,
            got: a.cols,
        });
    }
    if b.len() != n {
        return Err(LinalgError::Dimension {
            expected: n,
            got: b.len(),
        });
    }
    let mut m = a.data.clone();
    let mut x = b.to_vec();
    let mut max_pivot = 0.0f64;
    let mut min_pivot = f64::INFINITY;

    for k in 0..n {
        let (piv, piv_abs) =
            (k..n)
                .map(|i| (i, m[i * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv != k {
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            x.swap(k, piv);
        }
        max_pivot = max_pivot.max(piv_abs);
        min_pivot = min_pivot.min(piv_abs);
        if piv_abs == 0.0 {
            return Err(LinalgError::Singular(0.0));
        }
        let pivot = m[k * n + k];
        for i in (k + 1)..n {
            let f = m[i * n + k] / pivot;
            if f == 0.0 {
                continue;
            }
            m[i * n + k] = 0.0;
            for j in (k + 1)..n {
                m[i * n + j] -= f * m[k * n + j];
            }
            x[i] -= f * x[k];
        }
    }
    if n > 0 {
        let ratio = min_pivot / max_pivot;
        if !(ratio >= PIVOT_RATIO_TOL) {
            return Err(LinalgError::Singular(ratio));
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for j in (k + 1)..n {
            s -= m[k * n + j] * x[j];
        }
        x[k] = s / m[k * n + k];
    }
    Ok(x)
}

/// Least-squares solution of `min ‖A x − b‖₂` via Householder QR. Requires
/// `rows >= cols` and full column rank (same ratio test as [`lu_solve`],
/// applied to the diagonal of R).
pub fn lstsq(a: &Matrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    let (m, n) = (a.rows, a.cols);
    if b.len() != m {
        return Err(LinalgError::Dimension {
            expected: m,
            got: b.len(),
        });
    }
    if m < n {
        return Err(LinalgError::Singular(0.0));
    }
    let mut r = a.data.clone();
    let mut y = b.to_vec();
    let mut diag = vec![0.0; n];

    for k in 0..n {
        let norm = (k..m).map(|i| r[i * n + k].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(LinalgError::Singular(0.0));
        }
        let alpha = if r[k * n + k] > 0.0 { -norm } else { norm };
        // v = x - alpha e1, stored in place below the diagonal
        r[k * n + k] -= alpha;
        let vnorm2: f64 = (k..m).map(|i| r[i * n + k].powi(2)).sum();
        if vnorm2 > 0.0 {
            for j in (k + 1)..n {
                let dot: f64 = (k..m).map(|i| r[i * n + k] * r[i * n + j]).sum();
                let f = 2.0 * dot / vnorm2;
                for i in k..m {
                    r[i * n + j] -= f * r[i * n + k];
                }
            }
            let dot: f64 = (k..m).map(|i| r[i * n + k] * y[i]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..m {
                y[i] -= f * r[i * n + k];
            }
        }
        diag[k] = alpha;
    }

    let max_d = diag.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
    let min_d = diag.iter().fold(f64::INFINITY, |acc, d| acc.min(d.abs()));
    if n > 0 && !(min_d / max_d >= PIVOT_RATIO_TOL) {
        return Err(LinalgError::Singular(min_d / max_d));
    }

    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = y[k];
        for j in (k + 1)..n {
            s -= r[k * n + j] * x[j];
        }
        x[k] = s / diag[k];
    }
    Ok(x)
}

/// Neumaier-compensated sum. Used wherever the result must not depend on the
/// magnitude ordering of the terms more than necessary.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
