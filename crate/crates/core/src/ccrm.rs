//! Constrained center and range method (CCRM): ordinary least squares on the
//! centres, non-negative least squares on the radii.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::IntervalDataset;
use crate::interval::Interval;
use crate::linalg::{lstsq, Matrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CcrmError {
    #[error("need more than p + 1 = {} observations, got {n}", p + 1)]
    TooFewRows { n: usize, p: usize },
    #[error("centre design matrix is rank deficient")]
    RankDeficient,
    #[error(transparent)]
    Nnls(#[from] NnlsError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NnlsError {
    #[error("design has {rows} rows but response has {len} entries")]
    Dimension { rows: usize, len: usize },
    #[error("empty problem")]
    Empty,
    #[error("no convergence within {0} active-set iterations")]
    IterationLimit(usize),
}

/// Fitted CCRM coefficients. Index 0 of each vector is the intercept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcrmFit {
    pub beta_c: Vec<f64>,
    /// All entries are non-negative.
    pub beta_r: Vec<f64>,
}

impl CcrmFit {
    pub fn p(&self) -> usize {
        self.beta_c.len() - 1
    }

    /// Predicted `(centre, radius)`; the radius is non-negative whenever the
    /// predictor radii are.
    pub fn predict_raw(&self, x: &[Interval]) -> (f64, f64) {
        let mut c = self.beta_c[0];
        let mut r = self.beta_r[0];
        for (j, xj) in x.iter().enumerate() {
            c += self.beta_c[j + 1] * xj.center();
            r += self.beta_r[j + 1] * xj.radius();
        }
        (c, r)
    }
}

fn design(columns: &[Vec<f64>], n: usize) -> Matrix {
    Matrix::from_fn(
        n,
        columns.len() + 1,
        |i, j| if j == 0 { 1.0 } else { columns[j - 1][i] },
    )
}

pub fn fit_ccrm(data: &IntervalDataset) -> Result<CcrmFit, CcrmError> {
    let (n, p) = (data.n(), data.p());
    if n <= p + 1 {
        return Err(CcrmError::TooFewRows { n, p });
    }
    let xc: Vec<Vec<f64>> = (0..p).map(|j| data.predictor_centers(j)).collect();
    let xr: Vec<Vec<f64>> = (0..p).map(|j| data.predictor_radii(j)).collect();
    let beta_c = lstsq(&design(&xc, n), &data.response_centers()).map_err(|_| CcrmError::RankDeficient)?;
    let beta_r = nnls(&design(&xr, n), &data.response_radii())?;
    Ok(CcrmFit { beta_c, beta_r })
}

/// Default active-set iteration cap for a problem with `q` unknowns.
pub fn default_iteration_cap(q: usize) -> usize {
    3 * q
}

/// Non-negative least squares `min ‖Ax − y‖² s.t. x >= 0` (Lawson–Hanson
/// active set) with the default iteration cap.
pub fn nnls(a: &Matrix, y: &[f64]) -> Result<Vec<f64>, NnlsError> {
    nnls_with_cap(a, y, default_iteration_cap(a.cols()))
}

pub fn nnls_with_cap(a: &Matrix, y: &[f64], max_iter: usize) -> Result<Vec<f64>, NnlsError> {
    let (m, q) = (a.rows(), a.cols());
    if y.len() != m {
        return Err(NnlsError::Dimension { rows: m, len: y.len() });
    }
    if m == 0 || q == 0 {
        return Err(NnlsError::Empty);
    }

    let dual = |x: &[f64]| {
        let ax = a.mul_vec(x);
        let r: Vec<f64> = y.iter().zip(&ax).map(|(yi, axi)| yi - axi).collect();
        a.tr_mul_vec(&r)
    };
    let scale = a.tr_mul_vec(y).iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let tol = 1e-12 * scale;

    let mut x = vec![0.0; q];
    let mut passive = vec![false; q];
    // columns that made the passive sub-problem rank deficient
    let mut excluded = vec![false; q];
    let mut w = dual(&x);
    let mut iterations = 0;

    loop {
        let candidate = (0..q)
            .filter(|&j| !passive[j] && !excluded[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(t) = candidate else { break };
        iterations += 1;
        if iterations > max_iter {
            return Err(NnlsError::IterationLimit(max_iter));
        }
        passive[t] = true;

        let mut inner = 0;
        loop {
            inner += 1;
            let cols: Vec<usize> = (0..q).filter(|&j| passive[j]).collect();
            let Ok(sp) = lstsq(&a.select_columns(&cols), y) else {
                passive[t] = false;
                excluded[t] = true;
                break;
            };
            let mut s = vec![0.0; q];
            for (&j, v) in cols.iter().zip(&sp) {
                s[j] = *v;
            }
            if cols.iter().all(|&j| s[j] > 0.0) || inner > q + 1 {
                x = s;
                break;
            }
            let alpha = cols
                .iter()
                .filter(|&&j| s[j] <= 0.0)
                .map(|&j| x[j] / (x[j] - s[j]))
                .fold(f64::INFINITY, f64::min);
            for j in 0..q {
                x[j] += alpha * (s[j] - x[j]);
            }
            // the blocking index lands on zero up to round-off
            for &j in &cols {
                if x[j] <= f64::EPSILON * scale {
                    passive[j] = false;
                    x[j] = 0.0;
                }
            }
        }
        for v in x.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        w = dual(&x);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::lu_solve;

    fn iv(c: f64, r: f64) -> Interval {
        Interval::from_center_radius(c, r).unwrap()
    }

    #[test]
    fn identity_design_projects() {
        let a = Matrix::from_fn(2, 2, |i, j| if i == j { 1.0 } else { 0.0 });
        assert_eq!(nnls(&a, &[-1.0, 2.0]).unwrap(), vec![0.0, 2.0]);
        assert_eq!(nnls(&a, &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn inactive_constraint_gives_ols() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let ys = [1.0, 3.1, 4.9, 7.2, 9.0];
        let a = Matrix::from_fn(5, 2, |i, j| if j == 0 { 1.0 } else { xs[i] });
        let x = nnls(&a, &ys).unwrap();
        let ols = lstsq(&a, &ys).unwrap();
        for (p, q) in x.iter().zip(&ols) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_slope_binds() {
        // radius slope −1: the constrained slope is 0 and the intercept is the mean
        let xs = [(0.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 4.0)];
        let d = IntervalDataset::new(
            vec![xs.iter().map(|&(c, r)| iv(c, r)).collect()],
            xs.iter().map(|&(c, r)| iv(2.0 * c + 1.0, 5.0 - r)).collect(),
        )
        .unwrap();
        let f = fit_ccrm(&d).unwrap();
        assert_eq!(f.beta_r[1], 0.0);
        assert!((f.beta_r[0] - 2.5).abs() < 1e-12);
        // KKT multiplier of the bound slope is non-negative
        let a = Matrix::from_fn(4, 2, |i, j| if j == 0 { 1.0 } else { xs[i].1 });
        let yr: Vec<f64> = xs.iter().map(|&(_, r)| 5.0 - r).collect();
        let ax = a.mul_vec(&f.beta_r);
        let res: Vec<f64> = ax.iter().zip(&yr).map(|(p, y)| p - y).collect();
        let grad = a.tr_mul_vec(&res);
        assert!(grad[1] >= -1e-8);
        assert!(grad[0].abs() < 1e-8);
        assert!((f.beta_c[0] - 1.0).abs() < 1e-12 && (f.beta_c[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn intercept_only() {
        let d = IntervalDataset::new(vec![], vec![iv(1.0, 0.5), iv(3.0, 1.5), iv(2.0, 1.0)]).unwrap();
        let f = fit_ccrm(&d).unwrap();
        assert!((f.beta_c[0] - 2.0).abs() < 1e-15);
        assert!((f.beta_r[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn centre_matches_normal_equations() {
        let rows: Vec<(Vec<Interval>, Interval)> = (0..12)
            .map(|i| {
                let t = i as f64;
                (
                    vec![
                        iv(t.sin() * 3.0, 1.0 + 0.1 * t),
                        iv(t * 0.7, 0.5 + (t * 1.3).cos().abs()),
                    ],
                    iv(2.0 + t.cos(), 1.0 + 0.05 * t),
                )
            })
            .collect();
        let d = IntervalDataset::from_rows(&rows).unwrap();
        let f = fit_ccrm(&d).unwrap();
        let a = Matrix::from_fn(12, 3, |i, j| if j == 0 { 1.0 } else { d.predictor(j - 1)[i].center() });
        let ne = lu_solve(&a.gram(), &a.tr_mul_vec(&d.response_centers())).unwrap();
        for (p, q) in f.beta_c.iter().zip(&ne) {
            assert!((p - q).abs() < 1e-10);
        }
    }

    #[test]
    fn rank_deficient_centre() {
        let d = IntervalDataset::new(
            vec![vec![iv(1.0, 1.0); 4]],
            vec![iv(0.0, 1.0), iv(1.0, 1.0), iv(2.0, 1.0), iv(3.0, 1.0)],
        )
        .unwrap();
        assert_eq!(fit_ccrm(&d), Err(CcrmError::RankDeficient));
    }

    #[test]
    fn iteration_cap_is_enforced() {
        let a = Matrix::from_fn(2, 2, |i, j| if i == j { 1.0 } else { 0.0 });
        assert_eq!(nnls_with_cap(&a, &[1.0, 2.0], 1), Err(NnlsError::IterationLimit(1)));
    }
}
