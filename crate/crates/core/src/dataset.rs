use thiserror::Error;

use crate::interval::Interval;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DatasetError {
    #[error("need at least 2 observations, got {0}")]
    TooFewRows(usize),
    #[error("predictor {column} has {got} observations, response has {expected}")]
    LengthMismatch { column: usize, expected: usize, got: usize },
    #[error("expected {expected} variable names (predictors then response), got {got}")]
    NamesMismatch { expected: usize, got: usize },
    #[error("observation index {0} out of range")]
    IndexOutOfRange(usize),
}

/// `n` observations of `p` interval predictors and one interval response.
///
/// Predictors are stored column-wise. `p = 0` is allowed (intercept-only
/// models); whether a given fitter can handle the data is checked at fit time.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalDataset {
    predictors: Vec<Vec<Interval>>,
    response: Vec<Interval>,
    names: Option<Vec<String>>,
}

impl IntervalDataset {
    pub fn new(predictors: Vec<Vec<Interval>>, response: Vec<Interval>) -> Result<Self, DatasetError> {
        let n = response.len();
        if n < 2 {
            return Err(DatasetError::TooFewRows(n));
        }
        for (column, col) in predictors.iter().enumerate() {
            if col.len() != n {
                return Err(DatasetError::LengthMismatch {
                    column,
                    expected: n,
                    got: col.len(),
                });
            }
        }
        Ok(Self {
            predictors,
            response,
            names: None,
        })
    }

    /// Builds a dataset from row tuples `(x_1..x_p, y)`.
    pub fn from_rows(rows: &[(Vec<Interval>, Interval)]) -> Result<Self, DatasetError> {
        let p = rows.first().map_or(0, |r| r.0.len());
        let mut predictors = vec![Vec::with_capacity(rows.len()); p];
        let mut response = Vec::with_capacity(rows.len());
        for (i, (xs, y)) in rows.iter().enumerate() {
            if xs.len() != p {
                return Err(DatasetError::LengthMismatch {
                    column: i,
                    expected: p,
                    got: xs.len(),
                });
            }
            for (col, x) in predictors.iter_mut().zip(xs) {
                col.push(*x);
            }
            response.push(*y);
        }
        Self::new(predictors, response)
    }

    /// Attaches labels: one per predictor followed by the response label.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, DatasetError> {
        let expected = self.p() + 1;
        if names.len() != expected {
            return Err(DatasetError::NamesMismatch {
                expected,
                got: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.response.len()
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.predictors.len()
    }

    pub fn predictor(&self, j: usize) -> &[Interval] {
        &self.predictors[j]
    }

    pub fn predictors(&self) -> &[Vec<Interval>] {
        &self.predictors
    }

    pub fn response(&self) -> &[Interval] {
        &self.response
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Predictor values of observation `i`.
    pub fn row(&self, i: usize) -> Vec<Interval> {
        self.predictors.iter().map(|col| col[i]).collect()
    }

    pub fn predictor_centers(&self, j: usize) -> Vec<f64> {
        self.predictors[j].iter().map(Interval::center).collect()
    }

    pub fn predictor_radii(&self, j: usize) -> Vec<f64> {
        self.predictors[j].iter().map(Interval::radius).collect()
    }

    pub fn response_centers(&self) -> Vec<f64> {
        self.response.iter().map(Interval::center).collect()
    }

    pub fn response_radii(&self) -> Vec<f64> {
        self.response.iter().map(Interval::radius).collect()
    }

    /// Dataset restricted to the given observation indices, in order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self, DatasetError> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n()) {
            return Err(DatasetError::IndexOutOfRange(bad));
        }
        let predictors = self
            .predictors
            .iter()
            .map(|col| indices.iter().map(|&i| col[i]).collect())
            .collect();
        let response = indices.iter().map(|&i| self.response[i]).collect();
        let mut out = Self::new(predictors, response)?;
        out.names = self.names.clone();
        Ok(out)
    }
}
