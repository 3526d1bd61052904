use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::rational::{format_rational, parse_rational, Rational};

/// Integer matrix whose columns each sum to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HornMatrix {
    rows: Vec<Vec<i64>>,
    labels: Option<Vec<String>>,
}

impl HornMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_labels(rows, None)
    }

    pub fn with_labels(rows: Vec<Vec<i64>>, labels: Option<Vec<String>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidHornMatrix("matrix has no rows".into()));
        }
        let ncols = rows[0].len();
        if ncols == 0 {
            return Err(Error::InvalidHornMatrix("matrix has no columns".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::InvalidHornMatrix(format!(
                "row {i} has {} entries, expected {ncols}",
                rows[i].len()
            )));
        }
        for j in 0..ncols {
            let s: i64 = rows.iter().map(|r| r[j]).sum();
            if s != 0 {
                return Err(Error::InvalidHornMatrix(format!("column {j} sums to {s}")));
            }
        }
        if let Some(l) = &labels {
            if l.len() != rows.len() {
                return Err(Error::InvalidHornMatrix(format!(
                    "{} row labels for {} rows",
                    l.len(),
                    rows.len()
                )));
            }
        }
        Ok(HornMatrix { rows, labels })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of row `i`, falling back to `r{i}`.
    pub fn label(&self, i: usize) -> String {
        self.labels
            .as_ref()
            .map(|l| l[i].clone())
            .unwrap_or_else(|| format!("r{i}"))
    }

    /// The linear forms `(Hu)_i`.
    pub fn apply(&self, u: &[Rational]) -> Result<Vec<Rational>> {
        if u.len() != self.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} entries, matrix has {} columns",
                u.len(),
                self.ncols()
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(u)
                    .filter(|(h, _)| **h != 0)
                    .fold(Rational::zero(), |acc, (h, x)| acc + x * Rational::from_integer((*h).into()))
            })
            .collect())
    }

    /// Columns reordered so that new column `j` is old column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        HornMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| perm.iter().map(|&p| r[p]).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }
}

impl fmt::Display for HornMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let lw = (0..self.nrows()).map(|i| self.label(i).len()).max().unwrap_or(0);
        for i in 0..self.nrows() {
            write!(f, "{:>lw$} |", self.label(i))?;
            for v in &self.rows[i] {
                write!(f, " {v:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Vector of nonzero rationals `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientVector(Vec<Rational>);

impl CoefficientVector {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoefficient(i));
        }
        Ok(CoefficientVector(values))
    }

    pub fn ones(n: usize) -> Self {
        CoefficientVector(vec![Rational::from_integer(1.into()); n])
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        CoefficientVector(perm.iter().map(|&p| self.0[p].clone()).collect())
    }
}

/// Entries in `{+1, -1}`; a `0` can only appear in a failed verdict.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignVector(pub Vec<i8>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairStatus {
    Unverified,
    Friendly,
    Horn,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornPair {
    pub h: HornMatrix,
    pub lambda: CoefficientVector,
    pub status: PairStatus,
}

impl HornPair {
    pub fn new(h: HornMatrix, lambda: CoefficientVector) -> Result<Self> {
        if h.ncols() != lambda.len() {
            return Err(Error::DimensionMismatch(format!(
                "H has {} columns but lambda has {} entries",
                h.ncols(),
                lambda.len()
            )));
        }
        Ok(HornPair {
            h,
            lambda,
            status: PairStatus::Unverified,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: HornPairJson = serde_json::from_str(text)?;
        j.to_pair()
    }

    pub fn to_json(&self) -> HornPairJson {
        HornPairJson::from_pair(self)
    }
}

/// `{"H": [[int, ...], ...], "lambda": ["p/q", ...], "row_labels": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornPairJson {
    #[serde(rename = "H")]
    pub h: Vec<Vec<i64>>,
    pub lambda: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_labels: Option<Vec<String>>,
}

impl HornPairJson {
    pub fn from_pair(p: &HornPair) -> Self {
        HornPairJson {
            h: p.h.rows().to_vec(),
            lambda: p.lambda.values().iter().map(format_rational).collect(),
            row_labels: p.h.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_pair(&self) -> Result<HornPair> {
        let h = HornMatrix::with_labels(self.h.clone(), self.row_labels.clone())?;
        let lambda = self
            .lambda
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_rational(s).map_err(|e| Error::Parse(format!("lambda[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        HornPair::new(h, CoefficientVector::new(lambda)?)
    }
}
