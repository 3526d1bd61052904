use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::rational::{format_rational, parse_rational, Rational};

/// Dense table of nonnegative counts in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContingencyTable {
    dims: Vec<usize>,
    counts: Vec<Rational>,
}

/// A rational written as a JSON string (`"p/q"`) or an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Text(String),
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalJson::Int(v) => Ok(Rational::from_integer((*v).into())),
            RationalJson::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        if r.is_integer() {
            if let Ok(v) = i64::try_from(r.to_integer()) {
                return RationalJson::Int(v);
            }
        }
        RationalJson::Text(format_rational(r))
    }
}

/// `{"dims": [...], "counts": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub dims: Vec<usize>,
    pub counts: Vec<RationalJson>,
}

impl ContingencyTable {
    pub fn new(dims: Vec<usize>, counts: Vec<Rational>) -> Result<Self> {
        let size: usize = dims.iter().product();
        if counts.len() != size {
            return Err(Error::DimensionMismatch(format!(
                "table of format {dims:?} needs {size} counts, got {}",
                counts.len()
            )));
        }
        if let Some(i) = counts.iter().position(|c| c < &Rational::zero()) {
            return Err(Error::InvalidInput(format!("counts[{i}] is negative")));
        }
        Ok(ContingencyTable { dims, counts })
    }

    pub fn from_json(j: &TableJson) -> Result<Self> {
        let counts = j
            .counts
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_rational().map_err(|e| Error::Parse(format!("counts[{i}]: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.dims.clone(), counts)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            dims: self.dims.clone(),
            counts: self.counts.iter().map(RationalJson::from_rational).collect(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn counts(&self) -> &[Rational] {
        &self.counts
    }

    pub fn total(&self) -> Rational {
        self.counts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn flat_index(&self, state: &[usize]) -> usize {
        state
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&s, &d)| acc * d + s)
    }

    pub fn state(&self, mut flat: usize) -> Vec<usize> {
        let mut s = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            s[k] = flat % self.dims[k];
            flat /= self.dims[k];
        }
        s
    }

    pub fn get(&self, state: &[usize]) -> &Rational {
        &self.counts[self.flat_index(state)]
    }

    /// Sums out every axis not in `axes`; the result keeps the listed axes
    /// in increasing order.
    pub fn marginal(&self, axes: &[usize]) -> Result<ContingencyTable> {
        let mut keep: Vec<usize> = axes.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&a) = keep.iter().find(|&&a| a >= self.dims.len()) {
            return Err(Error::InvalidInput(format!(
                "axis {a} out of range for a {}-way table",
                self.dims.len()
            )));
        }
        let dims: Vec<usize> = keep.iter().map(|&a| self.dims[a]).collect();
        let size: usize = dims.iter().product();
        let mut counts = vec![Rational::zero(); size];
        for (flat, c) in self.counts.iter().enumerate() {
            let s = self.state(flat);
            let idx = keep.iter().fold(0, |acc, &a| acc * self.dims[a] + s[a]);
            counts[idx] += c;
        }
        Ok(ContingencyTable { dims, counts })
    }

    /// `u_{I,C}` for the full state `I`; `C` is used in increasing order.
    pub fn marginal_entry(marginal: &ContingencyTable, axes: &[usize], state: &[usize]) -> Rational {
        let mut keep: Vec<usize> = axes.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let sub: Vec<usize> = keep.iter().map(|&a| state[a]).collect();
        marginal.get(&sub).clone()
    }
}
