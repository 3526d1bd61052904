use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::linalg::{in_row_span, integer_left_kernel, rank};
use crate::horn::HornMatrix;

/// Integer matrix of full row rank with the all-ones vector in its row span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ToricMatrix {
    rows: Vec<Vec<i64>>,
}

impl ToricMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if ncols == 0 {
            return Err(Error::InvalidInput("toric matrix has no columns".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {ncols}",
                rows[i].len()
            )));
        }
        if rank(&rows) != rows.len() {
            return Err(Error::InvalidInput("toric matrix must have full row rank".into()));
        }
        if !in_row_span(&rows, &vec![1; ncols]) {
            return Err(Error::OnesNotInRowSpan);
        }
        Ok(ToricMatrix { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    /// `A v` for an integer vector `v`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// True when `A H = 0`.
    pub fn annihilates(&self, h_rows: &[Vec<i64>]) -> bool {
        let ncols = h_rows.first().map_or(0, Vec::len);
        h_rows.len() == self.ncols()
            && (0..ncols).all(|j| {
                let col: Vec<i64> = h_rows.iter().map(|r| r[j]).collect();
                self.apply(&col).iter().all(|&x| x == 0)
            })
    }
}

impl TryFrom<Vec<Vec<i64>>> for ToricMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        ToricMatrix::new(rows)
    }
}

impl From<ToricMatrix> for Vec<Vec<i64>> {
    fn from(a: ToricMatrix) -> Self {
        a.rows
    }
}

/// A lattice basis of `{a ∈ Z^m : a H = 0}` in Hermite normal form.
pub fn left_kernel_basis(h: &HornMatrix) -> Result<ToricMatrix> {
    let basis = integer_left_kernel(h.rows());
    let rows = basis
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::InvalidInput(format!("kernel entry {x} exceeds 64 bits"))))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::OnesNotInRowSpan);
    }
    ToricMatrix::new(rows)
}

