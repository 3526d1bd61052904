use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::json::default_vars;
use crate::exactalg::rational::{pow_i, Rational};
use crate::exactalg::{Monomial, SparsePoly};
use crate::horn::{CoefficientVector, HornMatrix, HornPair};

/// A polynomial `Δ` together with one of its terms `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoly {
    delta: SparsePoly,
    marked: Monomial,
    coefficient: Rational,
    vars: Vec<String>,
}

impl MarkedPoly {
    pub fn new(delta: SparsePoly, marked: Monomial) -> Result<Self> {
        if marked.nvars() != delta.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "marked monomial has {} variables, polynomial has {}",
                marked.nvars(),
                delta.nvars()
            )));
        }
        let coefficient = delta.coefficient(&marked);
        if coefficient.is_zero() {
            return Err(Error::MarkedTermAbsent);
        }
        let vars = default_vars(delta.nvars());
        Ok(MarkedPoly {
            delta,
            marked,
            coefficient,
            vars,
        })
    }

    /// Marks the term at position `index` in graded-lex order, largest first.
    pub fn from_index(delta: SparsePoly, index: usize) -> Result<Self> {
        let marked = delta.terms().nth(index).map(|(m, _)| m.clone()).ok_or(Error::MarkedTermAbsent)?;
        Self::new(delta, marked)
    }

    pub fn with_vars(mut self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.delta.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} variable names for {} variables",
                vars.len(),
                self.delta.nvars()
            )));
        }
        self.vars = vars;
        Ok(self)
    }

    pub fn delta(&self) -> &SparsePoly {
        &self.delta
    }

    pub fn marked(&self) -> &Monomial {
        &self.marked
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn marked_index(&self) -> usize {
        self.delta
            .terms()
            .position(|(m, _)| m == &self.marked)
            .expect("marked term occurs")
    }

    /// Columns `h_j` and coefficients `λ_j` of `Δ/m = 1 - Σ_j λ_j x^{h_j}`,
    /// in graded-lex order of the remaining terms. Column sums are not checked.
    pub fn horn_data(&self) -> (Vec<Vec<i64>>, Vec<Rational>) {
        let nv = self.delta.nvars();
        let mut cols = Vec::new();
        let mut lambda = Vec::new();
        for (m, c) in self.delta.terms() {
            if m == &self.marked {
                continue;
            }
            let h = m.div(&self.marked);
            cols.push(h.exponents().iter().map(|&e| e as i64).collect::<Vec<i64>>());
            lambda.push(-c / &self.coefficient);
        }
        let rows = (0..nv).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        (rows, lambda)
    }
}

/// `(H, λ)` with `Δ/m = 1 - Σ_j λ_j x^{h_j}`; rows are labelled by the
/// variable names.
pub fn pair_from_marked_poly(marked: &MarkedPoly) -> Result<HornPair> {
    if marked.delta.len() < 2 {
        return Err(Error::InvalidInput("the polynomial needs at least two terms".into()));
    }
    let (rows, lambda) = marked.horn_data();
    let h = HornMatrix::with_labels(rows, Some(marked.vars.clone()))?;
    HornPair::new(h, CoefficientVector::new(lambda)?)
}

/// `m = x^{max_k h_k^-}` and `Δ = m (1 - Σ_k λ_k x^{h_k})`.
pub fn marked_poly_from_pair(pair: &HornPair) -> Result<MarkedPoly> {
    let h = &pair.h;
    let nv = h.nrows();
    let mexp: Vec<i32> = h
        .rows()
        .iter()
        .map(|r| r.iter().map(|&e| (-e).max(0)).max().unwrap_or(0) as i32)
        .collect();
    let m = Monomial(mexp);
    let mut delta = SparsePoly::monomial(nv, m.clone(), Rational::one());
    for (j, l) in pair.lambda.values().iter().enumerate() {
        let col: Vec<i32> = h.column(j).iter().map(|&e| e as i32).collect();
        delta.add_term(m.mul(&Monomial(col)), -l.clone());
    }
    let vars = (0..nv).map(|i| h.label(i)).collect();
    MarkedPoly::new(delta, m)?.with_vars(vars)
}

/// `φ_(Δ,m)(x) = (λ_j x^{h_j})_j`.
pub fn monomial_map_eval(marked: &MarkedPoly, x: &[Rational]) -> Result<Vec<Rational>> {
    let (rows, lambda) = marked.horn_data();
    if x.len() != rows.len() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, polynomial has {} variables",
            x.len(),
            rows.len()
        )));
    }
    (0..lambda.len())
        .map(|j| {
            let mut v = lambda[j].clone();
            for (i, r) in rows.iter().enumerate() {
                if r[j] != 0 {
                    v *= pow_i(&x[i], r[j]).map_err(|_| Error::PoleAtInput { row: i })?;
                }
            }
            Ok(v)
        })
        .collect()
}
