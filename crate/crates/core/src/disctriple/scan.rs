use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::marked::MarkedPoly;
use super::toric::ToricMatrix;
use crate::error::{Error, Result};
use crate::exactalg::rational::{format_rational, Rational};
use crate::exactalg::SparsePoly;
use crate::horn::{
    friendliness_check, horn_map_eval, horn_pair_equal, positive_at_ones, reduce_horn, rows_have_constant_sign,
    sign_vector, HornPair, HornPairJson, SignVector,
};

/// A statistical model found by the scan: the marked term it came from and
/// the reduced Horn pair whose map is its MLE.
#[derive(Clone, Debug)]
pub struct ModelRecord {
    pub term_index: usize,
    pub marked: MarkedPoly,
    pub pair: HornPair,
    pub sigma: SignVector,
    pub provenance: BTreeMap<String, String>,
}

/// JSON form of a [`ModelRecord`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRecordJson {
    pub term_index: usize,
    pub term: String,
    pub pair: HornPairJson,
    pub sigma: SignVector,
    pub provenance: BTreeMap<String, String>,
}

impl ModelRecord {
    /// The maximum likelihood estimate for counts `u`.
    pub fn mle(&self, u: &[Rational]) -> Result<Vec<Rational>> {
        horn_map_eval(&self.pair, u)
    }

    /// Checks polynomial relations in `p_0, …, p_n` on the images of the
    /// given count vectors.
    pub fn image_satisfies(&self, relations: &[SparsePoly], points: &[Vec<Rational>]) -> Result<bool> {
        for u in points {
            let p = self.mle(u)?;
            for r in relations {
                if r.nvars() != p.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "relation in {} variables for a model with {} states",
                        r.nvars(),
                        p.len()
                    )));
                }
                if !r.eval(&p)?.eq(&Rational::from_integer(0.into())) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn term_string(&self) -> String {
        let c = self.marked.coefficient();
        format!("{}*{}", format_rational(c), self.marked.marked().fmt_with(self.marked.vars()))
    }

    pub fn to_json(&self) -> ModelRecordJson {
        ModelRecordJson {
            term_index: self.term_index,
            term: self.term_string(),
            pair: self.pair.to_json(),
            sigma: self.sigma.clone(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Result of running the scan over every term of one polynomial.
#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub terms: usize,
    pub records: Vec<ModelRecord>,
    /// `(i, j)` positions in `records` whose Horn pairs agree up to a column
    /// bijection; pairs too wide for the search are skipped.
    pub duplicates: Vec<(usize, usize)>,
}

impl ScanOutcome {
    /// Records not equal to an earlier record.
    pub fn distinct(&self) -> usize {
        let mut dup = vec![false; self.records.len()];
        for &(_, j) in &self.duplicates {
            dup[j] = true;
        }
        dup.iter().filter(|d| !**d).count()
    }
}

/// The per-term test: reduce `(H, λ)` of `Δ/m`, require constant row signs
/// and positivity at the all-ones vector.
pub fn scan_term(delta: &SparsePoly, vars: &[String], index: usize) -> Result<Option<ModelRecord>> {
    let marked = MarkedPoly::from_index(delta.clone(), index)?.with_vars(vars.to_vec())?;
    let (rows, lambda) = marked.horn_data();
    let Ok(h) = crate::horn::HornMatrix::with_labels(rows, Some(vars.to_vec())) else {
        return Ok(None);
    };
    let l = crate::horn::CoefficientVector::new(lambda)?;
    let Ok(reduced) = reduce_horn(&h, &l) else {
        return Ok(None);
    };
    if !rows_have_constant_sign(&reduced.h) || !positive_at_ones(&reduced.h, &reduced.lambda) {
        return Ok(None);
    }
    debug_assert!(friendliness_check(&reduced.h, &reduced.lambda));
    let sigma = sign_vector(&reduced.h);
    Ok(Some(ModelRecord {
        term_index: index,
        marked,
        pair: reduced,
        sigma,
        provenance: BTreeMap::new(),
    }))
}

/// Tries every term of `Δ` as the marked term. Records come out in term
/// order whatever the thread schedule.
pub fn algorithm1_scan(a: &ToricMatrix, delta: &SparsePoly) -> Result<ScanOutcome> {
    algorithm1_scan_named(a, delta, &crate::exactalg::json::default_vars(delta.nvars()))
}

pub fn algorithm1_scan_named(a: &ToricMatrix, delta: &SparsePoly, vars: &[String]) -> Result<ScanOutcome> {
    if a.ncols() != delta.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} columns, the polynomial has {} variables",
            a.ncols(),
            delta.nvars()
        )));
    }
    let terms = delta.len();
    let found: Vec<Option<ModelRecord>> = (0..terms)
        .into_par_iter()
        .map(|i| scan_term(delta, vars, i))
        .collect::<Result<_>>()?;
    let records: Vec<ModelRecord> = found.into_iter().flatten().collect();
    let mut duplicates = Vec::new();
    for j in 0..records.len() {
        for i in 0..j {
            if let Ok(true) = horn_pair_equal(&records[i].pair, &records[j].pair, None) {
                duplicates.push((i, j));
                break;
            }
        }
    }
    Ok(ScanOutcome {
        terms,
        records,
        duplicates,
    })
}
