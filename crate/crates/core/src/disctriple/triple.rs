use serde::{Deserialize, Serialize};

use super::marked::MarkedPoly;
use super::toric::ToricMatrix;
use crate::error::{Error, Result};
use crate::exactalg::json::PolyJson;
use crate::horn::{
    is_reduced, lambda_sign_condition, rows_have_constant_sign, sign_vector, CoefficientVector, HornMatrix, HornPair,
    SignVector,
};

/// A candidate triple `(A, Δ, m)` with the outcome of every check.
#[derive(Clone, Debug)]
pub struct DiscriminantalTriple {
    pub a: ToricMatrix,
    pub marked: MarkedPoly,
    /// `(H, λ)` of `Δ/m`; absent when some column of `H` does not sum to zero.
    pub pair: Option<HornPair>,
    pub sigma: Option<SignVector>,
    pub homogeneous: bool,
    pub reduced: bool,
    pub row_signs_constant: bool,
    pub lambda_signs: bool,
}

impl DiscriminantalTriple {
    pub fn verified(&self) -> bool {
        self.homogeneous && self.reduced && self.row_signs_constant && self.lambda_signs
    }
}

/// Verdict JSON for a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleVerdict {
    pub verified: bool,
    pub homogeneous: bool,
    pub reduced: bool,
    pub row_signs_constant: bool,
    pub lambda_signs: bool,
    pub sigma: Option<SignVector>,
}

impl From<&DiscriminantalTriple> for TripleVerdict {
    fn from(t: &DiscriminantalTriple) -> Self {
        TripleVerdict {
            verified: t.verified(),
            homogeneous: t.homogeneous,
            reduced: t.reduced,
            row_signs_constant: t.row_signs_constant,
            lambda_signs: t.lambda_signs,
            sigma: t.sigma.clone(),
        }
    }
}

pub fn triple_check(a: &ToricMatrix, marked: &MarkedPoly) -> DiscriminantalTriple {
    let (rows, lambda) = marked.horn_data();
    let homogeneous = a.annihilates(&rows);
    let pair = HornMatrix::with_labels(rows, Some(marked.vars().to_vec()))
        .ok()
        .and_then(|h| CoefficientVector::new(lambda).ok().and_then(|l| HornPair::new(h, l).ok()));
    let mut t = DiscriminantalTriple {
        a: a.clone(),
        marked: marked.clone(),
        pair: None,
        sigma: None,
        homogeneous,
        reduced: false,
        row_signs_constant: false,
        lambda_signs: false,
    };
    if let Some(p) = pair {
        t.reduced = is_reduced(&p.h);
        t.row_signs_constant = rows_have_constant_sign(&p.h);
        let sigma = sign_vector(&p.h);
        t.lambda_signs = t.row_signs_constant && lambda_sign_condition(&p.h, &p.lambda, &sigma);
        t.sigma = t.row_signs_constant.then_some(sigma);
        t.pair = Some(p);
    }
    t
}

/// `{"A": [[...]], "delta": <poly>, "marked_term_index": int}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub delta: PolyJson,
    pub marked_term_index: usize,
}

impl TripleJson {
    pub fn to_parts(&self) -> Result<(ToricMatrix, MarkedPoly)> {
        let a = ToricMatrix::new(self.a.clone())?;
        let delta = self.delta.to_poly()?;
        if a.ncols() != delta.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "A has {} columns, the polynomial has {} variables",
                a.ncols(),
                delta.nvars()
            )));
        }
        let marked = MarkedPoly::from_index(delta, self.marked_term_index)?.with_vars(self.delta.vars.clone())?;
        Ok((a, marked))
    }

    pub fn from_parts(a: &ToricMatrix, marked: &MarkedPoly) -> Self {
        TripleJson {
            a: a.rows().to_vec(),
            delta: PolyJson::from_poly(marked.delta(), marked.vars()),
            marked_term_index: marked.marked_index(),
        }
    }
}
