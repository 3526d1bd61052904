use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::friendly::friendliness_check;
use super::reduce::is_reduced;
use super::types::{CoefficientVector, HornMatrix, HornPair, PairStatus, SignVector};
use crate::exactalg::rational::{pow_i, Rational};

/// Outcome of [`horn_pair_check`]. Serialises as
/// `{"friendly": bool, "horn": bool, "sigma": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornVerdict {
    pub friendly: bool,
    pub horn: bool,
    pub sigma: SignVector,
    #[serde(skip)]
    pub reduced: bool,
    #[serde(skip)]
    pub row_signs_constant: bool,
    #[serde(skip)]
    pub positive: bool,
}

/// True when the nonzero entries of every row share one sign.
pub fn rows_have_constant_sign(h: &HornMatrix) -> bool {
    h.rows()
        .iter()
        .all(|r| !(r.iter().any(|&v| v > 0) && r.iter().any(|&v| v < 0)))
}

/// `sign(H · 1)`.
pub fn sign_vector(h: &HornMatrix) -> SignVector {
    SignVector(h.rows().iter().map(|r| r.iter().sum::<i64>().signum() as i8).collect())
}

/// `λ_j σ^{h_j} > 0` for every column `j`.
pub fn lambda_sign_condition(h: &HornMatrix, lambda: &CoefficientVector, sigma: &SignVector) -> bool {
    (0..h.ncols()).all(|j| {
        let negatives = (0..h.nrows())
            .filter(|&i| sigma.0[i] < 0 && h.row(i)[j].rem_euclid(2) == 1)
            .count();
        let s = if negatives % 2 == 0 { 1 } else { -1 };
        lambda.values()[j].is_positive() == (s > 0)
    })
}

/// `λ_j (H1)^{h_j} > 0` for every column; false at a pole.
pub fn positive_at_ones(h: &HornMatrix, lambda: &CoefficientVector) -> bool {
    let ones = vec![Rational::one(); h.ncols()];
    let forms = h.apply(&ones).expect("matching dimension");
    if forms.iter().any(Zero::is_zero) {
        return false;
    }
    (0..h.ncols()).all(|j| {
        let mut v = lambda.values()[j].clone();
        for (i, f) in forms.iter().enumerate() {
            v *= pow_i(f, h.row(i)[j]).expect("nonzero form");
        }
        v.is_positive()
    })
}

/// Friendly, reduced, constant row signs, and positive at the all-ones
/// vector, which for friendly reduced pairs implies positivity everywhere
/// on the positive orthant.
pub fn horn_pair_check(h: &HornMatrix, lambda: &CoefficientVector) -> HornVerdict {
    let sigma = sign_vector(h);
    if h.ncols() != lambda.len() {
        return HornVerdict {
            friendly: false,
            horn: false,
            sigma,
            reduced: false,
            row_signs_constant: false,
            positive: false,
        };
    }
    let friendly = friendliness_check(h, lambda);
    let reduced = is_reduced(h);
    let row_signs_constant = rows_have_constant_sign(h);
    let positive = positive_at_ones(h, lambda);
    HornVerdict {
        friendly,
        horn: friendly && reduced && row_signs_constant && positive,
        sigma,
        reduced,
        row_signs_constant,
        positive,
    }
}

/// Runs [`horn_pair_check`] and records the outcome in `pair.status`.
pub fn verify_pair(pair: &mut HornPair) -> HornVerdict {
    let v = horn_pair_check(&pair.h, &pair.lambda);
    pair.status = if v.horn {
        PairStatus::Horn
    } else if v.friendly {
        PairStatus::Friendly
    } else {
        PairStatus::Unverified
    };
    v
}
