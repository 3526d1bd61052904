use num_traits::Zero;

use super::types::{HornMatrix, HornPair};
use crate::error::{Error, Result};
use crate::exactalg::rational::{pow_i, Rational};

/// `λ_j (Hu)^{h_j}` for every column `j`.
pub fn horn_map_eval(pair: &HornPair, u: &[Rational]) -> Result<Vec<Rational>> {
    horn_map_raw(&pair.h, pair.lambda.values(), u)
}

pub(crate) fn horn_map_raw(h: &HornMatrix, lambda: &[Rational], u: &[Rational]) -> Result<Vec<Rational>> {
    let forms = h.apply(u)?;
    for (i, f) in forms.iter().enumerate() {
        if f.is_zero() && h.row(i).iter().any(|&e| e < 0) {
            return Err(Error::PoleAtInput { row: i });
        }
    }
    (0..h.ncols())
        .map(|j| {
            let mut v = lambda[j].clone();
            for (i, f) in forms.iter().enumerate() {
                let e = h.row(i)[j];
                if e != 0 {
                    v *= pow_i(f, e).map_err(|_| Error::PoleAtInput { row: i })?;
                }
            }
            Ok(v)
        })
        .collect()
}

/// Sum of the map's coordinates at `u`; identically one for friendly pairs.
pub fn horn_map_sum(pair: &HornPair, u: &[Rational]) -> Result<Rational> {
    Ok(horn_map_eval(pair, u)?
        .into_iter()
        .fold(Rational::zero(), |a, b| a + b))
}
