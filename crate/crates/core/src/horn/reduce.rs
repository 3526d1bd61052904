use num_integer::Integer;
use num_traits::One;

use super::types::{CoefficientVector, HornMatrix, HornPair};
use crate::error::{Error, Result};
use crate::exactalg::rational::{pow_i, Rational};

/// Row divided by the gcd of its entries, first nonzero entry positive,
/// together with the multiplier `c` such that `row = c * primitive`.
/// `None` for the zero row.
pub fn primitive_row(row: &[i64]) -> Option<(Vec<i64>, i64)> {
    let g = row.iter().fold(0i64, |g, &v| g.gcd(&v));
    if g == 0 {
        return None;
    }
    let first = *row.iter().find(|&&v| v != 0).expect("nonzero row");
    let c = if first < 0 { -g } else { g };
    Some((row.iter().map(|v| v / c).collect(), c))
}

/// True when `H` has no zero row and no two collinear rows.
pub fn is_reduced(h: &HornMatrix) -> bool {
    let mut seen = std::collections::HashSet::new();
    h.rows().iter().all(|r| match primitive_row(r) {
        None => false,
        Some((p, _)) => seen.insert(p),
    })
}

struct Group {
    primitive: Vec<i64>,
    multipliers: Vec<i64>,
    labels: Vec<String>,
}

/// Sums collinear rows, deletes zero rows and groups that cancel, and
/// adjusts `λ` so that the map `u ↦ λ_j (Hu)^{h_j}` is unchanged.
///
/// A group `row_i = c_i r` is replaced by `(Σ c_i) r` and
/// `λ_j ← λ_j ∏ c_i^{c_i r_j} / (Σ c_i)^{(Σ c_i) r_j}`; the last factor is
/// absent when the group sums to zero and is deleted.
pub fn reduce_horn(h: &HornMatrix, lambda: &CoefficientVector) -> Result<HornPair> {
    if h.ncols() != lambda.len() {
        return Err(Error::DimensionMismatch(format!(
            "H has {} columns but lambda has {} entries",
            h.ncols(),
            lambda.len()
        )));
    }
    let mut groups: Vec<Group> = Vec::new();
    for (i, row) in h.rows().iter().enumerate() {
        let Some((p, c)) = primitive_row(row) else {
            continue;
        };
        let label = h.label(i);
        match groups.iter_mut().find(|g| g.primitive == p) {
            Some(g) => {
                g.multipliers.push(c);
                g.labels.push(label);
            }
            None => groups.push(Group {
                primitive: p,
                multipliers: vec![c],
                labels: vec![label],
            }),
        }
    }
    let mut lam: Vec<Rational> = lambda.values().to_vec();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for g in &groups {
        let total: i64 = g.multipliers.iter().sum();
        if g.multipliers.len() == 1 {
            rows.push(g.primitive.iter().map(|v| v * total).collect());
            labels.push(g.labels[0].clone());
            continue;
        }
        for (j, l) in lam.iter_mut().enumerate() {
            let rj = g.primitive[j];
            if rj == 0 {
                continue;
            }
            let mut f = Rational::one();
            for &c in &g.multipliers {
                f *= pow_i(&Rational::from_integer(c.into()), c * rj)?;
            }
            if total != 0 {
                f /= pow_i(&Rational::from_integer(total.into()), total * rj)?;
            }
            *l *= f;
        }
        if total != 0 {
            rows.push(g.primitive.iter().map(|v| v * total).collect());
            labels.push(g.labels.join("+"));
        }
    }
    if rows.is_empty() {
        return Err(Error::InvalidHornMatrix("reduction deletes every row".into()));
    }
    let labels = h.labels().map(|_| labels);
    HornPair::new(HornMatrix::with_labels(rows, labels)?, CoefficientVector::new(lam)?)
}
