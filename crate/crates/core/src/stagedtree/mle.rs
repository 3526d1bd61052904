use num_traits::{One, Signed, Zero};

use super::tree::StagedTree;
use crate::error::{Error, Result};
use crate::exactalg::rational::{pow_i, Rational};

fn check_counts(t: &StagedTree, u: &[Rational]) -> Result<()> {
    if u.len() != t.num_leaves() {
        return Err(Error::DimensionMismatch(format!(
            "{} counts for {} leaves",
            u.len(),
            t.num_leaves()
        )));
    }
    if let Some(i) = u.iter().position(Signed::is_negative) {
        return Err(Error::InvalidInput(format!("count {i} is negative")));
    }
    if u.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("all counts are zero".into()));
    }
    Ok(())
}

/// `p_j = ∏_i s_i^{μ_ij}` for a point of the open parameter space.
pub fn tree_parametrize(t: &StagedTree, s: &[Rational]) -> Result<Vec<Rational>> {
    if s.len() != t.labels().len() {
        return Err(Error::InvalidParameter(format!(
            "{} parameters for {} labels",
            s.len(),
            t.labels().len()
        )));
    }
    for (i, v) in s.iter().enumerate() {
        if !v.is_positive() || v >= &Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "parameter {} = {v} is outside (0, 1)",
                t.labels()[i]
            )));
        }
    }
    for (fi, f) in t.florets().iter().enumerate() {
        let total: Rational = f.iter().map(|&l| &s[l]).sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!(
                "parameters of floret {} sum to {total}",
                t.floret_name(fi)
            )));
        }
    }
    Ok(path_products(t, s))
}

fn path_products(t: &StagedTree, s: &[Rational]) -> Vec<Rational> {
    (0..t.num_leaves())
        .map(|j| {
            t.mu().iter().zip(s).filter(|(m, _)| m[j] > 0).fold(Rational::one(), |acc, (m, v)| {
                acc * pow_i(v, m[j]).expect("nonnegative exponent")
            })
        })
        .collect()
}

/// Closed-form maximum likelihood estimate: `(ŝ, p̂)`.
pub fn tree_mle(t: &StagedTree, u: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    check_counts(t, u)?;
    let alpha: Vec<Rational> = t
        .mu()
        .iter()
        .map(|row| {
            row.iter()
                .zip(u)
                .filter(|(m, _)| **m > 0)
                .map(|(m, x)| x * Rational::from_integer((*m).into()))
                .sum()
        })
        .collect();
    let mut s = vec![Rational::zero(); alpha.len()];
    for (fi, f) in t.florets().iter().enumerate() {
        let total: Rational = f.iter().map(|&l| &alpha[l]).sum();
        if total.is_zero() {
            return Err(Error::ZeroDenominator(fi));
        }
        for &l in f {
            s[l] = &alpha[l] / &total;
        }
    }
    let p = path_products(t, &s);
    Ok((s, p))
}

/// The same estimate, aggregated over edges: for label `s_i`,
/// `Σ u_[v'] / Σ u_[v]` over edges `v → v'` carrying `s_i`, where `u_[v]`
/// sums the counts of paths through `v`.
pub fn tree_mle_aggregated(t: &StagedTree, u: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    check_counts(t, u)?;
    let n = t.node_names().len();
    let mut through = vec![Rational::zero(); n];
    for (j, p) in t.paths().iter().enumerate() {
        through[t.root()] += &u[j];
        for &k in p {
            through[t.edges()[k].1] += &u[j];
        }
    }
    let nl = t.labels().len();
    let mut num = vec![Rational::zero(); nl];
    let mut den = vec![Rational::zero(); nl];
    for &(from, to, l) in t.edges() {
        num[l] += &through[to];
        den[l] += &through[from];
    }
    let mut s = Vec::with_capacity(nl);
    for l in 0..nl {
        if den[l].is_zero() {
            return Err(Error::ZeroDenominator(t.floret_of_label(l)));
        }
        s.push(&num[l] / &den[l]);
    }
    let p = path_products(t, &s);
    Ok((s, p))
}
