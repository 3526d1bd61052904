use super::tree::StagedTree;
use crate::error::{Error, Result};
use crate::exactalg::rational::Rational;
use crate::horn::{horn_pair_equal, reduce_horn, CoefficientVector, HornMatrix, HornPair};

/// Horn matrix with rows `s_i` (all labels) followed by `f_1, f_2, ...`:
/// `h_ij = μ_ij`, `h_fj = -Σ_{s_l ∈ f} μ_lj`, and `λ_j = (-1)^{Σ_f h_fj}`.
pub fn tree_horn(t: &StagedTree) -> (HornMatrix, CoefficientVector) {
    let mu = t.mu();
    let nj = t.num_leaves();
    let mut rows: Vec<Vec<i64>> = mu.to_vec();
    let mut labels: Vec<String> = t.labels().to_vec();
    for (fi, f) in t.florets().iter().enumerate() {
        rows.push((0..nj).map(|j| -f.iter().map(|&l| mu[l][j]).sum::<i64>()).collect());
        labels.push(t.floret_name(fi));
    }
    let nl = t.labels().len();
    let lambda = (0..nj)
        .map(|j| {
            let s: i64 = rows[nl..].iter().map(|r| r[j]).sum();
            Rational::from_integer(if s.rem_euclid(2) == 0 { 1 } else { -1 }.into())
        })
        .collect();
    let h = HornMatrix::with_labels(rows, Some(labels)).expect("tree Horn matrices have zero column sums");
    (h, CoefficientVector::new(lambda).expect("signs are nonzero"))
}

/// The reduced Horn pair of the tree.
pub fn tree_horn_reduced(t: &StagedTree) -> Result<HornPair> {
    let (h, l) = tree_horn(t);
    reduce_horn(&h, &l)
}

/// Merges floret `f2` into `f1`, matching labels in sorted order.
pub fn identify_florets(t: &StagedTree, f1: usize, f2: usize) -> Result<StagedTree> {
    let n = t.florets().get(f2).map_or(0, Vec::len);
    identify_florets_with(t, f1, f2, &(0..n).collect::<Vec<_>>())
}

/// Merges floret `f2` into floret `f1`: the label `florets[f2][k]` is
/// replaced by `florets[f1][bijection[k]]` on every edge.
pub fn identify_florets_with(t: &StagedTree, f1: usize, f2: usize, bijection: &[usize]) -> Result<StagedTree> {
    let nf = t.florets().len();
    if f1 >= nf || f2 >= nf {
        return Err(Error::InvalidInput(format!("floret index out of range (tree has {nf})")));
    }
    if f1 == f2 {
        return Err(Error::InvalidInput("cannot identify a floret with itself".into()));
    }
    let (a, b) = (&t.florets()[f1], &t.florets()[f2]);
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    let mut seen = vec![false; a.len()];
    if bijection.len() != b.len() || !bijection.iter().all(|&k| k < a.len() && !std::mem::replace(&mut seen[k], true)) {
        return Err(Error::InvalidInput("floret bijection must be a permutation".into()));
    }
    let labels = t.labels();
    t.relabel(|l| match b.iter().position(|&x| x == l) {
        Some(k) => labels[a[bijection[k]]].clone(),
        None => labels[l].clone(),
    })
}

/// Statistical equivalence: equal reduced Horn pairs up to a bijection of
/// the leaves.
pub fn tree_equivalent(t1: &StagedTree, t2: &StagedTree) -> Result<bool> {
    if t1.num_leaves() != t2.num_leaves() {
        return Ok(false);
    }
    let p1 = tree_horn_reduced(t1)?;
    let p2 = tree_horn_reduced(t2)?;
    horn_pair_equal(&p1, &p2, None)
}
