//! Likelihood-side checks that a rational map really is the maximum
//! likelihood estimator of its image: exact critical points, idempotence
//! and dominance over sampled model points.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::rational::{common_denominator, Rational};
use crate::horn::{horn_map_eval, HornPair};
use crate::stagedtree::{tree_horn_reduced, tree_mle, StagedTree};

/// Compares `∏ p_i^{u_i}` with `∏ q_i^{u_i}` exactly; `u` is first scaled
/// to integers.
pub fn log_likelihood_compare(p: &[Rational], q: &[Rational], u: &[Rational]) -> Result<Ordering> {
    if p.len() != u.len() || q.len() != u.len() {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {}, {} and {}",
            p.len(),
            q.len(),
            u.len()
        )));
    }
    if let Some(i) = p.iter().chain(q).chain(u).position(|x| x.is_negative()) {
        return Err(Error::InvalidInput(format!("entry {i} is negative")));
    }
    let d = common_denominator(u);
    let n: Vec<u32> = u
        .iter()
        .map(|x| {
            (x * Rational::from_integer(d.clone()))
                .to_integer()
                .to_u32()
                .ok_or_else(|| Error::InvalidInput("scaled count exceeds 32 bits".into()))
        })
        .collect::<Result<_>>()?;
    let g = n.iter().fold(0u32, |a, &b| num_integer::Integer::gcd(&a, &b));
    let n: Vec<u32> = n.iter().map(|e| if g > 1 { e / g } else { *e }).collect();
    let power = |v: &[Rational]| -> (BigInt, BigInt) {
        v.iter()
            .zip(&n)
            .filter(|(_, e)| **e > 0)
            .fold((BigInt::one(), BigInt::one()), |(a, b), (x, e)| {
                (a * x.numer().pow(*e), b * x.denom().pow(*e))
            })
    };
    let (pn, pd) = power(p);
    let (qn, qd) = power(q);
    Ok((pn * qd).cmp(&(qn * pd)))
}

/// `Σ_j h_{jℓ} (Hu)_j / (Hv)_j` for each column `ℓ`: the gradient of
/// `L_u` at `v` divided by `L_u(v)`.
pub fn critical_gradient(pair: &HornPair, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
    let hu = pair.h.apply(u)?;
    let hv = pair.h.apply(v)?;
    if let Some(row) = hv.iter().position(Zero::is_zero) {
        return Err(Error::PoleAtInput { row });
    }
    let ratios: Vec<Rational> = hu.iter().zip(&hv).map(|(a, b)| a / b).collect();
    Ok((0..pair.h.ncols())
        .map(|l| {
            ratios
                .iter()
                .enumerate()
                .filter(|(j, _)| pair.h.row(*j)[l] != 0)
                .map(|(j, r)| r * Rational::from_integer(pair.h.row(j)[l].into()))
                .sum()
        })
        .collect())
}

/// Finite-difference estimate of the same gradient in floating point,
/// with step `10^-6`. Diagnostic only.
pub fn numeric_gradient(pair: &HornPair, u: &[Rational], v: &[Rational]) -> Result<Vec<f64>> {
    let log_l = |w: &[Rational]| -> Result<f64> {
        let phi = horn_map_eval(pair, w)?;
        Ok(phi
            .iter()
            .zip(u)
            .map(|(p, c)| c.to_f64().unwrap_or(0.0) * p.to_f64().unwrap_or(0.0).ln())
            .sum())
    };
    let step = Rational::new(BigInt::one(), BigInt::from(1_000_000));
    let base = log_l(v)?;
    (0..v.len())
        .map(|l| {
            let mut w = v.to_vec();
            w[l] += &step;
            Ok((log_l(&w)? - base) * 1e6)
        })
        .collect()
}

/// Anything that maps count vectors to probability vectors.
pub trait Estimator: Sync {
    fn states(&self) -> usize;
    fn estimate(&self, u: &[Rational]) -> Result<Vec<Rational>>;
}

impl Estimator for HornPair {
    fn states(&self) -> usize {
        self.h.ncols()
    }

    fn estimate(&self, u: &[Rational]) -> Result<Vec<Rational>> {
        horn_map_eval(self, u)
    }
}

impl Estimator for StagedTree {
    fn states(&self) -> usize {
        self.num_leaves()
    }

    fn estimate(&self, u: &[Rational]) -> Result<Vec<Rational>> {
        Ok(tree_mle(self, u)?.1)
    }
}

impl Estimator for crate::disctriple::ModelRecord {
    fn states(&self) -> usize {
        self.pair.h.ncols()
    }

    fn estimate(&self, u: &[Rational]) -> Result<Vec<Rational>> {
        self.mle(u)
    }
}

/// `Φ(Φ(u)·N) = Φ(u)` with `N` clearing the denominators of `Φ(u)`.
pub fn mle_idempotence_check(model: &dyn Estimator, u: &[Rational]) -> Result<bool> {
    let p = model.estimate(u)?;
    let n = Rational::from_integer(common_denominator(&p));
    let scaled: Vec<Rational> = p.iter().map(|x| x * &n).collect();
    Ok(model.estimate(&scaled)? == p)
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
}

/// `{"checks": [...], "seed": int, "failures": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub seed: u64,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_counts(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(1..40))))
        .collect()
}

struct Trial {
    failures: Vec<(usize, String)>,
}

/// Runs every check on `trials` seeded random count vectors. Dominance is
/// tested against `dominance_samples` model points per trial, taken as
/// images of further random vectors.
pub fn verify_model(
    model: &dyn Estimator,
    pair: Option<&HornPair>,
    seed: u64,
    trials: usize,
    dominance_samples: usize,
) -> VerificationReport {
    const NAMES: [&str; 5] = ["in_open_simplex", "idempotence", "critical_point", "dominance", "agrees_with_horn_map"];
    let n = model.states();
    let run = |t: usize| -> Trial {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        let u = random_counts(&mut rng, n);
        let mut failures = Vec::new();
        let mut fail = |k: usize, msg: String| failures.push((k, format!("trial {t}: {}: {msg}", NAMES[k])));
        let p = match model.estimate(&u) {
            Ok(p) => p,
            Err(e) => {
                fail(0, e.to_string());
                return Trial { failures };
            }
        };
        if !(p.iter().all(Signed::is_positive) && p.iter().sum::<Rational>().is_one()) {
            fail(0, "estimate leaves the open simplex".into());
        }
        match mle_idempotence_check(model, &u) {
            Ok(true) => {}
            Ok(false) => fail(1, "Φ(Φ(u)) differs from Φ(u)".into()),
            Err(e) => fail(1, e.to_string()),
        }
        if let Some(pair) = pair {
            match critical_gradient(pair, &u, &u) {
                Ok(g) if g.iter().all(Zero::is_zero) => {}
                Ok(_) => fail(2, "nonzero gradient at v = u".into()),
                Err(e) => fail(2, e.to_string()),
            }
            match horn_map_eval(pair, &u) {
                Ok(q) if q == p => {}
                Ok(_) => fail(4, "Horn map differs from the estimate".into()),
                Err(e) => fail(4, e.to_string()),
            }
        }
        for _ in 0..dominance_samples {
            let w = random_counts(&mut rng, n);
            let Ok(q) = model.estimate(&w) else { continue };
            match log_likelihood_compare(&p, &q, &u) {
                Ok(Ordering::Greater) => {}
                Ok(Ordering::Equal) if q == p => {}
                Ok(_) => {
                    fail(3, "a model point has larger likelihood".into());
                    break;
                }
                Err(e) => {
                    fail(3, e.to_string());
                    break;
                }
            }
        }
        Trial { failures }
    };
    let results: Vec<Trial> = (0..trials).into_par_iter().map(run).collect();
    let active: Vec<usize> = if pair.is_some() { vec![0, 1, 2, 3, 4] } else { vec![0, 1, 3] };
    let checks = active
        .iter()
        .map(|&k| Check {
            name: NAMES[k].into(),
            trials,
            passed: results.iter().filter(|r| !r.failures.iter().any(|(c, _)| *c == k)).count(),
        })
        .collect();
    VerificationReport {
        checks,
        seed,
        failures: results.into_iter().flat_map(|r| r.failures.into_iter().map(|(_, m)| m)).collect(),
    }
}

/// Verifies a staged tree through its closed-form estimate and its reduced
/// Horn pair.
pub fn verify_tree(t: &StagedTree, seed: u64, trials: usize, dominance_samples: usize) -> Result<VerificationReport> {
    let pair = tree_horn_reduced(t)?;
    Ok(verify_model(t, Some(&pair), seed, trials, dominance_samples))
}
