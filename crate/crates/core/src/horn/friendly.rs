//! Deciding the identity `Σ_j λ_j (Hu)^{h_j} = 1`.
//!
//! Multiplying through by `∏_i (Hu)_i^{d_i}`, `d_i = max_j max(-h_ij, 0)`,
//! turns it into a homogeneous polynomial identity `P(u) = 0` of degree
//! `D = Σ d_i`. `P` depends on `u` only through `Hu`, so it suffices to test
//! it on the span of a maximal independent set of columns; homogeneity then
//! lets one of those coordinates be fixed to 1. The reduced polynomial is
//! expanded when that is cheap, otherwise evaluated on the grid `{0..D}^k`,
//! which decides the identity completely. When neither fits the budget the
//! polynomial is evaluated at seeded random integer points of 40 bits; a
//! nonzero `P` of degree `D` survives all of them with probability at most
//! `(D / 2^40)^RANDOM_POINTS`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::types::{CoefficientVector, HornMatrix};
use crate::exactalg::det::ExactRing;
use crate::exactalg::linalg::independent_columns;
use crate::exactalg::packed::{Layout, PackedPoly};
use crate::exactalg::rational::Rational;
use crate::exactalg::{Monomial, SparsePoly};

const EXPANSION_TERMS: f64 = 2.0e5;
const GRID_POINTS: f64 = 2.0e5;
const RANDOM_POINTS: usize = 24;
const RANDOM_SEED: u64 = 0x6672_6965_6e64_6c79;

/// How a friendliness verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityMethod {
    Expansion,
    Grid,
    RandomPoints,
}

pub fn friendliness_check(h: &HornMatrix, lambda: &CoefficientVector) -> bool {
    friendliness_check_with(h, lambda).0
}

pub fn friendliness_check_with(h: &HornMatrix, lambda: &CoefficientVector) -> (bool, IdentityMethod) {
    if h.ncols() != lambda.len() {
        return (false, IdentityMethod::Expansion);
    }
    let setup = Setup::new(h, lambda);
    let k = setup.nvars;
    let estimate = binomial_estimate(setup.degree + k as i64, k as i64);
    let grid = ((setup.degree + 1) as f64).powi(k as i32);
    if estimate <= EXPANSION_TERMS {
        (setup.expand_is_zero(), IdentityMethod::Expansion)
    } else if grid <= GRID_POINTS {
        (setup.grid_is_zero(), IdentityMethod::Grid)
    } else {
        (setup.random_points_are_zero(), IdentityMethod::RandomPoints)
    }
}

fn binomial_estimate(n: i64, k: i64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

struct Setup {
    /// coefficients of each linear form in the reduced coordinates; entry 0 is the constant
    forms: Vec<Vec<i64>>,
    /// exponent of form i in the term of column j, after clearing
    exps: Vec<Vec<u32>>,
    clear: Vec<u32>,
    /// λ scaled to integers, and the scale
    lambda: Vec<BigInt>,
    scale: BigInt,
    nvars: usize,
    degree: i64,
}

impl Setup {
    fn new(h: &HornMatrix, lambda: &CoefficientVector) -> Self {
        let cols = independent_columns(h.rows());
        let nvars = cols.len().saturating_sub(1);
        let forms = h
            .rows()
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        let clear: Vec<u32> = h
            .rows()
            .iter()
            .map(|r| r.iter().map(|&e| (-e).max(0)).max().unwrap_or(0) as u32)
            .collect();
        let exps = (0..h.ncols())
            .map(|j| {
                (0..h.nrows())
                    .map(|i| (h.row(i)[j] + clear[i] as i64) as u32)
                    .collect()
            })
            .collect();
        let scale = lambda
            .values()
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let lambda = lambda
            .values()
            .iter()
            .map(|v| (v * Rational::from_integer(scale.clone())).to_integer())
            .collect();
        let degree = clear.iter().map(|&d| d as i64).sum();
        Setup {
            forms,
            exps,
            clear,
            lambda,
            scale,
            nvars,
            degree,
        }
    }

    fn form_poly(&self, i: usize) -> SparsePoly {
        let n = self.nvars;
        let mut p = SparsePoly::zero(n);
        for (k, &c) in self.forms[i].iter().enumerate() {
            if c == 0 {
                continue;
            }
            let m = if k == 0 {
                Monomial::one(n)
            } else {
                Monomial::var(n, k - 1)
            };
            p.add_term(m, Rational::from_integer(c.into()));
        }
        p
    }

    fn expand_is_zero(&self) -> bool {
        let forms: Vec<SparsePoly> = (0..self.forms.len()).map(|i| self.form_poly(i)).collect();
        let n = self.nvars;
        let fits = Layout::new(n).filter(|l| self.degree < l.max_exponent() as i64);
        match fits {
            Some(layout) => {
                let packed: Vec<PackedPoly> = forms
                    .iter()
                    .map(|f| PackedPoly::from_sparse(layout, f).expect("integer polynomial"))
                    .collect();
                let consts: Vec<PackedPoly> = self
                    .lambda
                    .iter()
                    .chain(std::iter::once(&self.scale))
                    .map(|c| PackedPoly::constant(layout, c.clone()))
                    .collect();
                self.expand(&packed, &consts).is_zero_elem()
            }
            None => {
                let consts: Vec<SparsePoly> = self
                    .lambda
                    .iter()
                    .chain(std::iter::once(&self.scale))
                    .map(|c| SparsePoly::constant(n, Rational::from_integer(c.clone())))
                    .collect();
                self.expand(&forms, &consts).is_zero_elem()
            }
        }
    }

    /// `Σ_j λ_j ∏ L_i^{e_ij} - scale ∏ L_i^{d_i}`; `consts` holds the λ_j then the scale.
    fn expand<T: ExactRing>(&self, forms: &[T], consts: &[T]) -> T {
        let mut powers: Vec<Vec<T>> = forms.iter().map(|f| vec![f.one_like()]).collect();
        let mut power = |i: usize, e: u32| -> T {
            let e = e as usize;
            while powers[i].len() <= e {
                let next = powers[i].last().expect("nonempty").mul_elem(&forms[i]);
                powers[i].push(next);
            }
            powers[i][e].clone()
        };
        let mut product = |exps: &[u32], c: &T| -> T {
            let mut acc = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    acc = acc.mul_elem(&power(i, e));
                }
            }
            acc
        };
        let mut total = product(&self.clear, &consts[consts.len() - 1]).neg_elem();
        for (j, exps) in self.exps.iter().enumerate() {
            total = total.add_elem(&product(exps, &consts[j]));
        }
        total
    }

    fn grid_is_zero(&self) -> bool {
        let n = self.nvars;
        let side = self.degree as u64 + 1;
        let mut point = vec![0i64; n];
        loop {
            if !self.eval_at(&point).is_zero() {
                return false;
            }
            // odometer over {0..D}^n
            let mut k = 0;
            loop {
                if k == n {
                    return true;
                }
                point[k] += 1;
                if (point[k] as u64) < side {
                    break;
                }
                point[k] = 0;
                k += 1;
            }
        }
    }

    fn random_points_are_zero(&self) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
        (0..RANDOM_POINTS).all(|_| {
            let point: Vec<i64> = (0..self.nvars).map(|_| rng.gen_range(1..1i64 << 40)).collect();
            self.eval_at(&point).is_zero()
        })
    }

    fn eval_at(&self, point: &[i64]) -> BigInt {
        let values: Vec<BigInt> = self
            .forms
            .iter()
            .map(|f| {
                let mut v = BigInt::from(f.first().copied().unwrap_or(0));
                for (k, &c) in f.iter().enumerate().skip(1) {
                    v += BigInt::from(c) * point[k - 1];
                }
                v
            })
            .collect();
        let product = |exps: &[u32]| -> BigInt {
            exps.iter()
                .zip(&values)
                .filter(|(e, _)| **e > 0)
                .fold(BigInt::one(), |acc, (e, v)| acc * num_traits::pow(v.clone(), *e as usize))
        };
        let mut total = -(&self.scale * product(&self.clear));
        for (j, exps) in self.exps.iter().enumerate() {
            total += &self.lambda[j] * product(exps);
        }
        total
    }
}

/// Decides with both methods; used to cross-check the two procedures.
pub fn friendliness_both_ways(h: &HornMatrix, lambda: &CoefficientVector) -> (bool, bool) {
    let s = Setup::new(h, lambda);
    (s.expand_is_zero(), s.grid_is_zero())
}

