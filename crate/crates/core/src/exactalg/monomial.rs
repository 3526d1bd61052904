use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Laurent monomial `x^e` over a fixed number of variables.
///
/// Ordered graded-lexicographically: larger total degree is greater, ties
/// broken by comparing exponents of `x1`, `x2`, ... in turn.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Laurent quotient; always defined.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// True when `other` divides `self` inside the polynomial ring.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Entrywise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Entrywise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
            match e {
                0 => {}
                1 => parts.push(name),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}
