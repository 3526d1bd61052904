//! Integer polynomials with exponent vectors packed into a `u128`.
//!
//! Used as the working representation inside determinant computations.
//! The key layout is `[total degree : 16 bits][x1][x2]...` so that integer
//! comparison of keys is graded-lex comparison of monomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::monomial::Monomial;
use super::poly::SparsePoly;
use super::rational::Rational;
use crate::error::{Error, Result};

const DEG_SHIFT: u32 = 112;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    nvars: u32,
    bits: u32,
}

impl Layout {
    /// Layout for `nvars` variables, or `None` when they do not fit.
    pub fn new(nvars: usize) -> Option<Layout> {
        let bits = match nvars {
            0..=7 => 16,
            8..=9 => 12,
            10..=14 => 8,
            _ => return None,
        };
        Some(Layout {
            nvars: nvars as u32,
            bits,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    /// Largest exponent a single variable may reach.
    pub fn max_exponent(&self) -> u32 {
        (1u32 << self.bits) - 1
    }

    fn shift(&self, i: usize) -> u32 {
        DEG_SHIFT - self.bits * (i as u32 + 1)
    }

    pub fn pack(&self, exps: &[i32]) -> Option<u128> {
        let mut key: u128 = 0;
        let mut deg: u128 = 0;
        for (i, &e) in exps.iter().enumerate() {
            if e < 0 || e as u32 > self.max_exponent() {
                return None;
            }
            key |= (e as u128) << self.shift(i);
            deg += e as u128;
        }
        if deg >= 1 << 16 {
            return None;
        }
        Some(key | (deg << DEG_SHIFT))
    }

    pub fn unpack(&self, key: u128) -> Vec<i32> {
        let mask = (1u128 << self.bits) - 1;
        (0..self.nvars())
            .map(|i| ((key >> self.shift(i)) & mask) as i32)
            .collect()
    }

    fn divides(&self, a: u128, b: u128) -> bool {
        // true when monomial `a` divides monomial `b`
        let mask = (1u128 << self.bits) - 1;
        (0..self.nvars()).all(|i| {
            let s = self.shift(i);
            (a >> s) & mask <= (b >> s) & mask
        })
    }
}

/// Integer-coefficient polynomial; terms sorted by key, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedPoly {
    layout: Layout,
    terms: Vec<(u128, BigInt)>,
}

impl PackedPoly {
    pub fn zero(layout: Layout) -> Self {
        PackedPoly {
            layout,
            terms: Vec::new(),
        }
    }

    pub fn constant(layout: Layout, c: BigInt) -> Self {
        let mut p = Self::zero(layout);
        if !c.is_zero() {
            p.terms.push((0, c));
        }
        p
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .first()
            .map(|(k, _)| (k >> DEG_SHIFT) as u32)
            .unwrap_or(0)
    }

    /// Converts a polynomial with integer coefficients and nonnegative
    /// exponents; `None` otherwise.
    pub fn from_sparse(layout: Layout, p: &SparsePoly) -> Option<Self> {
        if p.nvars() != layout.nvars() {
            return None;
        }
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return None;
            }
            terms.push((layout.pack(m.exponents())?, c.to_integer()));
        }
        Some(PackedPoly { layout, terms })
    }

    pub fn to_sparse(&self) -> SparsePoly {
        SparsePoly::from_terms(
            self.layout.nvars(),
            self.terms.iter().map(|(k, c)| {
                (
                    Rational::from_integer(c.clone()),
                    Monomial(self.layout.unpack(*k)),
                )
            }),
        )
    }

    fn from_unsorted(layout: Layout, mut raw: Vec<(u128, BigInt)>) -> Self {
        raw.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(u128, BigInt)> = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            match terms.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => {
                    if let Some((_, lc)) = terms.last() {
                        if lc.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push((k, c));
                }
            }
        }
        if let Some((_, lc)) = terms.last() {
            if lc.is_zero() {
                terms.pop();
            }
        }
        PackedPoly { layout, terms }
    }

    fn merge(&self, other: &PackedPoly, negate_other: bool) -> PackedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 > b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 > a[i].0 {
                let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_other {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        PackedPoly {
            layout: self.layout,
            terms: out,
        }
    }

    pub fn add(&self, other: &PackedPoly) -> PackedPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &PackedPoly) -> PackedPoly {
        self.merge(other, true)
    }

    pub fn neg(&self) -> PackedPoly {
        PackedPoly {
            layout: self.layout,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &PackedPoly) -> PackedPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.layout);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (k, c) = &small.terms[0];
            return PackedPoly {
                layout: self.layout,
                terms: large.terms.iter().map(|(k2, c2)| (k + k2, c * c2)).collect(),
            };
        }
        let mut raw = Vec::with_capacity(self.len() * other.len());
        for (ka, ca) in &small.terms {
            for (kb, cb) in &large.terms {
                raw.push((ka + kb, ca * cb));
            }
        }
        Self::from_unsorted(self.layout, raw)
    }

    /// `self / divisor`, which must be exact.
    pub fn div_exact(&self, divisor: &PackedPoly) -> Result<PackedPoly> {
        let Some((lk, lc)) = divisor.terms.first() else {
            return Err(Error::NotDivisible);
        };
        if self.is_zero() {
            return Ok(Self::zero(self.layout));
        }
        if divisor.len() == 1 {
            let mut terms = Vec::with_capacity(self.len());
            for (k, c) in &self.terms {
                if !self.layout.divides(*lk, *k) {
                    return Err(Error::NotDivisible);
                }
                let (q, r) = c.div_rem(lc);
                if !r.is_zero() {
                    return Err(Error::NotDivisible);
                }
                terms.push((k - lk, q));
            }
            return Ok(PackedPoly {
                layout: self.layout,
                terms,
            });
        }
        let mut rem: BTreeMap<u128, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((k, c)) = rem.pop_last() {
            if !self.layout.divides(*lk, k) {
                return Err(Error::NotDivisible);
            }
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let qk = k - lk;
            for (bk, bc) in &divisor.terms[1..] {
                let key = qk + bk;
                let delta = &qc * bc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.push((qk, qc));
        }
        Ok(PackedPoly {
            layout: self.layout,
            terms: quot,
        })
    }

    /// gcd of all coefficients, made positive.
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
            .abs()
    }
}
