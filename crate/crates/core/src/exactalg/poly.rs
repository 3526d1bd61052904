//! Sparse multivariate Laurent polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{common_denominator, pow_i, Rational};
use crate::error::{Error, Result};

/// Finite map from monomials to nonzero rationals.
///
/// Terms are stored in graded-lex order; `terms()` yields them largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial arity");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut p = Self::zero(nvars);
        for (c, m) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in canonical graded-lex order, largest first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Exact value at `point`, with `0^0 = 1`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e < 0 && point[i].is_zero() {
                    return Err(Error::DivisionByZero { var: i });
                }
                t *= pow_i(&point[i], e as i64)?;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes polynomials for every variable; the target ring may differ.
    pub fn compose(&self, images: &[SparsePoly]) -> Result<SparsePoly> {
        let target = images
            .first()
            .map(SparsePoly::nvars)
            .ok_or_else(|| Error::DimensionMismatch("no substitution images".into()))?;
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch("substitution arity".into()));
        }
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e < 0 {
                    return Err(Error::InvalidInput(
                        "cannot substitute into a negative exponent".into(),
                    ));
                }
                if e > 0 {
                    t = &t * &images[i].pow(e as u32);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Entrywise minimum of exponents over all terms (the largest monomial
    /// dividing every term, in the Laurent sense).
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    /// True when all coefficients are integers.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Scales to integer coefficients with gcd one, keeping the sign of each
    /// coefficient. Returns the scaled polynomial and the factor used.
    pub fn primitive_part(&self) -> (SparsePoly, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::one());
        }
        let den = common_denominator(self.terms.values());
        let num_gcd = self
            .terms
            .values()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .fold(BigInt::zero(), |g, v| g.gcd(&v));
        let factor = Rational::new(den, num_gcd);
        (self.scale(&factor), factor)
    }

    /// Exact division in the Laurent polynomial ring.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Result<SparsePoly> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        if self.is_zero() {
            return Ok(SparsePoly::zero(self.nvars));
        }
        // Monomials are units in the Laurent ring: divide out both monomial
        // contents, divide as polynomials, and restore the ratio.
        let ma = self.monomial_content().expect("nonzero");
        let mb = divisor.monomial_content().expect("nonzero");
        let a = self.mul_monomial(&ma.pow(-1));
        let b = divisor.mul_monomial(&mb.pow(-1));
        Ok(a.div_exact_polynomial(&b)?.mul_monomial(&ma.div(&mb)))
    }

    fn div_exact_polynomial(&self, divisor: &SparsePoly) -> Result<SparsePoly> {
        let (lm, lc) = divisor.leading_term().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !m.divisible_by(lm) {
                return Err(Error::NotDivisible);
            }
            let qm = m.div(lm);
            let qc = c / lc;
            let step = divisor.mul_monomial(&qm).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn derivative(&self, var: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut em = m.clone();
            em.0[var] -= 1;
            out.add_term(em, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coef = super::rational::format_rational(&abs);
            if m.is_one() {
                s.push_str(&coef);
            } else if abs.is_one() {
                s.push_str(&m.fmt_with(names));
            } else {
                s.push_str(&format!("{coef}*{}", m.fmt_with(names)));
            }
        }
        s
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut acc: std::collections::HashMap<Monomial, Rational> = std::collections::HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        SparsePoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
