//! Determinants over exact integral domains.
//!
//! Two independent algorithms: fraction-free Bareiss elimination, and
//! Laplace (cofactor) expansion memoised over column subsets. The second is
//! exponential in the size and is meant as a cross-check for small matrices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::packed::PackedPoly;
use super::poly::SparsePoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// An integral domain with exact division, as needed by Bareiss.
pub trait ExactRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    fn div_exact_elem(&self, other: &Self) -> Result<Self>;
    /// Rough size, used to prefer cheap pivots.
    fn weight(&self) -> usize {
        1
    }
}

impl ExactRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::NotDivisible);
        }
        let (q, r) = self.div_rem(o);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }
    fn weight(&self) -> usize {
        self.bits() as usize
    }
}

impl ExactRing for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            Err(Error::NotDivisible)
        } else {
            Ok(self / o)
        }
    }
}

impl ExactRing for SparsePoly {
    fn zero_like(&self) -> Self {
        SparsePoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        SparsePoly::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, o: &Self) -> Result<Self> {
        self.div_exact(o)
    }
    fn weight(&self) -> usize {
        self.len()
    }
}

impl ExactRing for PackedPoly {
    fn zero_like(&self) -> Self {
        PackedPoly::zero(self.layout())
    }
    fn one_like(&self) -> Self {
        PackedPoly::constant(self.layout(), BigInt::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_elem(&self) -> Self {
        self.neg()
    }
    fn div_exact_elem(&self, o: &Self) -> Result<Self> {
        self.div_exact(o)
    }
    fn weight(&self) -> usize {
        self.len()
    }
}

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    Ok(n)
}

/// Fraction-free Bareiss elimination. Every division is exact.
pub fn bareiss<T: ExactRing>(matrix: Vec<Vec<T>>) -> Result<T> {
    let n = check_square(&matrix)?;
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let mut a = matrix;
    let mut negate = false;
    let mut prev: Option<T> = None;
    for k in 0..n - 1 {
        // pivot: the lightest nonzero entry in column k
        let pivot_row = (k..n)
            .filter(|&i| !a[i][k].is_zero_elem())
            .min_by_key(|&i| a[i][k].weight());
        let Some(p) = pivot_row else {
            return Ok(a[0][0].zero_like());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let mut v = row[j].mul_elem(pivot);
                if !lead.is_zero_elem() && !pivot_row[j].is_zero_elem() {
                    v = v.sub_elem(&lead.mul_elem(&pivot_row[j]));
                }
                if let Some(d) = &prev {
                    v = v.div_exact_elem(d)?;
                }
                row[j] = v;
            }
            row[k] = lead.zero_like();
        }
        prev = Some(a[k][k].clone());
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg_elem() } else { d })
}

/// Laplace expansion along rows, memoised on the set of used columns.
pub fn cofactor<T: ExactRing>(matrix: &[Vec<T>]) -> Result<T> {
    let n = check_square(matrix)?;
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    if n > 20 {
        return Err(Error::InvalidInput(format!(
            "cofactor expansion is limited to 20 columns, got {n}"
        )));
    }
    let zero = matrix[0][0].zero_like();
    let mut memo: HashMap<u32, T> = HashMap::new();
    // minor(mask) = determinant of rows (n - |mask|).. restricted to the columns in mask
    fn minor<T: ExactRing>(
        m: &[Vec<T>],
        mask: u32,
        memo: &mut HashMap<u32, T>,
        zero: &T,
    ) -> T {
        let n = m.len();
        let k = mask.count_ones() as usize;
        if k == 0 {
            return zero.one_like();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let row = n - k;
        let mut acc = zero.clone();
        let mut pos = 0usize;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = &m[row][j];
            if !entry.is_zero_elem() {
                let sub = minor(m, mask & !(1 << j), memo, zero);
                if !sub.is_zero_elem() {
                    let t = entry.mul_elem(&sub);
                    acc = if pos.is_multiple_of(2) {
                        acc.add_elem(&t)
                    } else {
                        acc.sub_elem(&t)
                    };
                }
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(minor(matrix, full, &mut memo, &zero))
}
