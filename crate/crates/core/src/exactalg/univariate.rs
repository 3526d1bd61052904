//! Univariate polynomials in a distinguished variable `t` whose coefficients
//! are sparse multivariate polynomials, with Sylvester resultants and
//! discriminants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::det::{bareiss, cofactor};
use super::monomial::Monomial;
use super::packed::{Layout, PackedPoly};
use super::poly::SparsePoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `c_0 + c_1 t + ... + c_d t^d` with `c_d != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPolyOverRing {
    nvars: usize,
    coeffs: Vec<SparsePoly>,
}

impl UniPolyOverRing {
    /// Trailing zero coefficients are trimmed; the zero polynomial is rejected.
    pub fn new(nvars: usize, mut coeffs: Vec<SparsePoly>) -> Result<Self> {
        if coeffs.iter().any(|c| c.nvars() != nvars) {
            return Err(Error::DimensionMismatch("coefficient ring mismatch".into()));
        }
        while coeffs.last().is_some_and(SparsePoly::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("zero polynomial in t".into()));
        }
        Ok(UniPolyOverRing { nvars, coeffs })
    }

    /// `sum_k x_{vars[k]} t^{exps[k]}` over `nvars` ring variables.
    pub fn sparse_generic(nvars: usize, vars: &[usize], exps: &[usize]) -> Result<Self> {
        let deg = exps.iter().copied().max().unwrap_or(0);
        let mut coeffs = vec![SparsePoly::zero(nvars); deg + 1];
        for (&v, &e) in vars.iter().zip(exps) {
            coeffs[e] = &coeffs[e] + &SparsePoly::var(nvars, v);
        }
        Self::new(nvars, coeffs)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> &SparsePoly {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// d/dt; fails for constants.
    pub fn derivative(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from_integer(BigInt::from(k))))
            .collect();
        Self::new(self.nvars, coeffs)
    }
}

/// The `(m+n)`-square Sylvester matrix of `f` (degree m) and `g` (degree n).
pub fn sylvester_matrix(f: &UniPolyOverRing, g: &UniPolyOverRing) -> Vec<Vec<SparsePoly>> {
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    let zero = SparsePoly::zero(f.nvars());
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in f.coeffs.iter().enumerate() {
            row[shift + m - k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in g.coeffs.iter().enumerate() {
            row[shift + n - k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Scales the coefficient list of a polynomial in `t` to integer
/// coefficients and nonnegative exponents. Returns the scaled coefficients
/// and the monomial-times-rational factor `s` with `scaled = s * original`.
fn integral_scaling(coeffs: &[SparsePoly], nvars: usize) -> (Vec<SparsePoly>, SparsePoly) {
    let mut den = BigInt::one();
    let mut lows: Option<Monomial> = None;
    for c in coeffs {
        den = num_integer::Integer::lcm(&den, &super::rational::common_denominator(
            c.terms().map(|(_, v)| v),
        ));
        if let Some(mc) = c.monomial_content() {
            lows = Some(match lows {
                None => mc,
                Some(l) => l.gcd(&mc),
            });
        }
    }
    let shift = lows
        .map(|l| Monomial(l.0.iter().map(|&e| (-e).max(0)).collect()))
        .unwrap_or_else(|| Monomial::one(nvars));
    let factor = SparsePoly::monomial(nvars, shift.clone(), Rational::from_integer(den.clone()));
    let scaled = coeffs
        .iter()
        .map(|c| c.mul_monomial(&shift).scale(&Rational::from_integer(den.clone())))
        .collect();
    (scaled, factor)
}

fn determinant(matrix: Vec<Vec<SparsePoly>>, nvars: usize) -> Result<SparsePoly> {
    if let Some(layout) = Layout::new(nvars) {
        let max_deg = matrix
            .iter()
            .flatten()
            .filter_map(SparsePoly::total_degree)
            .max()
            .unwrap_or(0)
            .max(1) as u64;
        let bound = 2 * matrix.len() as u64 * max_deg;
        if bound < layout.max_exponent() as u64 {
            let packed: Option<Vec<Vec<PackedPoly>>> = matrix
                .iter()
                .map(|row| row.iter().map(|e| PackedPoly::from_sparse(layout, e)).collect())
                .collect();
            if let Some(p) = packed {
                return Ok(bareiss(p)?.to_sparse());
            }
        }
    }
    bareiss(matrix)
}

fn resultant_with(
    f: &UniPolyOverRing,
    g: &UniPolyOverRing,
    det: impl Fn(Vec<Vec<SparsePoly>>) -> Result<SparsePoly>,
) -> Result<SparsePoly> {
    if f.nvars != g.nvars {
        return Err(Error::DimensionMismatch("coefficient ring mismatch".into()));
    }
    if f.degree() == 0 || g.degree() == 0 {
        return Err(Error::InvalidInput(
            "resultant needs both polynomials of degree at least one".into(),
        ));
    }
    let n = f.nvars;
    let (fc, sf) = integral_scaling(&f.coeffs, n);
    let (gc, sg) = integral_scaling(&g.coeffs, n);
    let fs = UniPolyOverRing { nvars: n, coeffs: fc };
    let gs = UniPolyOverRing { nvars: n, coeffs: gc };
    let r = det(sylvester_matrix(&fs, &gs))?;
    // Res(sf f, sg g) = sf^deg g * sg^deg f * Res(f, g)
    let scale = &sf.pow(g.degree() as u32) * &sg.pow(f.degree() as u32);
    if scale.len() == 1 && scale.terms().next().is_some_and(|(m, c)| m.is_one() && c.is_one()) {
        return Ok(r);
    }
    let (m, c) = scale.leading_term().expect("monomial scale");
    Ok(r.mul_monomial(&m.pow(-1)).scale(&(Rational::one() / c)))
}

/// Determinant of the Sylvester matrix, by Bareiss elimination.
pub fn sylvester_resultant(f: &UniPolyOverRing, g: &UniPolyOverRing) -> Result<SparsePoly> {
    let n = f.nvars;
    resultant_with(f, g, |m| determinant(m, n))
}

/// Same value by cofactor expansion; exponential, for cross-checks only.
pub fn sylvester_resultant_cofactor(
    f: &UniPolyOverRing,
    g: &UniPolyOverRing,
) -> Result<SparsePoly> {
    resultant_with(f, g, |m| cofactor(&m))
}

/// `(-1)^{d(d-1)/2} Res_t(f, f') / lc(f)` before any normalisation.
pub fn discriminant_raw(f: &UniPolyOverRing) -> Result<SparsePoly> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::InvalidInput(
            "discriminant needs degree at least two".into(),
        ));
    }
    let mut r = sylvester_resultant(f, &f.derivative()?)?;
    if (d * (d - 1) / 2) % 2 == 1 {
        r = -&r;
    }
    let lc = f.leading_coefficient();
    if lc.len() == 1 {
        let (m, c) = lc.leading_term().expect("nonzero");
        let out = r.mul_monomial(&m.pow(-1)).scale(&(Rational::one() / c));
        if !out.is_polynomial() && r.is_polynomial() {
            return Err(Error::NotDivisible);
        }
        return Ok(out);
    }
    r.div_exact(lc)
}

/// Strips integer content and monomial content, then fixes the sign so the
/// graded-lex leading term is positive.
pub fn normalize_discriminant(p: &SparsePoly) -> SparsePoly {
    if p.is_zero() {
        return p.clone();
    }
    let (prim, _) = p.primitive_part();
    let content = prim.monomial_content().expect("nonzero");
    let stripped = prim.mul_monomial(&content.pow(-1));
    let positive = stripped
        .leading_term()
        .is_some_and(|(_, c)| *c > Rational::zero());
    if positive {
        stripped
    } else {
        -&stripped
    }
}

/// Normalised discriminant of `f` in `t`.
pub fn discriminant_t(f: &UniPolyOverRing) -> Result<SparsePoly> {
    Ok(normalize_discriminant(&discriminant_raw(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    fn x(n: usize, i: usize) -> SparsePoly {
        SparsePoly::var(n, i)
    }

    #[test]
    fn linear_resultant() {
        let f = UniPolyOverRing::new(4, vec![x(4, 0), x(4, 1)]).unwrap();
        let g = UniPolyOverRing::new(4, vec![x(4, 2), x(4, 3)]).unwrap();
        let r = sylvester_resultant(&f, &g).unwrap();
        // leading coefficients first: det [[x2, x1], [x4, x3]]
        assert_eq!(r, &(&x(4, 1) * &x(4, 2)) - &(&x(4, 0) * &x(4, 3)));
        assert_eq!(sylvester_resultant_cofactor(&f, &g).unwrap(), r);
    }

    #[test]
    fn resultant_with_itself_vanishes() {
        let f = UniPolyOverRing::sparse_generic(3, &[0, 1, 2], &[0, 1, 3]).unwrap();
        assert!(sylvester_resultant(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn quadratic_discriminant() {
        let f = UniPolyOverRing::sparse_generic(3, &[0, 1, 2], &[0, 1, 2]).unwrap();
        let d = discriminant_t(&f).unwrap();
        // x1*x3 leads x2^2 in graded-lex order, so it carries the positive sign
        let expect = &(&x(3, 0) * &x(3, 2)).scale(&int(4)) - &(&x(3, 1) * &x(3, 1));
        assert_eq!(d, expect);
    }

    #[test]
    fn laurent_coefficients_are_handled() {
        // f = x1/x2 + t, g = x2 + t: Res = g(-x1/x2) = x2 - x1/x2
        let n = 2;
        let c0 = SparsePoly::monomial(n, Monomial(vec![1, -1]), int(1));
        let f = UniPolyOverRing::new(n, vec![c0.clone(), SparsePoly::one(n)]).unwrap();
        let g = UniPolyOverRing::new(n, vec![x(n, 1), SparsePoly::one(n)]).unwrap();
        let r = sylvester_resultant(&f, &g).unwrap();
        assert_eq!(r, &x(n, 1) - &c0);
    }
}
