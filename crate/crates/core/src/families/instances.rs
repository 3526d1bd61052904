use num_integer::Integer;

use crate::disctriple::{MarkedPoly, ToricMatrix};
use crate::error::Result;
use crate::exactalg::rational::Rational;
use crate::exactalg::univariate::{discriminant_t, normalize_discriminant, sylvester_resultant, UniPolyOverRing};
use crate::exactalg::{Monomial, SparsePoly};

/// Shape of the multiplier in the linear-multiple family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Binomial,
    Trinomial,
}

/// Sign of the last monomial of the multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// One experiment family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A = [[1,1,1,1],[0,α,β,γ]]`, `0<α<β<γ≤bound`, `gcd(α,β,γ)=1`.
    Univariate { bound: u32 },
    /// Resultant of `x1 + x2 t^α + x3 t^β` and `x4 + x5 t^γ + x6 t^ε`,
    /// `0<α<β≤bound`, `0<γ<ε≤bound`, `gcd(α,β) = gcd(γ,ε) = 1`.
    Trinomial { bound: u32 },
    /// `(x^a ± x^b)(x1+x2+x3+x4)` or `(x^a + x^b ± x^c)(x1+x2+x3+x4)` with
    /// monomials of equal degree at most `bound` and no common factor.
    LinearMultiple { shape: Shape, sign: Sign, bound: u32 },
}

/// A single polynomial to scan, described by its family parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub index: usize,
    pub params: Vec<i64>,
    pub label: String,
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Univariate { .. } => "univariate".into(),
            Family::Trinomial { .. } => "trinomial".into(),
            Family::LinearMultiple { shape, sign, .. } => {
                let s = if *sign == Sign::Plus { "+" } else { "-" };
                match shape {
                    Shape::Binomial => format!("(x^a {s} x^b)*L"),
                    Shape::Trinomial => format!("(x^a + x^b {s} x^c)*L"),
                }
            }
        }
    }

    pub fn bound(&self) -> u32 {
        match *self {
            Family::Univariate { bound } | Family::Trinomial { bound } | Family::LinearMultiple { bound, .. } => bound,
        }
    }

    /// Instances in lexicographic order of their parameters.
    pub fn instances(&self) -> Vec<Instance> {
        let params: Vec<Vec<i64>> = match *self {
            Family::Univariate { bound } => {
                let b = bound as i64;
                let mut v = Vec::new();
                for a in 1..=b {
                    for bb in a + 1..=b {
                        for c in bb + 1..=b {
                            if a.gcd(&bb).gcd(&c) == 1 {
                                v.push(vec![a, bb, c]);
                            }
                        }
                    }
                }
                v
            }
            Family::Trinomial { bound } => {
                let b = bound as i64;
                let pairs: Vec<(i64, i64)> = (1..=b)
                    .flat_map(|x| (x + 1..=b).map(move |y| (x, y)))
                    .filter(|(x, y)| x.gcd(y) == 1)
                    .collect();
                let mut v = Vec::new();
                for &(a, bb) in &pairs {
                    for &(c, e) in &pairs {
                        v.push(vec![a, bb, c, e]);
                    }
                }
                v
            }
            Family::LinearMultiple { shape, bound, .. } => {
                let mut v = Vec::new();
                for d in 1..=bound {
                    let monos = monomials_of_degree(4, d);
                    match shape {
                        Shape::Binomial => {
                            for i in 0..monos.len() {
                                for j in i + 1..monos.len() {
                                    if monos[i].gcd(&monos[j]).is_one() {
                                        v.push([monos[i].0.clone(), monos[j].0.clone()].concat().iter().map(|&e| e as i64).collect());
                                    }
                                }
                            }
                        }
                        Shape::Trinomial => {
                            for i in 0..monos.len() {
                                for j in i + 1..monos.len() {
                                    let g = monos[i].gcd(&monos[j]);
                                    for k in j + 1..monos.len() {
                                        if g.gcd(&monos[k]).is_one() {
                                            v.push(
                                                [monos[i].0.clone(), monos[j].0.clone(), monos[k].0.clone()]
                                                    .concat()
                                                    .iter()
                                                    .map(|&e| e as i64)
                                                    .collect(),
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                v
            }
        };
        params
            .into_iter()
            .enumerate()
            .map(|(index, p)| Instance {
                index,
                label: self.label(&p),
                params: p,
            })
            .collect()
    }

    fn label(&self, p: &[i64]) -> String {
        match self {
            Family::Univariate { .. } | Family::Trinomial { .. } => {
                let s: Vec<String> = p.iter().map(i64::to_string).collect();
                format!("({})", s.join(","))
            }
            Family::LinearMultiple { .. } => {
                let s: Vec<String> = p
                    .chunks(4)
                    .map(|c| c.iter().map(i64::to_string).collect::<Vec<_>>().join(""))
                    .collect();
                s.join("/")
            }
        }
    }

    /// The toric matrix and the polynomial of an instance.
    pub fn build(&self, inst: &Instance) -> Result<(ToricMatrix, SparsePoly)> {
        let p = &inst.params;
        match *self {
            Family::Univariate { .. } => Ok((
                ToricMatrix::new(vec![vec![1, 1, 1, 1], vec![0, p[0], p[1], p[2]]])?,
                univariate_discriminant(p[0] as usize, p[1] as usize, p[2] as usize)?,
            )),
            Family::Trinomial { .. } => Ok((
                ToricMatrix::new(vec![
                    vec![0, p[0], p[1], 0, p[2], p[3]],
                    vec![0, 0, 0, 1, 1, 1],
                    vec![1, 1, 1, 1, 1, 1],
                ])?,
                trinomial_resultant(p[0] as usize, p[1] as usize, p[2] as usize, p[3] as usize)?,
            )),
            Family::LinearMultiple { sign, .. } => {
                let monos: Vec<Monomial> = p.chunks(4).map(|c| Monomial(c.iter().map(|&e| e as i32).collect())).collect();
                let mut mult = SparsePoly::zero(4);
                let last = monos.len() - 1;
                for (k, m) in monos.into_iter().enumerate() {
                    let c = if k == last && sign == Sign::Minus { -1 } else { 1 };
                    mult.add_term(m, Rational::from_integer(c.into()));
                }
                Ok((ToricMatrix::new(vec![vec![1, 1, 1, 1]])?, &mult * &linear_form(4)))
            }
        }
    }
}

/// `x1 + x2 + ... + xn`.
pub fn linear_form(n: usize) -> SparsePoly {
    (0..n).fold(SparsePoly::zero(n), |acc, i| &acc + &SparsePoly::var(n, i))
}

/// Exponent vectors of total degree `d` in `n` variables, largest first in
/// graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d as i32);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as i32);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Discriminant of `x1 + x2 t^α + x3 t^β + x4 t^γ`.
pub fn univariate_discriminant(a: usize, b: usize, c: usize) -> Result<SparsePoly> {
    discriminant_t(&UniPolyOverRing::sparse_generic(4, &[0, 1, 2, 3], &[0, a, b, c])?)
}

/// `Res_t(x1 + x2 t^α + x3 t^β, x4 + x5 t^γ + x6 t^ε)`, content stripped.
pub fn trinomial_resultant(a: usize, b: usize, c: usize, e: usize) -> Result<SparsePoly> {
    let f = UniPolyOverRing::sparse_generic(6, &[0, 1, 2], &[0, a, b])?;
    let g = UniPolyOverRing::sparse_generic(6, &[3, 4, 5], &[0, c, e])?;
    Ok(normalize_discriminant(&sylvester_resultant(&f, &g)?))
}

/// `Δ = (-x0)^m - (x1 + ... + xk)^m` marked at `(-x0)^m`, in variables
/// `x0, ..., xk`: rolling a `k`-sided die `m` times.
pub fn multinomial_marked_poly(k: usize, m: u32) -> Result<MarkedPoly> {
    let n = k + 1;
    let x0 = SparsePoly::var(n, 0);
    let rest = (1..n).fold(SparsePoly::zero(n), |acc, i| &acc + &SparsePoly::var(n, i));
    let delta = &(-&x0).pow(m) - &rest.pow(m);
    let mut marked = vec![0; n];
    marked[0] = m as i32;
    MarkedPoly::new(delta, Monomial(marked))?.with_vars((0..n).map(|i| format!("x{i}")).collect())
}
