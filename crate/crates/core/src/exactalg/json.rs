//! JSON form of polynomials:
//! `{"vars": ["x1", ...], "terms": [{"c": "p/q", "e": [int, ...]}, ...]}`.

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::poly::SparsePoly;
use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// Default variable names `x1..xn`.
pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl PolyJson {
    pub fn from_poly(p: &SparsePoly, vars: &[String]) -> Self {
        PolyJson {
            vars: vars.to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    c: format_rational(c),
                    e: m.exponents().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<SparsePoly> {
        let n = self.vars.len();
        if n == 0 {
            return Err(Error::Parse("polynomial needs at least one variable".into()));
        }
        let mut p = SparsePoly::zero(n);
        for (i, t) in self.terms.iter().enumerate() {
            if t.e.len() != n {
                return Err(Error::Parse(format!(
                    "terms[{i}].e has {} exponents, expected {n}",
                    t.e.len()
                )));
            }
            p.add_term(Monomial(t.e.clone()), parse_rational(&t.c)?);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    #[test]
    fn parse_serialize_parse() {
        let text = r#"{"vars":["x1","x2"],"terms":[{"c":"3/2","e":[1,0]},{"c":"-1","e":[0,-2]}]}"#;
        let pj: PolyJson = serde_json::from_str(text).unwrap();
        let p = pj.to_poly().unwrap();
        assert_eq!(p.coefficient(&Monomial(vec![1, 0])), rat(3, 2));
        let back = PolyJson::from_poly(&p, &pj.vars);
        assert_eq!(back.to_poly().unwrap(), p);
        let again: PolyJson = serde_json::from_str(&serde_json::to_string(&back).unwrap()).unwrap();
        assert_eq!(again, back);
    }

    #[test]
    fn wrong_arity_names_the_field() {
        let text = r#"{"vars":["x1","x2"],"terms":[{"c":"1","e":[1]}]}"#;
        let pj: PolyJson = serde_json::from_str(text).unwrap();
        let err = pj.to_poly().unwrap_err().to_string();
        assert!(err.contains("terms[0].e"), "{err}");
    }
}
