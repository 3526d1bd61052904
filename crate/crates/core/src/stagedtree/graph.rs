use std::collections::BTreeSet;

use num_traits::Zero;

use super::table::ContingencyTable;
use crate::error::{Error, Result};
use crate::exactalg::rational::Rational;

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("edge ({a}, {b}) leaves the vertex set 0..{n}")));
            }
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        Ok(UndirectedGraph { adj })
    }

    /// The graph whose edges are those of the given cliques.
    pub fn from_cliques(n: usize, cliques: &[Vec<usize>]) -> Result<Self> {
        let mut edges = Vec::new();
        for c in cliques {
            for (k, &a) in c.iter().enumerate() {
                for &b in &c[k + 1..] {
                    edges.push((a, b));
                }
            }
            if let Some(&v) = c.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInput(format!("vertex {v} out of range 0..{n}")));
            }
        }
        Self::new(n, &edges)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    /// Maximum-cardinality search order (ties broken by lowest index).
    pub fn mcs_order(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut weight = vec![0usize; n];
        let mut done = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !done[v])
                .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .expect("vertex left");
            done[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !done[w] {
                    weight[w] += 1;
                }
            }
        }
        order
    }

    /// Maximal cliques in an order with the running intersection property,
    /// and the separators `C_k ∩ (C_1 ∪ … ∪ C_{k-1})` for `k ≥ 2`.
    pub fn cliques_and_separators(&self) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
        let order = self.mcs_order();
        let mut pos = vec![0; order.len()];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let mut candidates: Vec<BTreeSet<usize>> = Vec::new();
        for (k, &v) in order.iter().enumerate() {
            let earlier: BTreeSet<usize> = self.adj[v].iter().copied().filter(|&w| pos[w] < k).collect();
            for &a in &earlier {
                for &b in &earlier {
                    if a < b && !self.adj[a].contains(&b) {
                        return Err(Error::NotChordal);
                    }
                }
            }
            let mut c = earlier;
            c.insert(v);
            candidates.push(c);
        }
        let cliques: Vec<BTreeSet<usize>> = candidates
            .iter()
            .enumerate()
            .filter(|(k, c)| {
                !candidates
                    .iter()
                    .enumerate()
                    .any(|(l, d)| l != *k && c.is_subset(d) && (c.len() < d.len() || l < *k))
            })
            .map(|(_, c)| c.clone())
            .collect();
        let mut seps = Vec::new();
        let mut union: BTreeSet<usize> = BTreeSet::new();
        for (k, c) in cliques.iter().enumerate() {
            if k > 0 {
                seps.push(c.intersection(&union).copied().collect());
            }
            union.extend(c.iter().copied());
        }
        Ok((cliques.into_iter().map(|c| c.into_iter().collect()).collect(), seps))
    }

    pub fn is_chordal(&self) -> bool {
        self.cliques_and_separators().is_ok()
    }
}

/// `p̂_I = ∏_C u_{I,C} / (|u| ∏_S u_{I,S})` over maximal cliques `C` and
/// junction-tree separators `S` (an empty separator contributes `|u|`).
pub fn decomposable_mle(g: &UndirectedGraph, u: &ContingencyTable) -> Result<ContingencyTable> {
    if g.len() != u.dims().len() {
        return Err(Error::DimensionMismatch(format!(
            "graph has {} vertices, table has {} axes",
            g.len(),
            u.dims().len()
        )));
    }
    let (cliques, seps) = g.cliques_and_separators()?;
    let total = u.total();
    if total.is_zero() {
        return Err(Error::InvalidInput("all counts are zero".into()));
    }
    let cm: Vec<ContingencyTable> = cliques.iter().map(|c| u.marginal(c)).collect::<Result<_>>()?;
    let sm: Vec<ContingencyTable> = seps.iter().map(|s| u.marginal(s)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(u.len());
    for flat in 0..u.len() {
        let state = u.state(flat);
        let mut num = Rational::from_integer(1.into());
        for (c, m) in cliques.iter().zip(&cm) {
            num *= ContingencyTable::marginal_entry(m, c, &state);
        }
        let mut den = total.clone();
        for (s, m) in seps.iter().zip(&sm) {
            den *= ContingencyTable::marginal_entry(m, s, &state);
        }
        if den.is_zero() {
            if !num.is_zero() {
                return Err(Error::InvalidInput("zero separator margin with a nonzero clique margin".into()));
            }
            out.push(Rational::zero());
        } else {
            out.push(num / den);
        }
    }
    ContingencyTable::new(u.dims().to_vec(), out)
}
