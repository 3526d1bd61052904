use num_traits::Zero;

use super::table::ContingencyTable;
use super::tree::StagedTree;
use crate::error::{Error, Result};
use crate::exactalg::rational::Rational;

/// Directed acyclic graph on `0..m` with a number of states per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagModel {
    parents: Vec<Vec<usize>>,
    states: Vec<usize>,
}

impl DagModel {
    /// `edges` are `(parent, child)` pairs.
    pub fn new(states: Vec<usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let m = states.len();
        if let Some(v) = states.iter().position(|&s| s < 2) {
            return Err(Error::InvalidInput(format!("node {v} needs at least two states")));
        }
        let mut parents = vec![Vec::new(); m];
        for &(a, b) in edges {
            if a >= m || b >= m {
                return Err(Error::InvalidInput(format!("edge ({a}, {b}) leaves the node set 0..{m}")));
            }
            if a == b {
                return Err(Error::CyclicGraph);
            }
            if !parents[b].contains(&a) {
                parents[b].push(a);
            }
        }
        for p in parents.iter_mut() {
            p.sort_unstable();
        }
        let d = DagModel { parents, states };
        d.topological_order()?;
        Ok(d)
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Kahn's algorithm, always taking the lowest available index.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let m = self.states.len();
        let mut indeg: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut done = vec![false; m];
        let mut order = Vec::with_capacity(m);
        while order.len() < m {
            let v = (0..m).find(|&v| !done[v] && indeg[v] == 0).ok_or(Error::CyclicGraph)?;
            done[v] = true;
            order.push(v);
            for w in 0..m {
                if self.parents[w].contains(&v) {
                    indeg[w] -= 1;
                }
            }
        }
        Ok(order)
    }
}

/// `p̂_I = ∏_j u_{I, pa(j) ∪ {j}} / u_{I, pa(j)}` with `u_{I,∅} = |u|`.
pub fn bayes_net_mle(d: &DagModel, u: &ContingencyTable) -> Result<ContingencyTable> {
    if d.states() != u.dims() {
        return Err(Error::DimensionMismatch(format!(
            "network states {:?} differ from table format {:?}",
            d.states(),
            u.dims()
        )));
    }
    let mut family = Vec::new();
    for j in 0..d.len() {
        let mut fam = d.parents(j).to_vec();
        fam.push(j);
        let top = u.marginal(&fam)?;
        let bottom = u.marginal(d.parents(j))?;
        family.push((fam, top, bottom));
    }
    let mut out = Vec::with_capacity(u.len());
    for flat in 0..u.len() {
        let state = u.state(flat);
        let mut p = Rational::from_integer(1.into());
        for (j, (fam, top, bottom)) in family.iter().enumerate() {
            let den = ContingencyTable::marginal_entry(bottom, d.parents(j), &state);
            if den.is_zero() {
                return Err(Error::ZeroDenominator(j));
            }
            p *= ContingencyTable::marginal_entry(top, fam, &state) / den;
        }
        out.push(p);
    }
    ContingencyTable::new(u.dims().to_vec(), out)
}

/// A staged tree exported from a network, with the joint state of each leaf.
#[derive(Clone, Debug)]
pub struct ExportedTree {
    pub tree: StagedTree,
    /// `leaf_states[j][v]` is the state of node `v` on leaf `j`.
    pub leaf_states: Vec<Vec<usize>>,
}

impl ExportedTree {
    /// Counts of the table rearranged into the tree's leaf order.
    pub fn leaf_counts(&self, u: &ContingencyTable) -> Vec<Rational> {
        self.leaf_states.iter().map(|s| u.get(s).clone()).collect()
    }

    /// Leaf values rearranged into a table of the given format.
    pub fn to_table(&self, dims: &[usize], values: &[Rational]) -> Result<ContingencyTable> {
        let size: usize = dims.iter().product();
        let mut counts = vec![Rational::zero(); size];
        let scratch = ContingencyTable::new(dims.to_vec(), counts.clone())?;
        for (s, v) in self.leaf_states.iter().zip(values) {
            counts[scratch.flat_index(s)] = v.clone();
        }
        ContingencyTable::new(dims.to_vec(), counts)
    }
}

/// Levels follow the topological order; at the level of node `v`, vertices
/// with the same configuration of `pa(v)` share a floret.
pub fn from_bayesian_network(d: &DagModel) -> Result<ExportedTree> {
    let order = d.topological_order()?;
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut leaf_states = Vec::new();
    let mut assignment = vec![usize::MAX; d.len()];
    fn name(prefix: &[usize]) -> String {
        let mut s = String::from("r");
        for p in prefix {
            s.push('.');
            s.push_str(&p.to_string());
        }
        s
    }
    fn walk(
        d: &DagModel,
        order: &[usize],
        level: usize,
        prefix: &mut Vec<usize>,
        assignment: &mut Vec<usize>,
        edges: &mut Vec<(String, String, String)>,
        leaves: &mut Vec<Vec<usize>>,
    ) {
        if level == order.len() {
            leaves.push(assignment.clone());
            return;
        }
        let v = order[level];
        let config: Vec<String> = d
            .parents(v)
            .iter()
            .map(|&p| format!("x{}={}", p + 1, assignment[p]))
            .collect();
        let from = name(prefix);
        for s in 0..d.states()[v] {
            let mut label = format!("x{}={}", v + 1, s);
            if !config.is_empty() {
                label.push('|');
                label.push_str(&config.join(","));
            }
            prefix.push(s);
            assignment[v] = s;
            edges.push((from.clone(), name(prefix), label));
            walk(d, order, level + 1, prefix, assignment, edges, leaves);
            prefix.pop();
        }
        assignment[v] = usize::MAX;
    }
    let mut prefix = Vec::new();
    walk(d, &order, 0, &mut prefix, &mut assignment, &mut edges, &mut leaf_states);
    let refs: Vec<(&str, &str, &str)> = edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    Ok(ExportedTree {
        tree: StagedTree::from_edges(&refs)?,
        leaf_states,
    })
}
