use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node identifier in tree JSON: a string or an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeId {
    Name(String),
    Index(i64),
}

impl NodeId {
    pub fn as_string(&self) -> String {
        match self {
            NodeId::Name(s) => s.clone(),
            NodeId::Index(i) => i.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: NodeId,
    pub to: NodeId,
    pub label: String,
}

/// `{"nodes": [...], "edges": [{"from", "to", "label"}, ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeJson>,
}

/// A validated staged tree.
///
/// Labels are indexed in order of first appearance in the edge list;
/// florets are ordered by their smallest label index; root-to-leaf paths
/// are enumerated depth-first, visiting children in edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagedTree {
    nodes: Vec<String>,
    /// (from, to, label) in insertion order
    edges: Vec<(usize, usize, usize)>,
    labels: Vec<String>,
    root: usize,
    children: Vec<Vec<usize>>,
    florets: Vec<Vec<usize>>,
    floret_of_label: Vec<usize>,
    paths: Vec<Vec<usize>>,
    mu: Vec<Vec<i64>>,
}

struct Raw {
    nodes: Vec<String>,
    edges: Vec<(usize, usize, usize)>,
    labels: Vec<String>,
}

fn resolve(t: &TreeJson) -> std::result::Result<Raw, Vec<String>> {
    let mut problems = Vec::new();
    let nodes: Vec<String> = t.nodes.iter().map(NodeId::as_string).collect();
    let mut index = HashMap::new();
    for (i, n) in nodes.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            problems.push(format!("node {n} is listed twice"));
        }
    }
    let mut labels: Vec<String> = Vec::new();
    let mut label_index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    for (k, e) in t.edges.iter().enumerate() {
        let (from, to) = (e.from.as_string(), e.to.as_string());
        let f = index.get(&from).copied();
        let g = index.get(&to).copied();
        if f.is_none() {
            problems.push(format!("edges[{k}].from: unknown node {from}"));
        }
        if g.is_none() {
            problems.push(format!("edges[{k}].to: unknown node {to}"));
        }
        if e.label.is_empty() {
            problems.push(format!("edges[{k}].label is empty"));
        }
        let l = *label_index.entry(e.label.clone()).or_insert_with(|| {
            labels.push(e.label.clone());
            labels.len() - 1
        });
        if let (Some(f), Some(g)) = (f, g) {
            edges.push((f, g, l));
        }
    }
    if problems.is_empty() {
        Ok(Raw { nodes, edges, labels })
    } else {
        Err(problems)
    }
}

/// Lists every violated staged-tree condition; empty when the tree is valid.
pub fn tree_validate(t: &TreeJson) -> Vec<String> {
    match StagedTree::build(t) {
        Ok(_) => Vec::new(),
        Err(v) => v,
    }
}

impl StagedTree {
    pub fn from_json(t: &TreeJson) -> Result<Self> {
        Self::build(t).map_err(|v| Error::InvalidTree(v.join("; ")))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t: TreeJson = serde_json::from_str(text)?;
        Self::from_json(&t)
    }

    /// Builds from `(from, to, label)` triples over node names.
    pub fn from_edges(edges: &[(&str, &str, &str)]) -> Result<Self> {
        let mut nodes: Vec<NodeId> = Vec::new();
        for (a, b, _) in edges {
            for n in [a, b] {
                let id = NodeId::Name(n.to_string());
                if !nodes.contains(&id) {
                    nodes.push(id);
                }
            }
        }
        let edges = edges
            .iter()
            .map(|(a, b, l)| EdgeJson {
                from: NodeId::Name(a.to_string()),
                to: NodeId::Name(b.to_string()),
                label: l.to_string(),
            })
            .collect();
        Self::from_json(&TreeJson { nodes, edges })
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            nodes: self.nodes.iter().cloned().map(NodeId::Name).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(f, t, l)| EdgeJson {
                    from: NodeId::Name(self.nodes[f].clone()),
                    to: NodeId::Name(self.nodes[t].clone()),
                    label: self.labels[l].clone(),
                })
                .collect(),
        }
    }

    fn build(t: &TreeJson) -> std::result::Result<Self, Vec<String>> {
        let raw = resolve(t)?;
        let n = raw.nodes.len();
        let mut problems = Vec::new();
        if n == 0 {
            return Err(vec!["tree has no nodes".into()]);
        }
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, &(f, to, _)) in raw.edges.iter().enumerate() {
            if parent[to].is_some() {
                problems.push(format!("node {} has more than one parent", raw.nodes[to]));
            }
            parent[to] = Some(f);
            children[f].push(k);
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            let names: Vec<&str> = roots.iter().map(|&r| raw.nodes[r].as_str()).collect();
            problems.push(format!("expected one root, found {}: [{}]", roots.len(), names.join(", ")));
        }
        if !problems.is_empty() {
            return Err(problems);
        }
        let root = roots[0];
        // reachability from the root also rules out cycles
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            stack.extend(children[v].iter().map(|&k| raw.edges[k].1));
        }
        for v in 0..n {
            if !seen[v] {
                problems.push(format!("node {} is not reachable from the root", raw.nodes[v]));
            }
        }
        for v in 0..n {
            if children[v].len() == 1 {
                problems.push(format!(
                    "node {} has a single outgoing edge; non-leaf nodes need at least two",
                    raw.nodes[v]
                ));
            }
        }
        let mut florets: Vec<BTreeSet<usize>> = Vec::new();
        let mut owner: Vec<usize> = Vec::new();
        for v in 0..n {
            if children[v].is_empty() {
                continue;
            }
            let mut set = BTreeSet::new();
            for &k in &children[v] {
                let l = raw.edges[k].2;
                if !set.insert(l) {
                    problems.push(format!(
                        "node {} has label {} on more than one outgoing edge",
                        raw.nodes[v], raw.labels[l]
                    ));
                }
            }
            if !florets.contains(&set) {
                florets.push(set);
                owner.push(v);
            }
        }
        for a in 0..florets.len() {
            for b in a + 1..florets.len() {
                if florets[a].intersection(&florets[b]).next().is_some() {
                    let fmt = |s: &BTreeSet<usize>| {
                        s.iter().map(|&l| raw.labels[l].as_str()).collect::<Vec<_>>().join(",")
                    };
                    problems.push(format!(
                        "florets {{{}}} at node {} and {{{}}} at node {} overlap without being equal",
                        fmt(&florets[a]),
                        raw.nodes[owner[a]],
                        fmt(&florets[b]),
                        raw.nodes[owner[b]]
                    ));
                }
            }
        }
        if !problems.is_empty() {
            return Err(problems);
        }
        let mut florets: Vec<Vec<usize>> = florets.into_iter().map(|s| s.into_iter().collect()).collect();
        florets.sort_by_key(|f| f[0]);
        let mut floret_of_label = vec![0; raw.labels.len()];
        for (fi, f) in florets.iter().enumerate() {
            for &l in f {
                floret_of_label[l] = fi;
            }
        }
        let mut paths = Vec::new();
        let mut current = Vec::new();
        collect_paths(root, &children, &raw.edges, &mut current, &mut paths);
        let mut mu = vec![vec![0i64; paths.len()]; raw.labels.len()];
        for (j, p) in paths.iter().enumerate() {
            for &k in p {
                mu[raw.edges[k].2][j] += 1;
            }
        }
        let children = children
            .into_iter()
            .map(|ks| ks.into_iter().map(|k| raw.edges[k].1).collect())
            .collect();
        Ok(StagedTree {
            nodes: raw.nodes,
            edges: raw.edges,
            labels: raw.labels,
            root,
            children,
            florets,
            floret_of_label,
            paths,
            mu,
        })
    }

    pub fn node_names(&self) -> &[String] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// `(from, to, label index)` in insertion order.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Florets as sorted label indices.
    pub fn florets(&self) -> &[Vec<usize>] {
        &self.florets
    }

    pub fn floret_of_label(&self, label: usize) -> usize {
        self.floret_of_label[label]
    }

    /// `f1, f2, ...`
    pub fn floret_name(&self, f: usize) -> String {
        format!("f{}", f + 1)
    }

    /// Root-to-leaf paths as edge indices.
    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn num_leaves(&self) -> usize {
        self.paths.len()
    }

    /// Leaf node of each path, in path order.
    pub fn leaves(&self) -> Vec<usize> {
        self.paths
            .iter()
            .map(|p| p.last().map_or(self.root, |&k| self.edges[k].1))
            .collect()
    }

    /// `μ_ij`: occurrences of label `i` on path `j`.
    pub fn mu(&self) -> &[Vec<i64>] {
        &self.mu
    }

    /// Indices of the paths through node `v`.
    pub fn paths_through(&self, v: usize) -> Vec<usize> {
        (0..self.paths.len())
            .filter(|&j| v == self.root || self.paths[j].iter().any(|&k| self.edges[k].1 == v))
            .collect()
    }

    /// The tree with every edge label renamed through `rename`.
    pub fn relabel(&self, rename: impl Fn(usize) -> String) -> Result<StagedTree> {
        let mut t = self.to_json();
        for (e, &(_, _, l)) in t.edges.iter_mut().zip(&self.edges) {
            e.label = rename(l);
        }
        StagedTree::from_json(&t)
    }
}

fn collect_paths(
    v: usize,
    children: &[Vec<usize>],
    edges: &[(usize, usize, usize)],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if children[v].is_empty() {
        out.push(current.clone());
        return;
    }
    for &k in &children[v] {
        current.push(k);
        collect_paths(edges[k].1, children, edges, current, out);
        current.pop();
    }
}
