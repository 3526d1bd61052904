use rand::seq::SliceRandom;
use rand::Rng;

use super::tree::StagedTree;

/// A random staged tree: depth at most `max_depth`, between two and
/// `max_children` children per inner node, and random stages among inner
/// nodes with equally many children.
pub fn random_staged_tree<R: Rng>(rng: &mut R, max_depth: usize, max_children: usize) -> StagedTree {
    assert!(max_depth >= 1 && max_children >= 2);
    // (parent, depth) of each node; children counts fixed in a second pass
    let mut kids: Vec<Vec<usize>> = vec![Vec::new()];
    let mut depth = vec![0usize];
    let mut frontier = vec![0usize];
    while let Some(v) = frontier.pop() {
        let inner = v == 0 || (depth[v] < max_depth && rng.gen_bool(0.55));
        if !inner {
            continue;
        }
        let k = rng.gen_range(2..=max_children);
        for _ in 0..k {
            let w = kids.len();
            kids.push(Vec::new());
            depth.push(depth[v] + 1);
            kids[v].push(w);
            frontier.push(w);
        }
    }
    // stages: inner nodes grouped by child count, then randomly split
    let mut stage_of = vec![usize::MAX; kids.len()];
    let mut stage_size: Vec<usize> = Vec::new();
    let mut inner: Vec<usize> = (0..kids.len()).filter(|&v| !kids[v].is_empty()).collect();
    inner.shuffle(rng);
    for v in inner {
        let k = kids[v].len();
        let existing: Vec<usize> = (0..stage_size.len()).filter(|&s| stage_size[s] == k).collect();
        if !existing.is_empty() && rng.gen_bool(0.5) {
            stage_of[v] = *existing.choose(rng).expect("nonempty");
        } else {
            stage_of[v] = stage_size.len();
            stage_size.push(k);
        }
    }
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for (c, &w) in kids[v].iter().enumerate() {
            edges.push((format!("v{v}"), format!("v{w}"), format!("s{}_{c}", stage_of[v])));
        }
        stack.extend(kids[v].iter().rev());
    }
    let refs: Vec<(&str, &str, &str)> = edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    StagedTree::from_edges(&refs).expect("generated trees are valid")
}
