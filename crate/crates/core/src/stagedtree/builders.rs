//! Small trees used throughout the examples and tests.

use super::tree::StagedTree;

/// Flip a coin; on heads flip it again. Leaves: HH, HT, T.
pub fn coin() -> StagedTree {
    StagedTree::from_edges(&[
        ("r", "h", "s0"),
        ("r", "t", "s1"),
        ("h", "hh", "s0"),
        ("h", "ht", "s1"),
    ])
    .expect("valid tree")
}

/// The coin with the second flip after tails instead of heads.
pub fn mirror_coin() -> StagedTree {
    StagedTree::from_edges(&[
        ("r", "h", "s0"),
        ("r", "t", "s1"),
        ("t", "th", "s0"),
        ("t", "tt", "s1"),
    ])
    .expect("valid tree")
}

/// One floret with `k` leaves: the saturated model on `k` states.
pub fn star(k: usize) -> StagedTree {
    let names: Vec<(String, String)> = (0..k).map(|i| (format!("l{i}"), format!("s{i}"))).collect();
    let edges: Vec<(&str, &str, &str)> = names.iter().map(|(n, l)| ("r", n.as_str(), l.as_str())).collect();
    StagedTree::from_edges(&edges).expect("valid tree")
}

/// Independence of an `r1`-state and an `r2`-state variable: every
/// second-level node shares one floret.
pub fn independence(r1: usize, r2: usize) -> StagedTree {
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for i in 0..r1 {
        edges.push(("r".into(), format!("x{i}"), format!("a{i}")));
    }
    for i in 0..r1 {
        for j in 0..r2 {
            edges.push((format!("x{i}"), format!("x{i}y{j}"), format!("b{j}")));
        }
    }
    let refs: Vec<(&str, &str, &str)> = edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    StagedTree::from_edges(&refs).expect("valid tree")
}

/// The binary 4-chain `[12][23][34]` as a staged tree with florets
/// `f1 = {s0,s1}, …, f7 = {s12,s13}`. Leaves are `0000, 0001, …, 1111`.
pub fn four_chain() -> StagedTree {
    let mut edges: Vec<(String, String, String)> = vec![
        ("r".into(), "d1".into(), "s0".into()),
        ("r".into(), "d2".into(), "s1".into()),
        ("d1".into(), "c1".into(), "s2".into()),
        ("d1".into(), "c2".into(), "s3".into()),
        ("d2".into(), "c3".into(), "s4".into()),
        ("d2".into(), "c4".into(), "s5".into()),
    ];
    // third level: c1, c3 share {s6, s7}; c2, c4 share {s8, s9}
    for (c, k) in [(1, 0), (2, 1), (3, 2), (4, 3)] {
        let (a, b) = if c % 2 == 1 { ("s6", "s7") } else { ("s8", "s9") };
        edges.push((format!("c{c}"), format!("b{}", 2 * k + 1), a.into()));
        edges.push((format!("c{c}"), format!("b{}", 2 * k + 2), b.into()));
    }
    // fourth level: odd b share {s10, s11}; even b share {s12, s13}
    for b in 1..=8 {
        let (x, y) = if b % 2 == 1 { ("s10", "s11") } else { ("s12", "s13") };
        edges.push((format!("b{b}"), format!("a{}", 2 * b - 1), x.into()));
        edges.push((format!("b{b}"), format!("a{}", 2 * b), y.into()));
    }
    let refs: Vec<(&str, &str, &str)> = edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    StagedTree::from_edges(&refs).expect("valid tree")
}
