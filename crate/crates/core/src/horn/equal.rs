use super::types::HornPair;
use crate::error::{Error, Result};

const MAX_SEARCH_COLUMNS: usize = 16;
const NODE_BUDGET: u64 = 20_000_000;

/// Equality of Horn pairs up to row order.
///
/// With `bijection`, column `j` of `p1` is matched to column `bijection[j]`
/// of `p2`. Without one, all column bijections are searched (at most 16
/// columns).
pub fn horn_pair_equal(p1: &HornPair, p2: &HornPair, bijection: Option<&[usize]>) -> Result<bool> {
    let n = p1.h.ncols();
    if n != p2.h.ncols() || p1.h.nrows() != p2.h.nrows() {
        return Ok(false);
    }
    if let Some(b) = bijection {
        if !is_permutation(b, n) {
            return Err(Error::InvalidInput(format!(
                "column bijection must be a permutation of 0..{n}"
            )));
        }
        return Ok(matches_under(p1, p2, b));
    }
    if n > MAX_SEARCH_COLUMNS {
        return Err(Error::SearchBudgetExceeded(n));
    }
    find_bijection(p1, p2).map(|b| b.is_some())
}

fn is_permutation(b: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    b.len() == n && b.iter().all(|&k| k < n && !std::mem::replace(&mut seen[k], true))
}

fn sorted_rows(rows: impl Iterator<Item = Vec<i64>>) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = rows.collect();
    v.sort_unstable();
    v
}

fn matches_under(p1: &HornPair, p2: &HornPair, b: &[usize]) -> bool {
    let l1 = p1.lambda.values();
    let l2 = p2.lambda.values();
    if (0..b.len()).any(|j| l1[j] != l2[b[j]]) {
        return false;
    }
    let r1 = sorted_rows(p1.h.rows().iter().cloned());
    let r2 = sorted_rows(p2.h.rows().iter().map(|r| b.iter().map(|&k| r[k]).collect()));
    r1 == r2
}

/// A column bijection under which the pairs agree, if any.
pub fn find_bijection(p1: &HornPair, p2: &HornPair) -> Result<Option<Vec<usize>>> {
    let n = p1.h.ncols();
    if n != p2.h.ncols() || p1.h.nrows() != p2.h.nrows() {
        return Ok(None);
    }
    let signature = |p: &HornPair, j: usize| {
        let mut col = p.h.column(j);
        col.sort_unstable();
        (p.lambda.values()[j].clone(), col)
    };
    let sig2: Vec<_> = (0..n).map(|k| signature(p2, k)).collect();
    let mut candidates: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|j| {
            let s = signature(p1, j);
            (j, (0..n).filter(|&k| sig2[k] == s).collect())
        })
        .collect();
    if candidates.iter().any(|(_, c)| c.is_empty()) {
        return Ok(None);
    }
    candidates.sort_by_key(|(j, c)| (c.len(), *j));

    struct Search<'a> {
        p1: &'a HornPair,
        p2: &'a HornPair,
        order: Vec<(usize, Vec<usize>)>,
        assign: Vec<Option<usize>>,
        used: Vec<bool>,
        nodes: u64,
    }

    impl Search<'_> {
        fn consistent(&self, depth: usize) -> bool {
            let cols: Vec<usize> = self.order[..depth].iter().map(|(j, _)| *j).collect();
            let a = sorted_rows(self.p1.h.rows().iter().map(|r| cols.iter().map(|&j| r[j]).collect()));
            let b = sorted_rows(self.p2.h.rows().iter().map(|r| {
                cols.iter()
                    .map(|&j| r[self.assign[j].expect("assigned")])
                    .collect()
            }));
            a == b
        }

        fn run(&mut self, depth: usize) -> Result<bool> {
            if depth == self.order.len() {
                return Ok(true);
            }
            let (j, cands) = self.order[depth].clone();
            for k in cands {
                if self.used[k] {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > NODE_BUDGET {
                    return Err(Error::SearchBudgetExceeded(self.order.len()));
                }
                self.used[k] = true;
                self.assign[j] = Some(k);
                if self.consistent(depth + 1) && self.run(depth + 1)? {
                    return Ok(true);
                }
                self.used[k] = false;
                self.assign[j] = None;
            }
            Ok(false)
        }
    }

    let mut s = Search {
        p1,
        p2,
        order: candidates,
        assign: vec![None; n],
        used: vec![false; n],
        nodes: 0,
    };
    if s.run(0)? {
        Ok(Some(s.assign.into_iter().map(|k| k.expect("complete")).collect()))
    } else {
        Ok(None)
    }
}
