//! Exhaustive Kuratowski-minor search, used to cross-check the fast test.
//!
//! A graph has a `K_5` or `K_{3,3}` minor iff some sequence of edge
//! contractions produces a graph containing one of them as a subgraph. The
//! search branches over contractions and memoizes on canonical forms.
//! Vertices of degree at most one are deleted and vertices of degree two are
//! suppressed first; neither can belong to a branch set that matters, since
//! both obstructions have minimum degree three.

use std::collections::HashMap;

use crate::canon::canonical_graph;
use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

/// Largest order the oracle accepts.
pub const ORACLE_ORDER_LIMIT: usize = 10;

/// Planarity by brute-force minor search. Slow; meant for tests.
pub fn planarity_oracle(g: &Graph) -> Result<bool> {
    if g.order() > ORACLE_ORDER_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "planarity oracle order",
            size: g.order(),
            limit: ORACLE_ORDER_LIMIT,
        });
    }
    let masks = g.masks().expect("small graphs carry masks").to_vec();
    Ok(!has_kuratowski_minor(masks, &mut HashMap::new()))
}

fn remove_vertex(masks: &[u64], v: usize) -> Vec<u64> {
    let low = (1u64 << v) - 1;
    masks
        .iter()
        .enumerate()
        .filter(|&(w, _)| w != v)
        .map(|(_, &m)| (m & low) | ((m >> (v + 1)) << v))
        .collect()
}

/// Merges `v` into `u`.
fn contract(masks: &[u64], u: usize, v: usize) -> Vec<u64> {
    let mut out = masks.to_vec();
    out[u] |= out[v];
    for m in out.iter_mut() {
        if *m >> v & 1 == 1 {
            *m |= 1 << u;
        }
    }
    out[u] &= !(1 << u);
    remove_vertex(&out, v)
}

fn reduce(mut masks: Vec<u64>) -> Vec<u64> {
    loop {
        if let Some(v) = (0..masks.len()).find(|&v| masks[v].count_ones() <= 1) {
            masks = remove_vertex(&masks, v);
            continue;
        }
        if let Some(v) = (0..masks.len()).find(|&v| masks[v].count_ones() == 2) {
            let a = masks[v].trailing_zeros() as usize;
            masks = contract(&masks, a, v);
            continue;
        }
        return masks;
    }
}

fn has_k5(masks: &[u64]) -> bool {
    fn grow(masks: &[u64], cand: u64, size: usize) -> bool {
        if size == 5 {
            return true;
        }
        if (cand.count_ones() as usize) < 5 - size {
            return false;
        }
        BitIter(cand).any(|v| grow(masks, cand & masks[v] & !((1u64 << (v + 1)) - 1), size + 1))
    }
    grow(masks, (1u64 << masks.len()) - 1, 0)
}

fn has_k33(masks: &[u64]) -> bool {
    let n = masks.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if (masks[a] & masks[b] & masks[c]).count_ones() >= 3 {
                    return true;
                }
            }
        }
    }
    false
}

fn has_kuratowski_minor(masks: Vec<u64>, memo: &mut HashMap<Vec<u64>, bool>) -> bool {
    let masks = reduce(masks);
    let n = masks.len();
    let m: u32 = masks.iter().map(|x| x.count_ones()).sum::<u32>() / 2;
    if n < 5 || m < 9 {
        return false;
    }
    if has_k5(&masks) || has_k33(&masks) {
        return true;
    }
    let key = canonical_graph(&Graph::from_masks(&masks).expect("valid masks"))
        .masks()
        .expect("small graph")
        .to_vec();
    if let Some(&known) = memo.get(&key) {
        return known;
    }
    let mut found = false;
    'outer: for u in 0..n {
        for v in BitIter(masks[u] >> (u + 1)).map(|b| b + u + 1) {
            if has_kuratowski_minor(contract(&masks, u, v), memo) {
                found = true;
                break 'outer;
            }
        }
    }
    memo.insert(key, found);
    found
}
