//! Graphs up to isomorphism by canonical augmentation over edges.
//!
//! Level `m` holds one canonical representative of every graph with `n`
//! vertices and `m` edges. A child `H = G + e` of a level-`m` parent `G` is
//! kept only when `e` lies in the automorphism orbit of the canonical
//! deletion edge of `H`, the edge whose canonical labels are largest.
//! Then every isomorphism class at level `m + 1` is produced by exactly one
//! parent class, and siblings from one parent are merged by canonical key.
//! Connectivity is filtered when graphs are handed out.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::canonical_labeling;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order the built-in generator supports.
pub const GENERATOR_LIMIT: usize = 10;

/// Upper-triangle bit index of the pair `i < j`, column-major.
fn pair_bit(i: usize, j: usize) -> u32 {
    (j * (j - 1) / 2 + i) as u32
}

fn key_of(g: &Graph) -> u64 {
    g.edges().fold(0, |acc, e| acc | 1 << pair_bit(e.u, e.v))
}

fn graph_of(n: usize, key: u64) -> Graph {
    let mut masks = vec![0u64; n];
    for j in 1..n {
        for i in 0..j {
            if key >> pair_bit(i, j) & 1 == 1 {
                masks[i] |= 1 << j;
                masks[j] |= 1 << i;
            }
        }
    }
    Graph::from_masks(&masks).expect("key describes a simple graph")
}

fn canonical_key(g: &Graph, colors: Option<&[u32]>) -> u64 {
    let lab = canonical_labeling(g, colors);
    key_of(&g.relabel(&lab.perm).expect("labeling is a permutation"))
}

/// Whether `child = parent + [a,b]` is the canonical augmentation.
fn accepts(child: &Graph, a: usize, b: usize) -> bool {
    let lab = canonical_labeling(child, None);
    let p = &lab.perm;
    let best = child
        .edges()
        .max_by_key(|e| {
            let (x, y) = (p[e.u], p[e.v]);
            (x.max(y), x.min(y))
        })
        .expect("child has at least one edge");
    if (best.u, best.v) == (a.min(b), a.max(b)) {
        return true;
    }
    let cell = &lab.root_cell;
    let mut c1 = [cell[a], cell[b]];
    let mut c2 = [cell[best.u], cell[best.v]];
    c1.sort_unstable();
    c2.sort_unstable();
    if c1 != c2 {
        return false;
    }
    let marked = |x: usize, y: usize| {
        let mut colors = vec![0u32; child.order()];
        colors[x] = 1;
        colors[y] = 1;
        canonical_key(child, Some(&colors))
    };
    marked(a, b) == marked(best.u, best.v)
}

/// Level-by-level generator for one order `n`.
#[derive(Debug, Clone)]
pub struct GraphGenerator {
    n: usize,
    /// Sorted canonical keys per edge count.
    levels: Vec<Vec<u64>>,
}

impl GraphGenerator {
    pub fn new(n: usize) -> Result<Self> {
        if n > GENERATOR_LIMIT {
            return Err(Error::SizeLimitExceeded {
                what: "built-in generator order (stream graphs from a graph6 file instead)",
                size: n,
                limit: GENERATOR_LIMIT,
            });
        }
        Ok(GraphGenerator {
            n,
            levels: vec![vec![0]],
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn max_edges(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    fn extend(&mut self) {
        let n = self.n;
        let parents = self.levels.last().expect("level 0 always exists");
        let mut next: Vec<u64> = parents
            .par_iter()
            .flat_map_iter(|&key| {
                let g = graph_of(n, key);
                let mut local = HashSet::new();
                for e in g.non_edges() {
                    let child = g.add_edge(e.u, e.v).expect("non-edge");
                    if accepts(&child, e.u, e.v) {
                        local.insert(canonical_key(&child, None));
                    }
                }
                local
            })
            .collect();
        next.sort_unstable();
        self.levels.push(next);
    }

    /// Canonical keys of all graphs with `m` edges.
    fn level(&mut self, m: usize) -> &[u64] {
        if m > self.max_edges() {
            return &[];
        }
        while self.levels.len() <= m {
            self.extend();
        }
        &self.levels[m]
    }

    /// One canonical graph per isomorphism class with `m` edges.
    pub fn graphs(&mut self, m: usize) -> Vec<Graph> {
        let n = self.n;
        self.level(m).iter().map(|&k| graph_of(n, k)).collect()
    }

    /// As [`graphs`](Self::graphs), restricted to connected graphs.
    pub fn connected(&mut self, m: usize) -> Vec<Graph> {
        let n = self.n;
        self.level(m)
            .iter()
            .map(|&k| graph_of(n, k))
            .filter(Graph::is_connected)
            .collect()
    }
}

/// Connected graphs with `n` vertices and `m` edges, one per class.
pub fn connected_graphs(n: usize, m: usize) -> Result<Vec<Graph>> {
    Ok(GraphGenerator::new(n)?.connected(m))
}
