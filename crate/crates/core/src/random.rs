//! Seeded generators for randomized checks. Every entry point takes an
//! explicit RNG or seed so failures replay exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

pub fn permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Uniform labelled tree via a random Prüfer sequence.
pub fn tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return Graph::from_edges(n, (1..n).map(|v| (0, v))).expect("valid edges");
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = (0..n).find(|&w| degree[w] == 1).expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&w| degree[w] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).expect("valid edges")
}

/// A uniform random tree plus `extra` random additional edges (fewer if the
/// graph fills up).
pub fn connected<R: Rng + ?Sized>(n: usize, extra: usize, rng: &mut R) -> Graph {
    let mut g = tree(n, rng);
    let mut missing = g.non_edges();
    missing.shuffle(rng);
    for e in missing.into_iter().take(extra) {
        g = g.add_edge(e.u, e.v).expect("non-edge");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_are_trees() {
        let mut rng = seeded(1);
        for n in 1..30 {
            assert!(tree(n, &mut rng).is_tree());
            let g = connected(n, 3, &mut rng);
            assert!(g.is_connected());
            assert_eq!(g.size(), (n - 1 + 3).min(n * (n - 1) / 2));
        }
    }

    #[test]
    fn seeds_replay() {
        assert_eq!(gnp(12, 0.4, &mut seeded(9)), gnp(12, 0.4, &mut seeded(9)));
    }
}
