//! Token graphs `F_k(G)` and Johnson graphs.
//!
//! Vertex `r` of a token graph is the k-subset of colex rank `r`. Two ranks
//! are adjacent when their subsets differ by moving one token along an edge
//! of the base graph, i.e. their symmetric difference is an edge of `G`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{families, BitIter, Graph};
use crate::subset::{binomial, KSubset, SubsetCodec};

/// Default cap on `C(n, k)` for explicit construction.
pub const DEFAULT_VERTEX_BUDGET: u64 = 1_000_000;

/// Below this many token vertices construction stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenGraph {
    base: Graph,
    k: usize,
    graph: Graph,
    codec: SubsetCodec,
}

impl TokenGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn codec(&self) -> &SubsetCodec {
        &self.codec
    }

    pub fn subset(&self, rank: usize) -> Result<KSubset> {
        self.codec.unrank(rank as u64)
    }

    pub fn rank(&self, s: &KSubset) -> usize {
        self.codec.rank(s) as usize
    }

    /// Graphviz rendering with each token vertex labelled by its subset.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph F{}_G {{\n", self.k);
        for r in 0..self.graph.order() {
            let s = self.subset(r).expect("rank below C(n,k)");
            out.push_str(&format!("  {r} [label=\"{s}\"];\n"));
        }
        for e in self.graph.edges() {
            out.push_str(&format!("  {} -- {};\n", e.u, e.v));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn check_k(n: usize, k: usize) -> Result<()> {
    if k >= 1 && k < n {
        Ok(())
    } else {
        Err(Error::BadK { n, k })
    }
}

fn check_budget(n: usize, k: usize, budget: u64) -> Result<()> {
    let vertices = binomial(n, k).unwrap_or(u64::MAX);
    if vertices > budget {
        return Err(Error::BudgetExceeded { vertices, budget });
    }
    Ok(())
}

/// `F_k(G)` with the default vertex budget.
pub fn build_token_graph(g: &Graph, k: usize) -> Result<TokenGraph> {
    build_token_graph_with_budget(g, k, DEFAULT_VERTEX_BUDGET)
}

pub fn build_token_graph_with_budget(g: &Graph, k: usize, budget: u64) -> Result<TokenGraph> {
    let n = g.order();
    check_k(n, k)?;
    let codec = SubsetCodec::new(n, k)?;
    check_budget(n, k, budget)?;
    let graph = token_adjacency(g, &codec);
    Ok(TokenGraph {
        base: g.clone(),
        k,
        graph,
        codec,
    })
}

/// Edges `(rank(A), rank(A xor {u,v}))` for every rank in `ranks`, keeping
/// only the pairs whose first rank is smaller. Sorted by `(r, s)`.
fn upper_edges(
    masks: &[u64],
    nbr: &[u64],
    codec: &SubsetCodec,
    ranks: std::ops::Range<usize>,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in ranks {
        let a = masks[r];
        let start = out.len();
        for u in BitIter(a) {
            for v in BitIter(nbr[u] & !a) {
                let s = codec.rank_mask(a ^ (1 << u) ^ (1 << v)) as usize;
                if r < s {
                    out.push((r, s));
                }
            }
        }
        out[start..].sort_unstable();
    }
    out
}

fn token_adjacency(g: &Graph, codec: &SubsetCodec) -> Graph {
    let masks = codec.masks();
    let nbr = g.masks().expect("codec caps the base order at 64");
    let total = masks.len();
    let edges = if total < PARALLEL_THRESHOLD {
        upper_edges(&masks, nbr, codec, 0..total)
    } else {
        let chunk = total.div_ceil(rayon::current_num_threads() * 4).max(1024);
        let parts: Vec<Vec<(usize, usize)>> = (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|i| upper_edges(&masks, nbr, codec, i * chunk..((i + 1) * chunk).min(total)))
            .collect();
        parts.concat()
    };
    // edges arrive sorted by (r, s), so every row below fills in increasing order
    let mut adj = vec![Vec::new(); total];
    for &(r, s) in &edges {
        adj[r].push(s);
        adj[s].push(r);
    }
    Graph::from_adjacency(adj)
}

/// `J(n,k) = F_k(K_n)`.
pub fn johnson(n: usize, k: usize) -> Result<TokenGraph> {
    check_k(n, k)?;
    build_token_graph(&families::complete(n), k)
}

/// Complement of `F_k(G)` inside the edge set of `J(n,k)`; its base is the
/// complement of `G`.
pub fn johnson_complement(tg: &TokenGraph) -> TokenGraph {
    let n = tg.base.order();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let masks = tg.codec.masks();
    let mut adj = vec![Vec::new(); masks.len()];
    for (r, &a) in masks.iter().enumerate() {
        for u in BitIter(a) {
            for v in BitIter(all & !a) {
                let s = tg.codec.rank_mask(a ^ (1 << u) ^ (1 << v)) as usize;
                if !tg.graph.has_edge(r, s) {
                    adj[r].push(s);
                }
            }
        }
        adj[r].sort_unstable();
    }
    TokenGraph {
        base: tg.base.complement(),
        k: tg.k,
        graph: Graph::from_adjacency(adj),
        codec: tg.codec.clone(),
    }
}

/// Degree of `A` in `F_k(G)`: the number of edges of `G` with exactly one
/// end in `A`.
pub fn token_degree(g: &Graph, a: &KSubset) -> usize {
    if let Some(nbr) = g.masks() {
        return token_degree_mask(nbr, a.mask());
    }
    a.members()
        .iter()
        .map(|&u| g.neighbors(u).iter().filter(|&&w| !a.contains(w)).count())
        .sum()
}

/// [`token_degree`] on neighbourhood masks.
pub fn token_degree_mask(nbr: &[u64], a: u64) -> usize {
    BitIter(a)
        .map(|u| (nbr[u] & !a).count_ones() as usize)
        .sum()
}

/// Largest token degree over all j-subsets, without building `F_j`.
pub fn max_token_degree(g: &Graph, j: usize) -> Result<usize> {
    let n = g.order();
    if j > n {
        return Err(Error::BadK { n, k: j });
    }
    let codec = SubsetCodec::new(n, j)?;
    let nbr = g.masks().expect("codec caps the order at 64");
    Ok(codec
        .masks()
        .into_iter()
        .map(|a| token_degree_mask(nbr, a))
        .max()
        .unwrap_or(0))
}

/// Checks that `A -> V \ A` maps `F_k(G)` isomorphically onto `F_{n-k}(G)`.
pub fn complement_isomorphism_check(g: &Graph, k: usize) -> Result<bool> {
    let n = g.order();
    check_k(n, k)?;
    let fk = build_token_graph(g, k)?;
    let fnk = build_token_graph(g, n - k)?;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let image: Vec<usize> = fk
        .codec
        .masks()
        .into_iter()
        .map(|a| fnk.codec.rank_mask(all & !a) as usize)
        .collect();
    if fk.graph.size() != fnk.graph.size() {
        return Ok(false);
    }
    let ok = fk.graph.edges().all(|e| fnk.graph.has_edge(image[e.u], image[e.v]));
    Ok(ok)
}
