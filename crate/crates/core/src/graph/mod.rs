//! Simple undirected graphs over the vertex set `0..n`.
//!
//! A [`Graph`] is immutable once built: every mutation returns a new value.
//! Adjacency is stored as sorted neighbour lists; graphs with at most 64
//! vertices also carry one `u64` neighbourhood mask per vertex so that cut
//! sizes and neighbourhood intersections reduce to popcounts.
//!
//! Deleting or contracting renames the surviving vertices by compacting them
//! downward in their original order. A contraction of `[u,v]` keeps the
//! smaller endpoint.

pub mod families;
pub mod graph6;
pub mod structure;

use std::fmt;

use crate::error::{Error, Result};

/// Largest order for which neighbourhood bitmasks are kept.
pub const MASK_LIMIT: usize = 64;

/// An edge `[u,v]` normalised so that `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    /// The endpoint that is not `w`, if `w` is an endpoint.
    pub fn other(&self, w: usize) -> Option<usize> {
        if w == self.u {
            Some(self.v)
        } else if w == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.u, self.v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    masks: Option<Vec<u64>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().map(|e| (e.u, e.v)).collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list. Repeated edges are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            let e = Edge::new(a, b)?;
            if e.v >= n {
                return Err(Error::NoSuchVertex { vertex: e.v, n });
            }
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Builds from neighbour lists that are already sorted, deduplicated,
    /// loop-free and symmetric.
    pub(crate) fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let degree_sum: usize = adj.iter().map(Vec::len).sum();
        debug_assert!(degree_sum.is_multiple_of(2));
        let masks = (n <= MASK_LIMIT).then(|| {
            adj.iter()
                .map(|list| list.iter().fold(0u64, |acc, &w| acc | (1u64 << w)))
                .collect()
        });
        Graph {
            adj,
            masks,
            m: degree_sum / 2,
        }
    }

    /// Builds a graph of order at most 64 from neighbourhood masks.
    pub fn from_masks(masks: &[u64]) -> Result<Self> {
        let n = masks.len();
        if n > MASK_LIMIT {
            return Err(Error::SizeLimitExceeded {
                what: "mask graph order",
                size: n,
                limit: MASK_LIMIT,
            });
        }
        let mut adj = Vec::with_capacity(n);
        for (v, &mask) in masks.iter().enumerate() {
            if mask >> v & 1 == 1 {
                return Err(Error::SelfLoop(v));
            }
            let list: Vec<usize> = BitIter(mask).collect();
            if let Some(&w) = list.iter().find(|&&w| w >= n || masks[w] >> v & 1 == 0) {
                return Err(Error::NotAnEdge { u: v, v: w });
            }
            adj.push(list);
        }
        Ok(Self::from_adjacency(adj))
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbourhood mask of `v`; `None` when the graph has more than 64 vertices.
    pub fn neighbor_mask(&self, v: usize) -> Option<u64> {
        self.masks.as_ref().map(|m| m[v])
    }

    pub fn masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a >= self.order() || b >= self.order() || a == b {
            return false;
        }
        match &self.masks {
            Some(m) => m[a] >> b & 1 == 1,
            None => self.adj[a].binary_search(&b).is_ok(),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::NoSuchVertex {
                vertex: v,
                n: self.order(),
            })
        }
    }

    pub fn check_edge(&self, a: usize, b: usize) -> Result<Edge> {
        let e = Edge::new(a, b)?;
        if self.has_edge(e.u, e.v) {
            Ok(e)
        } else {
            Err(Error::NotAnEdge { u: e.u, v: e.v })
        }
    }

    /// Edges in lexicographic order of `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Edge { u, v })
        })
    }

    /// Unordered vertex pairs that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> Vec<Edge> {
        let n = self.order();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.m == n * n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect())
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        if perm.len() != n {
            return Err(Error::SizeLimitExceeded {
                what: "permutation length",
                size: perm.len(),
                limit: n,
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NoSuchVertex { vertex: p, n });
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (v, list) in self.adj.iter().enumerate() {
            let mut mapped: Vec<usize> = list.iter().map(|&w| perm[w]).collect();
            mapped.sort_unstable();
            adj[perm[v]] = mapped;
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Rebuilds the graph through a partial vertex map; `None` drops the
    /// vertex. Edges whose endpoints collapse onto one vertex disappear and
    /// parallel edges merge.
    pub(crate) fn map_vertices(&self, new_n: usize, map: &[Option<usize>]) -> Graph {
        let mut adj = vec![Vec::new(); new_n];
        for e in self.edges() {
            if let (Some(a), Some(b)) = (map[e.u], map[e.v]) {
                if a != b {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph::from_adjacency(adj)
    }

    /// Subgraph induced by `vertices`, renamed by their rank in sorted order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let n = self.order();
        let mut map = vec![None; n];
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, &v) in sorted.iter().enumerate() {
            self.check_vertex(v)?;
            map[v] = Some(i);
        }
        Ok(self.map_vertices(sorted.len(), &map))
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let map: Vec<Option<usize>> = (0..self.order())
            .map(|w| match w.cmp(&v) {
                std::cmp::Ordering::Less => Some(w),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(w - 1),
            })
            .collect();
        Ok(self.map_vertices(self.order() - 1, &map))
    }

    pub fn delete_edge(&self, a: usize, b: usize) -> Result<Graph> {
        let e = self.check_edge(a, b)?;
        let mut adj = self.adj.clone();
        adj[e.u].retain(|&w| w != e.v);
        adj[e.v].retain(|&w| w != e.u);
        Ok(Graph::from_adjacency(adj))
    }

    pub fn add_edge(&self, a: usize, b: usize) -> Result<Graph> {
        let e = Edge::new(a, b)?;
        self.check_vertex(e.v)?;
        if self.has_edge(e.u, e.v) {
            return Ok(self.clone());
        }
        let mut adj = self.adj.clone();
        let pos = adj[e.u].partition_point(|&w| w < e.v);
        adj[e.u].insert(pos, e.v);
        let pos = adj[e.v].partition_point(|&w| w < e.u);
        adj[e.v].insert(pos, e.u);
        Ok(Graph::from_adjacency(adj))
    }

    /// `G/e`: the larger endpoint merges into the smaller one.
    pub fn contract_edge(&self, a: usize, b: usize) -> Result<Graph> {
        let e = self.check_edge(a, b)?;
        let map: Vec<Option<usize>> = (0..self.order())
            .map(|w| match w.cmp(&e.v) {
                std::cmp::Ordering::Less => Some(w),
                std::cmp::Ordering::Equal => Some(e.u),
                std::cmp::Ordering::Greater => Some(w - 1),
            })
            .collect();
        Ok(self.map_vertices(self.order() - 1, &map))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.components().len() == 1
    }

    /// Cycle-free test by union-find over the edge list.
    pub fn is_acyclic(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.order()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.edges() {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.order() > 0 && self.m + 1 == self.order() && self.is_connected()
    }

    /// Isomorphic to the path `P_n`.
    pub fn is_path(&self) -> bool {
        let n = self.order();
        n > 0 && self.m + 1 == n && self.max_degree() <= 2 && self.is_connected()
    }

    /// Isomorphic to the cycle `C_n` (n >= 3).
    pub fn is_cycle(&self) -> bool {
        let n = self.order();
        n >= 3 && self.m == n && self.min_degree() == 2 && self.max_degree() == 2 && self.is_connected()
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        let n = self.order();
        let mut counts = vec![0; n];
        for e in self.edges() {
            let common = match &self.masks {
                Some(m) => (m[e.u] & m[e.v]).count_ones() as usize,
                None => sorted_intersection_len(&self.adj[e.u], &self.adj[e.v]),
            };
            counts[e.u] += common;
            counts[e.v] += common;
        }
        // each triangle at v is seen from both of its edges at v
        counts.iter_mut().for_each(|c| *c /= 2);
        counts
    }
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Iterates the set bit positions of a `u64`, lowest first.
#[derive(Debug, Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn complement_of_complete_is_empty() {
        let g = complete(4).complement();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 0);
        assert_eq!(Graph::empty(3).complement(), complete(3));
    }

    #[test]
    fn contraction_examples() {
        for e in cycle(5).edges() {
            let h = cycle(5).contract_edge(e.u, e.v).unwrap();
            assert!(h.is_cycle() && h.order() == 4);
        }
        let k3 = complete(4).contract_edge(1, 3).unwrap();
        assert_eq!(k3, complete(3));
        // P_7 middle edge
        let p6 = path(7).contract_edge(3, 4).unwrap();
        assert!(p6.is_path() && p6.order() == 6);
    }

    #[test]
    fn contraction_merges_into_smaller_endpoint() {
        // star centre 0; contracting [0,3] keeps 0, renames 4 -> 3
        let g = star(4).contract_edge(3, 0).unwrap();
        assert_eq!(g, star(3));
        let h = path(4).add_edge(0, 3).unwrap().contract_edge(1, 2).unwrap();
        assert_eq!(h, complete(3));
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(complete(4).delete_vertex(2).unwrap(), complete(3));
        let p = cycle(5).delete_edge(0, 4).unwrap();
        assert_eq!(p, path(5));
        assert_eq!(star(5).delete_vertex(0).unwrap(), Graph::empty(5));
    }

    #[test]
    fn errors_on_bad_operands() {
        let g = path(4);
        assert_eq!(g.contract_edge(0, 2), Err(Error::NotAnEdge { u: 0, v: 2 }));
        assert_eq!(g.delete_edge(3, 1), Err(Error::NotAnEdge { u: 1, v: 3 }));
        assert_eq!(g.delete_vertex(4), Err(Error::NoSuchVertex { vertex: 4, n: 4 }));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn empty_graph_is_legal() {
        let g = Graph::empty(0);
        assert_eq!(g.complement(), g);
        assert!(g.is_connected());
        assert!(g.is_acyclic());
    }

    #[test]
    fn masks_round_trip() {
        let g = families::petersen();
        let h = Graph::from_masks(g.masks().unwrap()).unwrap();
        assert_eq!(g, h);
        assert!(Graph::from_masks(&[0b10, 0b00]).is_err());
    }

    #[test]
    fn triangle_counts_of_k4() {
        assert_eq!(complete(4).triangle_counts(), vec![3; 4]);
        assert_eq!(cycle(5).triangle_counts(), vec![0; 5]);
    }
}
