//! Lifting minor operations from `G` to `F_k(G)`.
//!
//! Every base operation becomes a batch of token-level operations addressed
//! by colex rank in the token graph of the current base graph:
//!
//! * deleting `a` deletes the `C(n-1, k-1)` token vertices containing `a`;
//! * deleting `[a,b]` deletes the `C(n-2, k-1)` token edges with
//!   `A xor B = {a,b}`;
//! * contracting `[a,b]` (`a < b`) contracts the `C(n-2, k-1)` matching
//!   edges `S+a ~ S+b`, each into the smaller rank `S+a`, and then deletes
//!   the `C(n-2, k-2)` token vertices containing both `a` and `b`.
//!
//! The matching contraction alone leaves a graph that merely contains
//! `F_k(G/e)`; the extra deletions make each lifted batch produce exactly
//! `F_k(G')` with the standard colex labeling, so the next base operation
//! can be lifted in the same coordinates.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::canon::are_isomorphic;
use crate::error::{Error, Result};
use crate::graph::structure::{circumference, has_subgraph, Pattern, CIRCUMFERENCE_LIMIT};
use crate::graph::{BitIter, Edge, Graph};
use crate::subset::{binomial, SubsetCodec};
use crate::token::{build_token_graph, DEFAULT_VERTEX_BUDGET};

/// Largest order for the bounded `K_{1,5}`-minor search.
pub const STAR_MINOR_LIMIT: usize = 12;

/// One base-level minor operation, addressed in the current vertex names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum MinorOp {
    DeleteVertex { v: usize },
    DeleteEdge { u: usize, v: usize },
    ContractEdge { u: usize, v: usize },
}

impl MinorOp {
    /// Applies the operation, returning the new base graph.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match *self {
            MinorOp::DeleteVertex { v } => g.delete_vertex(v),
            MinorOp::DeleteEdge { u, v } => g.delete_edge(u, v),
            MinorOp::ContractEdge { u, v } => g.contract_edge(u, v),
        }
    }
}

impl fmt::Display for MinorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorOp::DeleteVertex { v } => write!(f, "dv {v}"),
            MinorOp::DeleteEdge { u, v } => write!(f, "de {u} {v}"),
            MinorOp::ContractEdge { u, v } => write!(f, "ce {u} {v}"),
        }
    }
}

/// An ordered list of minor operations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MinorScript {
    pub ops: Vec<MinorOp>,
}

impl MinorScript {
    pub fn new(ops: Vec<MinorOp>) -> Self {
        MinorScript { ops }
    }

    /// Runs the script on `g`, reporting the first invalid operation.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        let mut cur = g.clone();
        for (index, op) in self.ops.iter().enumerate() {
            cur = op.apply(&cur).map_err(|e| Error::InvalidScript {
                index,
                reason: e.to_string(),
            })?;
        }
        Ok(cur)
    }
}

/// Parses the line format `dv V`, `de U V`, `ce U V`. Blank lines and
/// lines starting with `#` are skipped.
impl FromStr for MinorScript {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut ops = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let index = ops.len();
            let bad = |reason: String| Error::InvalidScript { index, reason };
            let mut words = line.split_whitespace();
            let cmd = words.next().unwrap_or_default();
            let args: Vec<usize> = words
                .map(|w| w.parse().map_err(|_| bad(format!("bad vertex {w:?}"))))
                .collect::<Result<_>>()?;
            let op = match (cmd, args.as_slice()) {
                ("dv", &[v]) => MinorOp::DeleteVertex { v },
                ("de", &[u, v]) => MinorOp::DeleteEdge { u, v },
                ("ce", &[u, v]) => MinorOp::ContractEdge { u, v },
                _ => return Err(bad(format!("unrecognised line {line:?}"))),
            };
            ops.push(op);
        }
        Ok(MinorScript { ops })
    }
}

/// One token-level operation, addressed by colex rank in the token graph of
/// the base graph current at that step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TokenOp {
    DeleteVertex { a: u64 },
    DeleteEdge { a: u64, b: u64 },
    /// Merges `b` into `a`.
    ContractEdge { a: u64, b: u64 },
}

/// The token operations produced by one base operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedStep {
    pub base: MinorOp,
    /// Order of the base graph before this step.
    pub base_order: usize,
    pub token_ops: Vec<TokenOp>,
}

impl LiftedStep {
    pub fn contractions(&self) -> usize {
        self.count(|op| matches!(op, TokenOp::ContractEdge { .. }))
    }

    pub fn vertex_deletions(&self) -> usize {
        self.count(|op| matches!(op, TokenOp::DeleteVertex { .. }))
    }

    pub fn edge_deletions(&self) -> usize {
        self.count(|op| matches!(op, TokenOp::DeleteEdge { .. }))
    }

    fn count(&self, pred: impl Fn(&TokenOp) -> bool) -> usize {
        self.token_ops.iter().filter(|op| pred(op)).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedScript {
    pub k: usize,
    pub steps: Vec<LiftedStep>,
}

impl LiftedScript {
    pub fn token_ops(&self) -> impl Iterator<Item = &TokenOp> {
        self.steps.iter().flat_map(|s| s.token_ops.iter())
    }
}

fn lift_op(g: &Graph, k: usize, op: MinorOp) -> Result<Vec<TokenOp>> {
    let codec = SubsetCodec::new(g.order(), k)?;
    let masks = codec.masks();
    let ops = match op {
        MinorOp::DeleteVertex { v } => masks
            .iter()
            .filter(|&&m| m >> v & 1 == 1)
            .map(|&m| TokenOp::DeleteVertex { a: codec.rank_mask(m) })
            .collect(),
        MinorOp::DeleteEdge { u, v } => {
            let e = Edge::new(u, v)?;
            masks
                .iter()
                .filter(|&&m| m >> e.u & 1 == 1 && m >> e.v & 1 == 0)
                .map(|&m| {
                    let (a, b) = (codec.rank_mask(m), codec.rank_mask(m ^ (1 << e.u) ^ (1 << e.v)));
                    TokenOp::DeleteEdge { a: a.min(b), b: a.max(b) }
                })
                .collect()
        }
        MinorOp::ContractEdge { u, v } => {
            let e = Edge::new(u, v)?;
            let both = (1u64 << e.u) | (1u64 << e.v);
            // masks are in rank order, so contractions come out by ascending rank of A
            let mut ops: Vec<TokenOp> = masks
                .iter()
                .filter(|&&m| m & both == 1 << e.u)
                .map(|&m| TokenOp::ContractEdge {
                    a: codec.rank_mask(m),
                    b: codec.rank_mask(m ^ both),
                })
                .collect();
            ops.extend(
                masks
                    .iter()
                    .filter(|&&m| m & both == both)
                    .map(|&m| TokenOp::DeleteVertex { a: codec.rank_mask(m) }),
            );
            ops
        }
    };
    Ok(ops)
}

/// Translates a base minor script into token-graph operations.
pub fn lift_script(g: &Graph, k: usize, script: &MinorScript) -> Result<LiftedScript> {
    let final_graph = script.apply(g)?;
    if k == 0 || k >= final_graph.order() {
        return Err(Error::BadK {
            n: final_graph.order(),
            k,
        });
    }
    let vertices = binomial(g.order(), k).unwrap_or(u64::MAX);
    if vertices > DEFAULT_VERTEX_BUDGET {
        return Err(Error::BudgetExceeded {
            vertices,
            budget: DEFAULT_VERTEX_BUDGET,
        });
    }
    let mut cur = g.clone();
    let mut steps = Vec::with_capacity(script.ops.len());
    for &op in &script.ops {
        steps.push(LiftedStep {
            base: op,
            base_order: cur.order(),
            token_ops: lift_op(&cur, k, op)?,
        });
        cur = op.apply(&cur)?;
    }
    Ok(LiftedScript { k, steps })
}

/// Applies one batch of token operations to `h`: edge deletions, then
/// contractions, then vertex deletions; survivors are compacted in order.
pub fn apply_token_ops(h: &Graph, ops: &[TokenOp]) -> Result<Graph> {
    let n = h.order();
    let vertex = |a: u64| -> Result<usize> {
        let a = a as usize;
        h.check_vertex(a)?;
        Ok(a)
    };
    let mut cur = h.clone();
    let mut merge_into: Vec<usize> = (0..n).collect();
    let mut deleted = vec![false; n];
    for op in ops {
        match *op {
            TokenOp::DeleteEdge { a, b } => cur = cur.delete_edge(vertex(a)?, vertex(b)?)?,
            TokenOp::ContractEdge { a, b } => {
                let (a, b) = (vertex(a)?, vertex(b)?);
                h.check_edge(a, b)?;
                merge_into[b] = a;
            }
            TokenOp::DeleteVertex { a } => deleted[vertex(a)?] = true,
        }
    }
    // contractions within one batch form a matching, so one hop suffices
    let mut map = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if merge_into[v] == v && !deleted[v] {
            map[v] = Some(next);
            next += 1;
        }
    }
    for v in 0..n {
        if merge_into[v] != v && !deleted[v] {
            map[v] = map[merge_into[v]];
        }
    }
    Ok(cur.map_vertices(next, &map))
}

/// Outcome of executing a lifted script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    /// `F_k(g)` after all lifted operations.
    pub result: Graph,
    /// The base minor `G'`.
    pub minor: Graph,
    /// Whether `result` is isomorphic to a freshly built `F_k(G')`.
    pub isomorphic: bool,
    /// Whether `result` equals `F_k(G')` as labelled graphs.
    pub identical: bool,
}

/// Executes the lifted script on `F_k(g)` and compares with `F_k(G')`.
pub fn apply_and_verify(g: &Graph, k: usize, script: &MinorScript) -> Result<Verification> {
    let lifted = lift_script(g, k, script)?;
    let mut h = build_token_graph(g, k)?.into_graph();
    for step in &lifted.steps {
        h = apply_token_ops(&h, &step.token_ops)?;
    }
    let minor = script.apply(g)?;
    let expected = build_token_graph(&minor, k)?.into_graph();
    let identical = h == expected;
    let isomorphic = identical || are_isomorphic(&h, &expected)?;
    Ok(Verification {
        result: h,
        minor,
        isomorphic,
        identical,
    })
}

/// Whether some connected vertex set has at least five outside neighbours,
/// i.e. `g` has a `K_{1,5}` minor. Only decided for small orders.
fn has_star5_minor(g: &Graph) -> bool {
    let n = g.order();
    if !(6..=STAR_MINOR_LIMIT).contains(&n) {
        return false;
    }
    let masks = g.masks().expect("small graph");
    let connected = |set: u64| {
        let mut seen = set & set.wrapping_neg();
        loop {
            let grown = BitIter(seen).fold(seen, |acc, v| acc | (masks[v] & set));
            if grown == seen {
                return seen == set;
            }
            seen = grown;
        }
    };
    (1u64..1 << n).any(|set| {
        let outside = BitIter(set).fold(0, |acc, v| acc | masks[v]) & !set;
        outside.count_ones() >= 5 && connected(set)
    })
}

/// Sound non-planarity certificate for `F_k(g)` from small minors of `g`.
///
/// `true` means `g` has a minor all of whose non-trivial token graphs are
/// non-planar (`K_{1,5}`, `C_5`, a non-path tree on more than ten vertices),
/// or a `P_7` subgraph with `3 <= k <= n-3`. `false` is inconclusive.
pub fn nonplanarity_by_minor(g: &Graph, k: usize) -> Result<bool> {
    let n = g.order();
    if k < 2 || k + 2 > n {
        return Err(Error::BadK { n, k });
    }
    if g.max_degree() >= 5 {
        return Ok(true);
    }
    if n <= CIRCUMFERENCE_LIMIT && circumference(g)? >= 5 {
        return Ok(true);
    }
    let k = k.min(n - k);
    if k >= 3 && has_subgraph(g, Pattern::P7) {
        return Ok(true);
    }
    for comp in g.components() {
        if comp.len() > 10 && !g.induced_subgraph(&comp)?.is_path() {
            return Ok(true);
        }
    }
    Ok(has_star5_minor(g))
}
