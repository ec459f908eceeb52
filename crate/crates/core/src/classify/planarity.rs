//! Structural planarity classification of `F_k(G)` for connected `G`.
//!
//! Small-pattern obstructions are tried first. Past ten vertices the answer
//! is purely structural: `F_k(G)` is planar iff `G` is a path and
//! `k` is `2` or `n-2`. At ten vertices or fewer the token graph is built
//! and tested directly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::structure::{circumference, contains_disjoint, copies, has_subgraph, Pattern, CIRCUMFERENCE_LIMIT};
use crate::graph::Graph;
use crate::planarity::{is_planar, PlanarityVerdict};
use crate::token::{build_token_graph, max_token_degree};

/// Orders above this are classified without building the token graph.
pub const STRUCTURAL_THRESHOLD: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    MaxDegreeAtLeastFive,
    CircumferenceAtLeastFive,
    DisjointP3AndClaw,
    ContainsP7,
    NonPathTree,
    /// A path with `k` in `{2, n-2}`, or the failure of that condition.
    PathCharacterization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PlanarityClass {
    Planar { reason: Reason },
    NonPlanar { reason: Reason },
    ComputedDirectly { result: PlanarityVerdict },
}

impl PlanarityClass {
    pub fn is_planar(&self) -> bool {
        match self {
            PlanarityClass::Planar { .. } => true,
            PlanarityClass::NonPlanar { .. } => false,
            PlanarityClass::ComputedDirectly { result } => result.planar,
        }
    }

    pub fn is_structural(&self) -> bool {
        !matches!(self, PlanarityClass::ComputedDirectly { .. })
    }
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if k < 2 || k + 2 > n {
        return Err(Error::BadK { n, k });
    }
    Ok(())
}

/// The first structural obstruction that applies, if any.
pub fn structural_obstruction(g: &Graph, k: usize) -> Result<Option<Reason>> {
    let n = g.order();
    check_range(n, k)?;
    if g.max_degree() >= 5 {
        return Ok(Some(Reason::MaxDegreeAtLeastFive));
    }
    if n <= CIRCUMFERENCE_LIMIT && circumference(g)? >= 5 {
        return Ok(Some(Reason::CircumferenceAtLeastFive));
    }
    if contains_disjoint(g, Pattern::P3, Pattern::Claw) {
        return Ok(Some(Reason::DisjointP3AndClaw));
    }
    if k >= 3 && k + 3 <= n && has_subgraph(g, Pattern::P7) {
        return Ok(Some(Reason::ContainsP7));
    }
    if n > STRUCTURAL_THRESHOLD && g.is_tree() && !g.is_path() {
        return Ok(Some(Reason::NonPathTree));
    }
    Ok(None)
}

/// Planarity of `F_k(G)` for connected `G` and `2 <= k <= n-2`.
pub fn classify_planarity(g: &Graph, k: usize) -> Result<PlanarityClass> {
    let n = g.order();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(reason) = structural_obstruction(g, k)? {
        return Ok(PlanarityClass::NonPlanar { reason });
    }
    if n > STRUCTURAL_THRESHOLD {
        let reason = Reason::PathCharacterization;
        return Ok(if g.is_path() && (k == 2 || k == n - 2) {
            PlanarityClass::Planar { reason }
        } else {
            PlanarityClass::NonPlanar { reason }
        });
    }
    let f = build_token_graph(g, k)?;
    Ok(PlanarityClass::ComputedDirectly {
        result: is_planar(f.graph()),
    })
}

/// Whether some `P_3` in `g` leaves a residual graph `H = G - P_3` with
/// `F_{k-1}(H)` or `F_{k-2}(H)` of maximum degree above two.
pub fn p3_residual_check(g: &Graph, k: usize) -> Result<bool> {
    let n = g.order();
    check_range(n, k)?;
    let placements = copies(g, Pattern::P3);
    if placements.is_empty() {
        return Err(Error::NoP3Found);
    }
    for p3 in placements {
        let rest: Vec<usize> = (0..n).filter(|v| !p3.contains(v)).collect();
        let h = g.induced_subgraph(&rest)?;
        if max_token_degree(&h, k - 1)? > 2 || max_token_degree(&h, k - 2)? > 2 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `g` has vertex-disjoint copies of `P_3` and the claw.
pub fn p3_claw_check(g: &Graph, k: usize) -> Result<bool> {
    check_range(g.order(), k)?;
    Ok(contains_disjoint(g, Pattern::P3, Pattern::Claw))
}
