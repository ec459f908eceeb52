//! Planarity of simple graphs.
//!
//! [`is_planar`] splits the input into connected components, rejects any
//! component that violates Euler's bound `m <= 3n - 6`, and runs the
//! left-right test on the rest. [`planarity_oracle`] is an independent slow
//! path that searches for a `K_5` or `K_{3,3}` minor directly.

mod lr;
mod oracle;

use serde::Serialize;

use crate::graph::Graph;

pub use oracle::{planarity_oracle, ORACLE_ORDER_LIMIT};

/// The stage that settled a planarity question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Some component has more than `3n - 6` edges. Only ever non-planar.
    EulerBound,
    /// Every component has at most four vertices.
    ComponentSplit,
    /// The left-right test ran on at least one component.
    LeftRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub method: Method,
}

pub fn is_planar(g: &Graph) -> PlanarityVerdict {
    let components = g.components();
    let mut pending = Vec::new();
    for comp in &components {
        let n = comp.len();
        if n <= 4 {
            continue;
        }
        let m: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if m > 3 * n - 6 {
            return PlanarityVerdict {
                planar: false,
                method: Method::EulerBound,
            };
        }
        pending.push(comp);
    }
    if pending.is_empty() {
        return PlanarityVerdict {
            planar: true,
            method: Method::ComponentSplit,
        };
    }
    let planar = if components.len() == 1 {
        lr::is_planar_lr(g)
    } else {
        pending.iter().all(|comp| {
            let h = g.induced_subgraph(comp).expect("component vertices exist");
            lr::is_planar_lr(&h)
        })
    };
    PlanarityVerdict {
        planar,
        method: Method::LeftRight,
    }
}
