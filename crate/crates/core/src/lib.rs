//! Token graphs: construction, regularity and planarity classification,
//! minor lifting and the exhaustive edge-maximal search.

pub mod canon;
pub mod classify;
pub mod error;
pub mod graph;
pub mod minor;
pub mod planarity;
pub mod random;
pub mod search;
pub mod subset;
pub mod token;

pub use error::{Error, Result};
pub use graph::{Edge, Graph};
pub use subset::{KSubset, SubsetCodec};
pub use token::TokenGraph;
