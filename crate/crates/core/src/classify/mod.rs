//! Structural classifiers for regularity and planarity of `F_k(G)`.

pub mod planarity;
pub mod regularity;

pub use planarity::{
    classify_planarity, p3_residual_check, p3_claw_check, structural_obstruction, PlanarityClass, Reason,
};
pub use regularity::{
    classify_regularity, subset_degree_constant, partition_uv, ConstantOutcome, NeighborhoodPartition, RegularityCase,
    RegularityVerdict, Witness, WitnessBranch,
};
