//! Instances, exact partition functions, marginal ratios and tree recursions.

mod enumerate;
mod graph;
mod poly;
mod ratio;
mod reduce;
mod setcover;
mod spin;

pub use graph::{Graph, Hypergraph, Pins};
pub use poly::PartitionPolynomial;
pub use ratio::Ratio;
pub use reduce::{
    bis_brute, bis_to_setcover, edge_cover_brute, edge_cover_to_setcover, his_brute, BisReduction,
    EdgeCoverReduction,
};
pub use setcover::{
    exact_z_setcover, is_feasible_setcover, marginal_ratio_setcover, pin_blocked_vertices, ratio_via_setcover_tree,
    recursion_setcover, z_polynomial_setcover, SetCoverParams,
};
pub use spin::{
    exact_z_2spin, exact_z_2spin_with_budget, is_feasible_2spin, marginal_ratio_2spin, ratio_via_tree,
    recursion_2spin, z_polynomial_2spin, SpinParams,
};

/// Default cap on free vertices for brute-force enumeration.
pub const DEFAULT_BUDGET: usize = 24;
