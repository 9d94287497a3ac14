//! Bipartite exchange matrices, Dynkin biagrams, exact and tropical
//! T-systems, foldings, and W-cell verification.

pub mod biagram;
pub mod catalog;
pub mod exchange;
pub mod laurent;
pub mod transform;
pub mod tropical;
pub mod tsystem;
pub mod wgraph;
