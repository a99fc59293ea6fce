//! Exact-arithmetic toolkit for fractional matchings, fractional vertex
//! covers, and minimum-degree thresholds in k-uniform hypergraphs.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the numeric paths. The crate is organized as:
//!
//! * [`hypergraph`] — canonical k-graph representation, links, degrees, and
//!   the standard generators (complete graphs, the cover-set extremal family,
//!   exhaustive and seeded random families).
//! * [`solver`] — exact primal simplex for the fractional matching LP and its
//!   dual cover LP, certificate checking, and exhaustive integral matching.
//! * [`reduction`] — the tight-expansion / bottom-d-rescale machinery that
//!   lower-bounds a k-graph's fractional matching number by the worst link.
//! * [`threshold`] — closed-form degree-threshold formulas, range predicates,
//!   and brute-force oracles that recompute thresholds by definition.

pub mod comb;
pub mod error;
pub mod hypergraph;
pub mod ratio;
pub mod reduction;
mod simplex;
pub mod solver;
pub mod threshold;

pub use error::{Error, Result};
pub use hypergraph::{enumerate_all, random_graph, Edge, EdgeUniverse, Hypergraph, Vertex, VertexSet};
pub use ratio::Rat;
pub use solver::{EdgeWeighting, LpOutcome, VertexWeighting};

/// Work budgets shared by the exhaustive operations.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest edge universe (number of possible edges) the exhaustive
    /// enumeration will sweep; the sweep visits `2^universe` hypergraphs.
    pub edge_cap: u32,
    /// Generic work budget: branch-and-bound nodes for integral matching,
    /// d-set count for `link_floor`, k-set count for `tight_expansion`.
    pub node_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { edge_cap: 24, node_cap: 10_000_000 }
    }
}
