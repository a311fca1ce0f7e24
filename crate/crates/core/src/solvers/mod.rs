//! Highest flooding below a ceiling function.
//!
//! Every solver takes an edge-weighted graph (or a node-weighted one for the
//! core-expanding variant) and a ceiling `ω`, and returns the largest `τ ≤ ω`
//! that is a valid flooding. The results of all engines agree exactly.

mod berge;
mod ceiling_minima;
mod core_expanding;
mod dijkstra;
mod oracle;
mod prim;
mod segmentation;

pub use berge::{berge_flood, Schedule};
pub use ceiling_minima::{ceiling_minima, CeilingMinimaMethod};
pub use core_expanding::core_expanding_flood;
pub use dijkstra::{dijkstra_flood, Init};
pub use oracle::{augment_with_dummy, oracle_df2, DUMMY_NODE};
pub use prim::{ceiling_sources, prim_flood};
pub use segmentation::{marker_segmentation, Engine};

use crate::error::{FloodError, Result};
use crate::graph::{Graph, NodeFunction, NodeId};

/// Work counters reported by the solvers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    /// Entries taken out of a queue (or ceiling list) and processed.
    pub extractions: usize,
    /// Queue entries discarded as outdated.
    pub stale: usize,
    /// Full passes over the nodes (Berge only).
    pub sweeps: usize,
    /// Successful level decreases.
    pub relaxations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverResult {
    pub tau: NodeFunction,
    /// Region label of every node, for marker segmentation.
    pub labels: Option<Vec<u64>>,
    /// Nodes in the order their level became final, when the engine has one.
    pub order: Vec<NodeId>,
    pub stats: SolverStats,
}

impl SolverResult {
    fn new(tau: NodeFunction) -> Self {
        SolverResult {
            tau,
            labels: None,
            order: Vec::new(),
            stats: SolverStats::default(),
        }
    }
}

/// Highest edge flooding below `omega`.
pub fn dominated_flood(g: &Graph, omega: &NodeFunction) -> Result<NodeFunction> {
    Ok(dijkstra_flood(g, omega, &Init::AllFiniteCeiling)?.tau)
}

/// Errors unless `omega ≥ f` at every node.
pub fn check_ceiling_above_ground(g: &Graph, omega: &NodeFunction) -> Result<()> {
    let f = g.ground()?;
    omega.check_domain(g.node_count())?;
    for p in g.nodes() {
        if omega[p] < f[p] {
            return Err(FloodError::CeilingBelowGround {
                node: g.name(p).to_string(),
                ground: f[p].to_string(),
                ceiling: omega[p].to_string(),
            });
        }
    }
    Ok(())
}
