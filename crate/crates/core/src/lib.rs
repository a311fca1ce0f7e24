//! Dominated floodings of node- and edge-weighted graphs.
//!
//! A flooding assigns a water level to every node so that no water can flow
//! anywhere. Given a ceiling function `ω`, the solvers compute the highest
//! flooding lying below `ω`. The crate also checks hydrostatic validity,
//! extracts lakes, computes the flooding (min-max) distance and builds the
//! dendrogram of its closed balls.

pub mod dendrogram;
pub mod error;
pub mod fixtures;
pub mod funnel;
pub mod graph;
pub mod hydrostatics;
pub mod io;
pub mod reductions;
pub mod solvers;
pub mod ultrametric;
pub mod weight;

pub use error::{FloodError, Result};
pub use graph::{grid_graph, Connectivity, Edge, EdgeId, Graph, NodeFunction, NodeId, Raster};
pub use weight::{w, Weight};
