use crate::error::Result;
use crate::graph::{Graph, NodeFunction};
use crate::ultrametric::distance_matrix;
use crate::weight::Weight;

/// Name given to the extra node of the augmented graph (primed if taken).
pub const DUMMY_NODE: &str = "Ω";

/// Adds a node joined to every `p` with finite ceiling by an edge of weight
/// `ω_p`. Floodings below `ω` are then distances from that node. The new node
/// is last; the ground is dropped.
pub fn augment_with_dummy(g: &Graph, omega: &NodeFunction) -> Result<Graph> {
    let ew = g.edge_weights()?;
    omega.check_domain(g.node_count())?;
    let mut dummy = DUMMY_NODE.to_string();
    while g.node_id(&dummy).is_ok() {
        dummy.push('\'');
    }
    let mut names: Vec<String> = g.names().to_vec();
    names.push(dummy.clone());
    let mut pairs: Vec<(String, String)> = g
        .edges()
        .iter()
        .map(|e| (g.name(e.u).to_string(), g.name(e.v).to_string()))
        .collect();
    let mut weights = ew.to_vec();
    for p in g.nodes() {
        if omega[p] < Weight::Top {
            pairs.push((dummy.clone(), g.name(p).to_string()));
            weights.push(omega[p]);
        }
    }
    Graph::build(names, &pairs, None, Some(weights))
}

/// `τ_q = ⋀_i (ω_i ∨ d(i, q))` evaluated over the full distance matrix.
pub fn oracle_df2(g: &Graph, omega: &NodeFunction) -> Result<NodeFunction> {
    omega.check_domain(g.node_count())?;
    let dm = distance_matrix(g)?;
    Ok(g.nodes()
        .map(|q| Weight::meet_all(g.nodes().map(|i| omega[i].join(dm.get(i, q)))))
        .collect())
}
