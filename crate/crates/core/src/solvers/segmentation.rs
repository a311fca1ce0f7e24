use std::collections::HashSet;

use super::{prim, SolverResult};
use crate::error::{FloodError, Result};
use crate::funnel::Funnel;
use crate::graph::{Graph, NodeFunction, NodeId};
use crate::weight::Weight;

/// Scheduling used to propagate marker labels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    #[default]
    Dijkstra,
    Prim,
}

/// Watershed from markers: every node receives the label of a marker at
/// minimal flooding distance, ties going to whichever reaches it first in
/// queue order. `tau` holds the distance to the nearest marker.
pub fn marker_segmentation(g: &Graph, markers: &[(NodeId, u64)], engine: Engine) -> Result<SolverResult> {
    let ew = g.edge_weights()?;
    let n = g.node_count();
    if markers.is_empty() {
        return Err(FloodError::EmptySources);
    }
    let mut nodes = HashSet::new();
    let mut labels = HashSet::new();
    for &(p, label) in markers {
        if p >= n {
            return Err(FloodError::UnknownNode(format!("#{p}")));
        }
        if !nodes.insert(p) {
            return Err(FloodError::DuplicateMarker(g.name(p).to_string()));
        }
        if !labels.insert(label) {
            return Err(FloodError::DuplicateLabel(label));
        }
    }
    match engine {
        Engine::Prim => {
            let sources: Vec<_> = markers.iter().map(|&(p, l)| (p, Weight::ZERO, l)).collect();
            prim::grow(g, &sources)
        }
        Engine::Dijkstra => {
            let mut tau = NodeFunction::constant(n, Weight::Top);
            let mut zeta = vec![0u64; n];
            let mut done = vec![false; n];
            let mut funnel: Funnel<Weight, NodeId> = Funnel::new();
            for &(p, label) in markers {
                tau[p] = Weight::ZERO;
                zeta[p] = label;
                funnel.push(Weight::ZERO, p);
            }
            let mut result = SolverResult::new(NodeFunction::default());
            while let Some((level, j)) = funnel.pop() {
                if done[j] || tau[j] != level {
                    result.stats.stale += 1;
                    continue;
                }
                done[j] = true;
                result.stats.extractions += 1;
                result.order.push(j);
                for &(i, e) in g.neighbors(j) {
                    let cand = level.join(ew[e]);
                    if !done[i] && cand < tau[i] {
                        tau[i] = cand;
                        zeta[i] = zeta[j];
                        funnel.push(cand, i);
                        result.stats.relaxations += 1;
                    }
                }
            }
            result.tau = tau;
            result.labels = Some(zeta);
            Ok(result)
        }
    }
}
