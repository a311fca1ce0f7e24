use super::SolverResult;
use crate::error::{FloodError, Result};
use crate::funnel::Funnel;
use crate::graph::{Graph, NodeFunction, NodeId};
use crate::weight::Weight;

/// Nodes whose ceiling seeds the queue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Init {
    /// Every node with a finite ceiling, in declaration order.
    AllFiniteCeiling,
    /// Only the listed nodes. Exact when the set touches every regional
    /// minimum of `ω` and `ω` is itself reachable from them, e.g. on a
    /// node-weighted graph with `e = δ_en f` and `ω ≥ f`.
    CeilingMinima(Vec<NodeId>),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tag {
    Unknown,
    Final,
    InS,
}

/// Best-first flooding from the ceiling: the level of a node is its
/// min-max distance to a virtual source joined to every node `p` by an edge
/// of weight `ω_p`. Outdated queue entries are dropped on extraction.
pub fn dijkstra_flood(g: &Graph, omega: &NodeFunction, init: &Init) -> Result<SolverResult> {
    let ew = g.edge_weights()?;
    let n = g.node_count();
    omega.check_domain(n)?;
    let mut tau = NodeFunction::constant(n, Weight::Top);
    let mut tag = vec![Tag::Unknown; n];
    let mut funnel: Funnel<Weight, NodeId> = Funnel::new();
    let seeds: Vec<NodeId> = match init {
        Init::AllFiniteCeiling => g.nodes().filter(|&p| omega[p] < Weight::Top).collect(),
        Init::CeilingMinima(set) => {
            if let Some(&bad) = set.iter().find(|&&p| p >= n) {
                return Err(FloodError::UnknownNode(format!("#{bad}")));
            }
            set.clone()
        }
    };
    for p in seeds {
        if omega[p] < tau[p] {
            tau[p] = omega[p];
            tag[p] = Tag::Final;
            funnel.push(omega[p], p);
        }
    }
    let mut result = SolverResult::new(NodeFunction::default());
    while let Some((level, j)) = funnel.pop() {
        if tag[j] == Tag::InS || tau[j] != level {
            result.stats.stale += 1;
            continue;
        }
        result.stats.extractions += 1;
        tag[j] = Tag::InS;
        result.order.push(j);
        for &(i, e) in g.neighbors(j) {
            if tag[i] == Tag::InS {
                continue;
            }
            let cand = level.join(ew[e]);
            if cand < tau[i] {
                tau[i] = cand;
                tag[i] = Tag::Final;
                funnel.push(cand, i);
                result.stats.relaxations += 1;
            }
        }
    }
    result.tau = tau;
    Ok(result)
}
