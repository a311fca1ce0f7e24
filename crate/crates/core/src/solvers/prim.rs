use super::SolverResult;
use crate::error::{FloodError, Result};
use crate::funnel::Funnel;
use crate::graph::{Graph, NodeFunction, NodeId};
use crate::weight::Weight;

/// Every node with a finite ceiling, at its ceiling level.
pub fn ceiling_sources(omega: &NodeFunction) -> Vec<(NodeId, Weight)> {
    omega
        .iter()
        .enumerate()
        .filter(|(_, &w)| w < Weight::Top)
        .map(|(p, &w)| (p, w))
        .collect()
}

/// Grows a spanning forest from the sources by always taking the lowest
/// edge leaving it. A node is appended at the running maximum of the
/// extracted priorities, which equals `τ_q ∨ e_qs` for the edge that brought
/// it in. Nodes no source can reach stay at `⊤`.
pub fn prim_flood(g: &Graph, sources: &[(NodeId, Weight)]) -> Result<SolverResult> {
    let labelled: Vec<(NodeId, Weight, u64)> = sources.iter().map(|&(p, w)| (p, w, 0)).collect();
    let mut r = grow(g, &labelled)?;
    r.labels = None;
    Ok(r)
}

/// Shared engine; each source carries a label inherited along tree edges.
pub(super) fn grow(g: &Graph, sources: &[(NodeId, Weight, u64)]) -> Result<SolverResult> {
    let ew = g.edge_weights()?;
    let n = g.node_count();
    if sources.is_empty() {
        return Err(FloodError::EmptySources);
    }
    if let Some(&(bad, _, _)) = sources.iter().find(|s| s.0 >= n) {
        return Err(FloodError::UnknownNode(format!("#{bad}")));
    }
    let mut funnel: Funnel<Weight, (NodeId, u64)> = Funnel::new();
    for &(p, level, label) in sources {
        funnel.push(level, (p, label));
    }
    let mut tau = NodeFunction::constant(n, Weight::Top);
    let mut labels = vec![0u64; n];
    let mut appended = vec![false; n];
    let mut result = SolverResult::new(NodeFunction::default());
    let mut lambda = Weight::Bottom;
    while let Some((mu, (p, label))) = funnel.pop() {
        if appended[p] {
            result.stats.stale += 1;
            continue;
        }
        result.stats.extractions += 1;
        lambda = lambda.join(mu);
        appended[p] = true;
        tau[p] = lambda;
        labels[p] = label;
        result.order.push(p);
        for &(q, e) in g.neighbors(p) {
            if !appended[q] {
                funnel.push(ew[e], (q, label));
            }
        }
    }
    debug_assert!(result.order.windows(2).all(|w| tau[w[0]] <= tau[w[1]]));
    result.tau = tau;
    result.labels = Some(labels);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::weight::w;

    fn nf(v: &[u64]) -> NodeFunction {
        v.iter().map(|&x| w(x)).collect()
    }

    #[test]
    fn single_source_gives_distance() {
        let c = fixtures::chain();
        let r = prim_flood(&c.graph, &[(0, w(0))]).unwrap();
        assert_eq!(r.tau, nf(&[0, 4, 4, 4, 4]));
    }

    #[test]
    fn all_sources_at_zero() {
        let c = fixtures::chain();
        let src: Vec<_> = (0..5).map(|p| (p, w(0))).collect();
        assert_eq!(prim_flood(&c.graph, &src).unwrap().tau, nf(&[0; 5]));
    }

    #[test]
    fn ceiling_sources_match_fixture() {
        let c = fixtures::chain();
        let r = prim_flood(&c.graph, &ceiling_sources(&c.ceiling)).unwrap();
        assert_eq!(r.tau, c.tau);
    }

    #[test]
    fn empty_sources_rejected() {
        let c = fixtures::chain();
        assert!(matches!(prim_flood(&c.graph, &[]), Err(FloodError::EmptySources)));
    }
}
