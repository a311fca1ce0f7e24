use super::{check_ceiling_above_ground, SolverResult};
use crate::error::Result;
use crate::funnel::Funnel;
use crate::graph::{Graph, NodeFunction, NodeId};
use crate::weight::Weight;

/// Node-weighted flooding that grows a set `S` of nodes with final levels.
///
/// At each step either the unreached node of lowest ceiling joins `S` at its
/// ceiling, or the boundary node `p` of lowest level releases all its outside
/// neighbours at once, each at `τ_p ∨ f_q` (a neighbour at least as high as
/// `τ_p` stays dry). Requires `ω ≥ f`.
pub fn core_expanding_flood(g: &Graph, omega: &NodeFunction) -> Result<SolverResult> {
    check_ceiling_above_ground(g, omega)?;
    let f = g.ground()?;
    let n = g.node_count();
    let mut by_ceiling: Vec<NodeId> = g.nodes().collect();
    by_ceiling.sort_by_key(|&p| (omega[p], p));
    let mut next_ceiling = 0;
    let mut in_s = vec![false; n];
    let mut tau = NodeFunction::constant(n, Weight::Top);
    let mut boundary: Funnel<Weight, NodeId> = Funnel::new();
    let mut result = SolverResult::new(NodeFunction::default());
    let mut placed = 0;
    let has_outside = |p: NodeId, in_s: &[bool]| g.neighbors(p).iter().any(|&(q, _)| !in_s[q]);

    while placed < n {
        while in_s[by_ceiling[next_ceiling]] {
            next_ceiling += 1;
        }
        let j = by_ceiling[next_ceiling];
        let lambda = omega[j];
        let mu = loop {
            match boundary.peek() {
                Some((_, &p)) if !has_outside(p, &in_s) => {
                    boundary.pop();
                    result.stats.stale += 1;
                }
                Some((mu, _)) => break Some(mu),
                None => break None,
            }
        };
        result.stats.extractions += 1;
        match mu {
            Some(mu) if mu <= lambda => {
                let (level, p) = boundary.pop().expect("boundary was peeked");
                for &(q, _) in g.neighbors(p) {
                    if !in_s[q] {
                        in_s[q] = true;
                        tau[q] = level.join(f[q]);
                        boundary.push(tau[q], q);
                        result.order.push(q);
                        placed += 1;
                    }
                }
            }
            _ => {
                in_s[j] = true;
                tau[j] = lambda;
                boundary.push(lambda, j);
                result.order.push(j);
                placed += 1;
            }
        }
    }
    result.tau = tau;
    Ok(result)
}
