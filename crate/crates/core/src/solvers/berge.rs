use super::SolverResult;
use crate::error::Result;
use crate::graph::{Graph, NodeFunction};

/// Update order for the fixpoint iteration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    /// Every sweep reads the levels of the previous sweep only.
    #[default]
    Jacobi,
    /// In-place updates, sweeping forward then backward in node order.
    GaussSeidelAlternating,
}

/// Repeats `τ_p ← τ_p ∧ ⋀_q (τ_q ∨ e_pq)` from `τ = ω` until a sweep changes
/// nothing. The final, unchanged sweep is counted.
pub fn berge_flood(g: &Graph, omega: &NodeFunction, schedule: Schedule) -> Result<SolverResult> {
    let ew = g.edge_weights()?;
    omega.check_domain(g.node_count())?;
    let n = g.node_count();
    let mut tau = omega.clone();
    let mut result = SolverResult::new(NodeFunction::default());
    loop {
        result.stats.sweeps += 1;
        let mut changed = false;
        match schedule {
            Schedule::Jacobi => {
                let prev = tau.clone();
                for p in 0..n {
                    for &(q, e) in g.neighbors(p) {
                        let cand = prev[q].join(ew[e]);
                        if cand < tau[p] {
                            tau[p] = cand;
                            changed = true;
                            result.stats.relaxations += 1;
                        }
                    }
                }
            }
            Schedule::GaussSeidelAlternating => {
                let forward = result.stats.sweeps % 2 == 1;
                for i in 0..n {
                    let p = if forward { i } else { n - 1 - i };
                    for &(q, e) in g.neighbors(p) {
                        let cand = tau[q].join(ew[e]);
                        if cand < tau[p] {
                            tau[p] = cand;
                            changed = true;
                            result.stats.relaxations += 1;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    result.tau = tau;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::weight::Weight;

    #[test]
    fn both_schedules_solve_chain() {
        let c = fixtures::chain();
        for s in [Schedule::Jacobi, Schedule::GaussSeidelAlternating] {
            assert_eq!(berge_flood(&c.graph, &c.ceiling, s).unwrap().tau, c.tau);
        }
    }

    #[test]
    fn unconstrained_stays_top() {
        let c = fixtures::chain();
        let top = NodeFunction::constant(5, Weight::Top);
        assert_eq!(berge_flood(&c.graph, &top, Schedule::Jacobi).unwrap().tau, top);
    }

    #[test]
    fn valid_flooding_is_a_fixpoint_in_one_sweep() {
        let c = fixtures::chain();
        let r = berge_flood(&c.graph, &c.tau, Schedule::GaussSeidelAlternating).unwrap();
        assert_eq!(r.tau, c.tau);
        assert_eq!(r.stats.sweeps, 1);
        let t = fixtures::tank();
        let r = berge_flood(&t.graph, &t.tau, Schedule::Jacobi).unwrap();
        assert_eq!((r.tau, r.stats.sweeps), (t.tau, 1));
    }
}
