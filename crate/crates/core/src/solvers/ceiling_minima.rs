use crate::error::Result;
use crate::graph::{Graph, NodeFunction, NodeId};
use crate::weight::Weight;

/// How to approximate one entry point per regional minimum of the ceiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CeilingMinimaMethod {
    /// Forward scan only.
    ScanX,
    /// Forward scan intersected with `n` geodesic erosions.
    ScanXAndY(usize),
    /// Forward scan intersected with one backward recursive erosion.
    ScanXAndZ,
}

impl Default for CeilingMinimaMethod {
    fn default() -> Self {
        CeilingMinimaMethod::ScanXAndY(2)
    }
}

/// A set of nodes meeting every regional minimum of `ω` below `⊤`, found by
/// scanning in declaration order. Neighbours with a smaller index are "past",
/// the others "future". Sorted.
pub fn ceiling_minima(g: &Graph, omega: &NodeFunction, method: CeilingMinimaMethod) -> Result<Vec<NodeId>> {
    omega.check_domain(g.node_count())?;
    let x = scan_x(g, omega);
    let keep = match method {
        CeilingMinimaMethod::ScanX => vec![true; g.node_count()],
        CeilingMinimaMethod::ScanXAndY(n) => erosion_y(g, omega, n),
        CeilingMinimaMethod::ScanXAndZ => erosion_z(g, omega),
    };
    Ok(g.nodes().filter(|&p| x[p] && keep[p]).collect())
}

/// Strictly below every past neighbour, not above any future one.
fn scan_x(g: &Graph, omega: &NodeFunction) -> Vec<bool> {
    g.nodes()
        .map(|p| {
            let nb = g.neighbors(p);
            let past = Weight::meet_all(nb.iter().filter(|&&(q, _)| q < p).map(|&(q, _)| omega[q]));
            let future = Weight::meet_all(nb.iter().filter(|&&(q, _)| q > p).map(|&(q, _)| omega[q]));
            omega[p] < past && omega[p] <= future
        })
        .collect()
}

/// Nodes still above `ω` after eroding `ω + 1` geodesically `n` times.
fn erosion_y(g: &Graph, omega: &NodeFunction, n: usize) -> Vec<bool> {
    let mut level: Vec<Weight> = omega.iter().map(|w| w.succ()).collect();
    for _ in 0..n {
        level = g
            .nodes()
            .map(|p| {
                let low = g.neighbors(p).iter().fold(level[p], |m, &(q, _)| m.meet(level[q]));
                low.join(omega[p])
            })
            .collect();
    }
    g.nodes().map(|p| level[p] > omega[p]).collect()
}

/// Nodes still above `ω` after one in-place erosion of `ω + 1` scanning
/// backwards.
fn erosion_z(g: &Graph, omega: &NodeFunction) -> Vec<bool> {
    let mut level: Vec<Weight> = omega.iter().map(|w| w.succ()).collect();
    for p in g.nodes().rev() {
        let low = g
            .neighbors(p)
            .iter()
            .filter(|&&(q, _)| q > p)
            .fold(level[p], |m, &(q, _)| m.meet(level[q]));
        level[p] = low.join(omega[p]);
    }
    g.nodes().map(|p| level[p] > omega[p]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::weight::w;

    const ALL: [CeilingMinimaMethod; 3] = [
        CeilingMinimaMethod::ScanX,
        CeilingMinimaMethod::ScanXAndY(2),
        CeilingMinimaMethod::ScanXAndZ,
    ];

    #[test]
    fn chain_scan() {
        let c = fixtures::chain();
        let x = ceiling_minima(&c.graph, &c.ceiling, CeilingMinimaMethod::ScanX).unwrap();
        assert_eq!(x, vec![0, 2, 4]);
        for m in ALL {
            let s = ceiling_minima(&c.graph, &c.ceiling, m).unwrap();
            assert!(s.contains(&0) && s.contains(&4), "{m:?}: {s:?}");
        }
        let y = ceiling_minima(&c.graph, &c.ceiling, CeilingMinimaMethod::ScanXAndY(3)).unwrap();
        assert_eq!(y, vec![0, 4]);
        let z = ceiling_minima(&c.graph, &c.ceiling, CeilingMinimaMethod::ScanXAndZ).unwrap();
        assert_eq!(z, vec![0, 4]);
    }

    #[test]
    fn increasing_and_constant_paths() {
        let c = fixtures::chain();
        let rising: NodeFunction = (0..5).map(|v| w(v * 2)).collect();
        let flat = NodeFunction::constant(5, w(3));
        for m in ALL {
            assert_eq!(ceiling_minima(&c.graph, &rising, m).unwrap(), vec![0]);
            assert_eq!(ceiling_minima(&c.graph, &flat, m).unwrap(), vec![0]);
        }
    }
}
