//! Validity of floodings, lakes and flat zones.
//!
//! Two readings of a flooding `τ` are supported:
//!
//! * node semantics (topographic graph with ground `f`): `τ ≥ f`, and whenever
//!   `τ_p > τ_q` for neighbours `p, q`, the node `p` is dry (`τ_p = f_p`);
//! * edge semantics (tank network with edge weights `e`): `τ_p ≤ τ_q ∨ e_pq`
//!   for every edge, in both directions.
//!
//! On `derive_edge_graph(g)` the two readings accept the same `τ ≥ f`.

use std::fmt;

use crate::error::{FloodError, Result};
use crate::graph::{EdgeId, Graph, NodeFunction, NodeId};
use crate::reductions::delta_en;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    Node,
    Edge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `τ_p < f_p`.
    BelowGround { node: NodeId },
    /// Water at `from` is not held back on the way to `to`.
    Spill {
        edge: EdgeId,
        from: NodeId,
        to: NodeId,
    },
}

impl Violation {
    pub fn describe(&self, g: &Graph, tau: &NodeFunction) -> String {
        match *self {
            Violation::BelowGround { node } => format!(
                "node {}: tau={} below ground",
                g.name(node),
                tau[node]
            ),
            Violation::Spill { edge, from, to } => {
                let w = g
                    .edge_weights()
                    .map(|ew| format!(" e={}", ew[edge]))
                    .unwrap_or_default();
                format!(
                    "edge {}: tau({})={} spills to tau({})={}{}",
                    g.edge_label(edge),
                    g.name(from),
                    tau[from],
                    g.name(to),
                    tau[to],
                    w
                )
            }
        }
    }
}

/// Outcome of a validity check: valid iff no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Node-semantics check against the graph's ground levels.
pub fn is_node_flooding(g: &Graph, tau: &NodeFunction) -> Result<Verdict> {
    let f = g.ground()?;
    tau.check_domain(g.node_count())?;
    let mut violations: Vec<Violation> = g
        .nodes()
        .filter(|&p| tau[p] < f[p])
        .map(|node| Violation::BelowGround { node })
        .collect();
    for (id, e) in g.edges().iter().enumerate() {
        for (p, q) in [(e.u, e.v), (e.v, e.u)] {
            if tau[p] > tau[q] && tau[p] != f[p] {
                violations.push(Violation::Spill {
                    edge: id,
                    from: p,
                    to: q,
                });
            }
        }
    }
    Ok(Verdict { violations })
}

/// Edge-semantics check against the graph's edge weights.
pub fn is_edge_flooding(g: &Graph, tau: &NodeFunction) -> Result<Verdict> {
    let ew = g.edge_weights()?;
    tau.check_domain(g.node_count())?;
    let mut violations = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        for (p, q) in [(e.u, e.v), (e.v, e.u)] {
            if tau[p] > tau[q].join(ew[id]) {
                violations.push(Violation::Spill {
                    edge: id,
                    from: p,
                    to: q,
                });
            }
        }
    }
    Ok(Verdict { violations })
}

pub fn check_flooding(g: &Graph, tau: &NodeFunction, semantics: Semantics) -> Result<Verdict> {
    match semantics {
        Semantics::Node => is_node_flooding(g, tau),
        Semantics::Edge => is_edge_flooding(g, tau),
    }
}

fn require_valid(g: &Graph, tau: &NodeFunction, semantics: Semantics) -> Result<()> {
    let verdict = check_flooding(g, tau, semantics)?;
    match verdict.violations.first() {
        None => Ok(()),
        Some(v) => Err(FloodError::InvalidFlooding(v.describe(g, tau))),
    }
}

/// Cocycle edge leaving a full lake at its level towards a lower node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhaust {
    pub edge: EdgeId,
    pub inside: NodeId,
    pub outside: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LakeKind {
    RegionalMinimum,
    Full(Vec<Exhaust>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lake {
    pub nodes: Vec<NodeId>,
    pub level: Weight,
    pub kind: LakeKind,
}

impl Lake {
    pub fn is_full(&self) -> bool {
        matches!(self.kind, LakeKind::Full(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LakePartition {
    pub lakes: Vec<Lake>,
}

impl LakePartition {
    /// Index of the lake containing each node.
    pub fn lake_index(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; n];
        for (i, lake) in self.lakes.iter().enumerate() {
            for &p in &lake.nodes {
                idx[p] = i;
            }
        }
        idx
    }

    /// One report line per lake.
    pub fn report(&self, g: &Graph) -> String {
        let mut out = String::new();
        for (i, lake) in self.lakes.iter().enumerate() {
            let nodes: Vec<&str> = lake.nodes.iter().map(|&p| g.name(p)).collect();
            let (kind, exhaust) = match &lake.kind {
                LakeKind::RegionalMinimum => ("regmin", String::new()),
                LakeKind::Full(ex) => (
                    "full",
                    ex.iter()
                        .map(|x| format!("({},{})", g.name(x.inside), g.name(x.outside)))
                        .collect::<Vec<_>>()
                        .join(","),
                ),
            };
            out.push_str(&format!(
                "lake {i} level={} kind={kind} nodes={} exhaust={exhaust}\n",
                lake.level,
                nodes.join(",")
            ));
        }
        out
    }
}

impl fmt::Display for LakeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LakeKind::RegionalMinimum => f.write_str("regmin"),
            LakeKind::Full(_) => f.write_str("full"),
        }
    }
}

/// Lakes of a valid edge flooding: components of the partial graph keeping
/// edges with `τ_p = τ_q` and `e_pq ≤ τ_p`, classified as full (some cocycle
/// edge at the lake level leads to a lower node) or regional minima.
pub fn lakes(g: &Graph, tau: &NodeFunction) -> Result<LakePartition> {
    require_valid(g, tau, Semantics::Edge)?;
    let ew = g.edge_weights()?;
    let comps = g.connected_components(|id| {
        let e = g.edge(id);
        tau[e.u] == tau[e.v] && ew[id] <= tau[e.u]
    });
    let mut inside = vec![false; g.node_count()];
    let lakes = comps
        .into_iter()
        .map(|nodes| {
            let level = tau[nodes[0]];
            for &p in &nodes {
                inside[p] = true;
            }
            let mut exhaust = Vec::new();
            for &p in &nodes {
                for &(q, id) in g.neighbors(p) {
                    if !inside[q] && ew[id] == level && tau[q] < level {
                        exhaust.push(Exhaust {
                            edge: id,
                            inside: p,
                            outside: q,
                        });
                    }
                }
            }
            for &p in &nodes {
                inside[p] = false;
            }
            exhaust.sort_by_key(|x| (x.edge, x.inside));
            let kind = if exhaust.is_empty() {
                LakeKind::RegionalMinimum
            } else {
                LakeKind::Full(exhaust)
            };
            Lake { nodes, level, kind }
        })
        .collect();
    Ok(LakePartition { lakes })
}

/// Lakes of a valid node flooding, classified on the derived edge graph.
pub fn node_lakes(g: &Graph, tau: &NodeFunction) -> Result<LakePartition> {
    require_valid(g, tau, Semantics::Node)?;
    lakes(&derive_edge_graph(g)?, tau)
}

fn equal_level_components(g: &Graph, values: &NodeFunction) -> Vec<Vec<NodeId>> {
    g.connected_components(|id| {
        let e = g.edge(id);
        values[e.u] == values[e.v]
    })
}

/// Maximal connected sets of equal ground level.
pub fn flat_zones(g: &Graph) -> Result<Vec<Vec<NodeId>>> {
    Ok(equal_level_components(g, g.ground()?))
}

/// Flat zones of the ground whose outside neighbours are all strictly higher.
pub fn regional_minima(g: &Graph) -> Result<Vec<Vec<NodeId>>> {
    Ok(regional_minima_of(g, g.ground()?))
}

/// Regional minima of an arbitrary node function on `g`.
pub fn regional_minima_of(g: &Graph, values: &NodeFunction) -> Vec<Vec<NodeId>> {
    equal_level_components(g, values)
        .into_iter()
        .filter(|zone| {
            let level = values[zone[0]];
            zone.iter()
                .all(|&p| g.neighbors(p).iter().all(|&(q, _)| values[q] >= level))
        })
        .collect()
}

fn combine(
    g: &Graph,
    tau: &NodeFunction,
    nu: &NodeFunction,
    semantics: Semantics,
    op: fn(&NodeFunction, &NodeFunction) -> Result<NodeFunction>,
) -> Result<NodeFunction> {
    require_valid(g, tau, semantics)?;
    require_valid(g, nu, semantics)?;
    let out = op(tau, nu)?;
    debug_assert!(check_flooding(g, &out, semantics)?.is_valid());
    Ok(out)
}

/// Pointwise join of two floodings; again a flooding.
pub fn flooding_sup(g: &Graph, tau: &NodeFunction, nu: &NodeFunction, semantics: Semantics) -> Result<NodeFunction> {
    combine(g, tau, nu, semantics, NodeFunction::join)
}

/// Pointwise meet of two floodings; again a flooding.
pub fn flooding_inf(g: &Graph, tau: &NodeFunction, nu: &NodeFunction, semantics: Semantics) -> Result<NodeFunction> {
    combine(g, tau, nu, semantics, NodeFunction::meet)
}

/// Same graph with edge weights `e_pq = f_p ∨ f_q`; the ground is kept.
pub fn derive_edge_graph(g: &Graph) -> Result<Graph> {
    g.with_edge_weights(delta_en(g)?)
}
