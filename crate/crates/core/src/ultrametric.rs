//! Flooding distance: the smallest, over all chains joining two nodes, of the
//! highest edge weight along the chain. It is an ultrametric; its closed balls
//! are the lake zones of the graph.

use crate::error::{FloodError, Result};
use crate::funnel::Funnel;
use crate::graph::{EdgeId, Graph, NodeFunction, NodeId};
use crate::weight::Weight;

/// All-pairs flooding distances, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Weight>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, p: NodeId, q: NodeId) -> Weight {
        self.d[p * self.n + q]
    }

    pub fn row(&self, p: NodeId) -> &[Weight] {
        &self.d[p * self.n..(p + 1) * self.n]
    }
}

fn check_node(g: &Graph, p: NodeId) -> Result<()> {
    if p < g.node_count() {
        Ok(())
    } else {
        Err(FloodError::UnknownNode(format!("#{p}")))
    }
}

/// Flooding distance from `source` to every node (`⊥` at the source, `⊤`
/// outside its component), by best-first growth over a funnel.
pub fn flooding_distance_all(g: &Graph, source: NodeId) -> Result<NodeFunction> {
    let ew = g.edge_weights()?;
    check_node(g, source)?;
    let mut dist = NodeFunction::constant(g.node_count(), Weight::Top);
    dist[source] = Weight::Bottom;
    let mut funnel = Funnel::new();
    funnel.push(Weight::Bottom, source);
    while let Some((level, p)) = funnel.pop() {
        if level != dist[p] {
            continue;
        }
        for &(q, e) in g.neighbors(p) {
            let cand = level.join(ew[e]);
            if cand < dist[q] {
                dist[q] = cand;
                funnel.push(cand, q);
            }
        }
    }
    Ok(dist)
}

pub fn flooding_distance(g: &Graph, x: NodeId, y: NodeId) -> Result<Weight> {
    check_node(g, y)?;
    Ok(flooding_distance_all(g, x)?[y])
}

/// All-pairs distances by min-max closure (Floyd–Warshall over `(∧, ∨)`).
pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix> {
    let ew = g.edge_weights()?;
    let n = g.node_count();
    let mut d = vec![Weight::Top; n * n];
    for p in 0..n {
        d[p * n + p] = Weight::Bottom;
    }
    for (id, e) in g.edges().iter().enumerate() {
        let (u, v) = (e.u, e.v);
        d[u * n + v] = d[u * n + v].meet(ew[id]);
        d[v * n + u] = d[u * n + v];
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik == Weight::Top {
                continue;
            }
            for j in 0..n {
                let via = dik.join(d[k * n + j]);
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    Ok(DistanceMatrix { n, d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallKind {
    /// `d(p, q) ≤ ρ`
    Closed,
    /// `d(p, q) < ρ`
    Open,
}

/// Nodes within flooding distance `rho` of `p`, sorted. Nodes in other
/// components are never included, even for `rho = ⊤`.
pub fn ball(g: &Graph, p: NodeId, rho: Weight, kind: BallKind) -> Result<Vec<NodeId>> {
    let dist = flooding_distance_all(g, p)?;
    Ok(g.nodes()
        .filter(|&q| match kind {
            BallKind::Closed => dist[q] <= rho && dist[q] < Weight::Top,
            BallKind::Open => dist[q] < rho,
        })
        .collect())
}

/// Largest flooding distance between two nodes of `set`, measured inside the
/// subgraph induced by `set`. `⊥` for a singleton.
pub fn diameter(g: &Graph, set: &[NodeId]) -> Result<Weight> {
    if set.is_empty() {
        return Err(FloodError::EmptySet);
    }
    g.edge_weights()?;
    let (sub, _) = g.subgraph(set)?;
    if sub.connected_components(|_| true).len() != 1 {
        return Err(FloodError::DisconnectedSet);
    }
    let dm = distance_matrix(&sub)?;
    Ok(Weight::join_all(dm.d.iter().copied()))
}

/// Lowest edge of the cocycle of `set` (first declared among equals), or
/// `None` when the cocycle is empty.
pub fn lowest_cocycle_edge(g: &Graph, set: &[NodeId]) -> Result<Option<(EdgeId, Weight)>> {
    let ew = g.edge_weights()?;
    let mask = g.mask(set)?;
    let inside = mask.iter().filter(|&&b| b).count();
    if inside == 0 {
        return Err(FloodError::EmptySet);
    }
    if inside == g.node_count() {
        return Err(FloodError::FullSet);
    }
    Ok(lowest_cocycle_edge_of_mask(g, ew, &mask, None))
}

/// Lowest edge leaving `mask`, optionally restricted to edges whose far end is
/// in `domain`.
pub(crate) fn lowest_cocycle_edge_of_mask(
    g: &Graph,
    ew: &[Weight],
    mask: &[bool],
    domain: Option<&[bool]>,
) -> Option<(EdgeId, Weight)> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| mask[e.u] != mask[e.v])
        .filter(|(_, e)| domain.is_none_or(|d| d[e.u] && d[e.v]))
        .map(|(id, _)| (id, ew[id]))
        .min_by_key(|&(id, w)| (w, id))
}

/// Nodes reachable from `seeds` through edges accepted by `keep`, staying in
/// `domain` when one is given.
pub(crate) fn reach<F>(g: &Graph, seeds: &[NodeId], keep: F, domain: Option<&[bool]>) -> Vec<bool>
where
    F: Fn(EdgeId) -> bool,
{
    let mut seen = vec![false; g.node_count()];
    let mut stack: Vec<NodeId> = Vec::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(p) = stack.pop() {
        for &(q, e) in g.neighbors(p) {
            if !seen[q] && domain.is_none_or(|d| d[q]) && keep(e) {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

/// Minimum spanning forest by Prim's algorithm, grown from `root` (default:
/// the first node) and then from the first node of each remaining component.
/// Ties go to the edge declared first. Tree edges keep declaration order.
pub fn mst(g: &Graph, root: Option<NodeId>) -> Result<Graph> {
    let ew = g.edge_weights()?;
    let n = g.node_count();
    if let Some(r) = root {
        check_node(g, r)?;
    }
    let mut in_tree = vec![false; n];
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    let starts = root.into_iter().chain(0..n);
    let mut funnel: Funnel<Weight, (EdgeId, NodeId)> = Funnel::new();
    for start in starts {
        if in_tree[start] {
            continue;
        }
        in_tree[start] = true;
        push_cocycle(g, ew, start, &in_tree, &mut funnel);
        while let Some((_, (e, s))) = funnel.pop() {
            if in_tree[s] {
                continue;
            }
            in_tree[s] = true;
            tree_edges.push(e);
            push_cocycle(g, ew, s, &in_tree, &mut funnel);
        }
    }
    tree_edges.sort_unstable();
    g.partial_graph(&tree_edges)
}

fn push_cocycle(
    g: &Graph,
    ew: &[Weight],
    p: NodeId,
    in_tree: &[bool],
    funnel: &mut Funnel<Weight, (EdgeId, NodeId)>,
) {
    for &(q, e) in g.neighbors(p) {
        if !in_tree[q] {
            funnel.push(ew[e], (e, q));
        }
    }
}
