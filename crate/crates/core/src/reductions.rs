//! Node/edge adjunction operators, flat-zone contraction and local flooding.

use crate::error::{FloodError, Result};
use crate::funnel::Funnel;
use crate::graph::{EdgeId, Graph, NodeFunction, NodeId};
use crate::hydrostatics::{flat_zones, is_edge_flooding, regional_minima};
use crate::solvers::{check_ceiling_above_ground, core_expanding_flood};
use crate::ultrametric::{lowest_cocycle_edge_of_mask, reach};
use crate::weight::Weight;

/// Edge weights `e_pq = f_p ∨ f_q` for an arbitrary node function.
pub fn delta_en_of(g: &Graph, f: &NodeFunction) -> Result<Vec<Weight>> {
    f.check_domain(g.node_count())?;
    Ok(g.edges().iter().map(|e| f[e.u].join(f[e.v])).collect())
}

/// Dilation of the ground onto the edges.
pub fn delta_en(g: &Graph) -> Result<Vec<Weight>> {
    delta_en_of(g, g.ground()?)
}

/// Lowest incident edge per node; `⊤` for isolated nodes.
pub fn eps_ne_of(g: &Graph, e: &[Weight]) -> Result<NodeFunction> {
    if e.len() != g.edge_count() {
        return Err(FloodError::DomainMismatch {
            expected: g.edge_count(),
            found: e.len(),
        });
    }
    Ok(g
        .nodes()
        .map(|p| Weight::meet_all(g.neighbors(p).iter().map(|&(_, id)| e[id])))
        .collect())
}

/// Erosion of the edge weights onto the nodes.
pub fn eps_ne(g: &Graph) -> Result<NodeFunction> {
    eps_ne_of(g, g.edge_weights()?)
}

/// Opening on edges, `δ_en ε_ne`.
pub fn gamma_e_of(g: &Graph, e: &[Weight]) -> Result<Vec<Weight>> {
    delta_en_of(g, &eps_ne_of(g, e)?)
}

pub fn gamma_e(g: &Graph) -> Result<Vec<Weight>> {
    gamma_e_of(g, g.edge_weights()?)
}

/// Closing on nodes, `ε_ne δ_en`: every regional minimum is filled up to its
/// lowest neighbour.
pub fn phi_n_of(g: &Graph, f: &NodeFunction) -> Result<NodeFunction> {
    eps_ne_of(g, &delta_en_of(g, f)?)
}

pub fn phi_n(g: &Graph) -> Result<NodeFunction> {
    phi_n_of(g, g.ground()?)
}

/// Each node flooded to its lowest incident edge. Always a valid edge
/// flooding.
pub fn waterfall_flooding(g: &Graph) -> Result<NodeFunction> {
    let eta = eps_ne(g)?;
    debug_assert!(is_edge_flooding(g, &eta)?.is_valid());
    Ok(eta)
}

/// Correspondence between the nodes of a graph and the super-nodes of its
/// contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    /// Super-node of every original node.
    pub forward: Vec<NodeId>,
    /// Members of every super-node, sorted.
    pub backward: Vec<Vec<NodeId>>,
}

impl ContractionMap {
    fn from_blocks(n: usize, backward: Vec<Vec<NodeId>>) -> Self {
        let mut forward = vec![0; n];
        for (s, block) in backward.iter().enumerate() {
            for &p in block {
                forward[p] = s;
            }
        }
        ContractionMap { forward, backward }
    }

    /// Pulls a function on super-nodes back to the original nodes.
    pub fn expand(&self, tau: &NodeFunction) -> Result<NodeFunction> {
        tau.check_domain(self.backward.len())?;
        Ok(self.forward.iter().map(|&s| tau[s]).collect())
    }

    /// Meet of a function over each block.
    pub fn reduce_meet(&self, values: &NodeFunction) -> Result<NodeFunction> {
        values.check_domain(self.forward.len())?;
        Ok(self
            .backward
            .iter()
            .map(|b| Weight::meet_all(b.iter().map(|&p| values[p])))
            .collect())
    }
}

/// Contracted graph together with the contracted ceiling, if one was given.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Graph,
    pub ceiling: Option<NodeFunction>,
    pub map: ContractionMap,
}

/// Quotient graph on `blocks`: super-nodes named after their first member,
/// ground taken from that member, parallel edges merged keeping the lowest
/// weight. Edges follow the declaration order of their first representative,
/// restricted to `edge_filter`.
fn quotient<F>(g: &Graph, map: &ContractionMap, edge_filter: F) -> Result<Graph>
where
    F: Fn(EdgeId) -> bool,
{
    let names: Vec<&str> = map.backward.iter().map(|b| g.name(b[0])).collect();
    let ground = g
        .ground()
        .ok()
        .map(|f| map.backward.iter().map(|b| f[b[0]]).collect::<Vec<_>>());
    let ew = g.edge_weights().ok();
    let mut slot = std::collections::HashMap::new();
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    let mut weights: Vec<Weight> = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let (a, b) = (map.forward[e.u], map.forward[e.v]);
        if a == b || !edge_filter(id) {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let wgt = ew.map_or(Weight::Bottom, |ew| ew[id]);
        match slot.get(&key) {
            Some(&i) => {
                let cur: &mut Weight = &mut weights[i];
                *cur = cur.meet(wgt);
            }
            None => {
                slot.insert(key, pairs.len());
                pairs.push((names[a], names[b]));
                weights.push(wgt);
            }
        }
    }
    Graph::build(names.iter().copied(), &pairs, ground, ew.map(|_| weights))
}

/// Merges every flat zone of the ground into one super-node. The ceiling of a
/// super-node is the meet of its members' ceilings.
pub fn contract_flat_zones(g: &Graph, ceiling: Option<&NodeFunction>) -> Result<Contraction> {
    let map = ContractionMap::from_blocks(g.node_count(), flat_zones(g)?);
    let graph = quotient(g, &map, |_| true)?;
    let ceiling = ceiling.map(|c| map.reduce_meet(c)).transpose()?;
    Ok(Contraction { graph, ceiling, map })
}

/// Pulls a flooding of the contracted graph back to the original nodes.
pub fn expand(map: &ContractionMap, tau: &NodeFunction) -> Result<NodeFunction> {
    map.expand(tau)
}

/// Prim's algorithm on `e = δ_en f` that contracts an edge joining two nodes
/// of equal ground instead of adding it to the tree. At equal weight,
/// contractions are taken first, so every super-node is one flat zone.
/// Returns the spanning forest over super-nodes.
pub fn mst_with_contraction(g: &Graph) -> Result<(Graph, ContractionMap)> {
    let f = g.ground()?;
    let ew = delta_en(g)?;
    let n = g.node_count();
    let mut root: Vec<NodeId> = (0..n).collect();
    let mut in_tree = vec![false; n];
    let mut tree_edges = Vec::new();
    let mut funnel: Funnel<(Weight, bool), (EdgeId, NodeId, NodeId)> = Funnel::new();
    let push = |p: NodeId, in_tree: &[bool], funnel: &mut Funnel<_, _>| {
        for &(q, e) in g.neighbors(p) {
            if !in_tree[q] {
                funnel.push((ew[e], f[p] != f[q]), (e, p, q));
            }
        }
    };
    for start in 0..n {
        if in_tree[start] {
            continue;
        }
        in_tree[start] = true;
        push(start, &in_tree, &mut funnel);
        while let Some(((_, is_tree_edge), (e, q, s))) = funnel.pop() {
            if in_tree[s] {
                continue;
            }
            in_tree[s] = true;
            if is_tree_edge {
                tree_edges.push(e);
            } else {
                root[s] = root[q];
            }
            push(s, &in_tree, &mut funnel);
        }
    }
    let mut blocks: Vec<Vec<NodeId>> = Vec::new();
    let mut block_of_root = vec![usize::MAX; n];
    for (p, &r) in root.iter().enumerate() {
        if block_of_root[r] == usize::MAX {
            block_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of_root[r]].push(p);
    }
    blocks.sort_by_key(|b| b[0]);
    let map = ContractionMap::from_blocks(n, blocks);
    let weighted = g.with_edge_weights(ew)?;
    let mut keep = vec![false; g.edge_count()];
    for e in tree_edges {
        keep[e] = true;
    }
    let tree = quotient(&weighted, &map, |id| keep[id])?;
    Ok((tree, map))
}

/// Dominated flooding of a node-weighted graph through contraction and
/// closing: contract flat zones, close the ground with `φ_n`, flood the
/// closed ground under `ω ∨ φ_n f`, take the meet with `ω` and expand.
pub fn contract_close_flood(g: &Graph, omega: &NodeFunction) -> Result<NodeFunction> {
    check_ceiling_above_ground(g, omega)?;
    let k = contract_flat_zones(g, Some(omega))?;
    let ceiling = k.ceiling.expect("ceiling was given");
    let closed = phi_n(&k.graph)?;
    // A contracted regional minimum is a single node; when its ceiling lies
    // below the closing it is flooded exactly to its ceiling.
    let mut preset = vec![false; k.graph.node_count()];
    for zone in regional_minima(&k.graph)? {
        let p = zone[0];
        if ceiling[p] <= closed[p] {
            preset[p] = true;
        }
    }
    let lifted = ceiling.join(&closed)?;
    let kg = k.graph.with_ground(closed)?;
    let chi = core_expanding_flood(&kg, &lifted)?.tau;
    let tau: NodeFunction = k
        .graph
        .nodes()
        .map(|p| {
            if preset[p] {
                ceiling[p]
            } else {
                chi[p].meet(ceiling[p])
            }
        })
        .collect();
    debug_assert!(k
        .graph
        .nodes()
        .all(|p| !preset[p] || chi[p].meet(ceiling[p]) == ceiling[p]));
    k.map.expand(&tau)
}

/// Nodes around `p` that share its flooding level, which is at most their
/// lowest outgoing edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalLake {
    pub level: Weight,
    pub nodes: Vec<NodeId>,
}

/// Best-first growth of closed balls around one node on `e = δ_en f`.
struct BallGrower<'a> {
    g: &'a Graph,
    ew: &'a [Weight],
    inside: Vec<bool>,
    members: Vec<NodeId>,
    frontier: Funnel<Weight, NodeId>,
    diam: Weight,
}

impl<'a> BallGrower<'a> {
    fn new(g: &'a Graph, ew: &'a [Weight], p: NodeId) -> Self {
        let mut b = BallGrower {
            g,
            ew,
            inside: vec![false; g.node_count()],
            members: Vec::new(),
            frontier: Funnel::new(),
            diam: Weight::Bottom,
        };
        b.admit(p);
        b
    }

    fn admit(&mut self, p: NodeId) {
        self.inside[p] = true;
        self.members.push(p);
        for &(q, e) in self.g.neighbors(p) {
            if !self.inside[q] {
                self.frontier.push(self.ew[e], q);
            }
        }
    }

    /// Weight of the lowest cocycle edge, `⊤` if none.
    fn lowest_exit(&mut self) -> Weight {
        while let Some((w, &q)) = self.frontier.peek() {
            if !self.inside[q] {
                return w;
            }
            self.frontier.pop();
        }
        Weight::Top
    }

    /// Grows to the closed ball of radius `rho`.
    fn grow_to(&mut self, rho: Weight) {
        while self.lowest_exit() <= rho {
            let (w, q) = self.frontier.pop().expect("exit exists");
            self.diam = self.diam.join(w);
            self.admit(q);
        }
    }
}

/// Finds the flooding level of `p` by growing balls around it, without
/// flooding the rest of the graph. Also returns a set of nodes known to share
/// that level.
pub fn lake_containing(g: &Graph, omega: &NodeFunction, p: NodeId) -> Result<LocalLake> {
    check_ceiling_above_ground(g, omega)?;
    if p >= g.node_count() {
        return Err(FloodError::UnknownNode(format!("#{p}")));
    }
    let f = g.ground()?;
    let ew = delta_en(g)?;
    let mut ball = BallGrower::new(g, &ew, p);
    ball.grow_to(f[p]);
    let ceiling_min = |b: &BallGrower| Weight::meet_all(b.members.iter().map(|&q| omega[q]));
    if ceiling_min(&ball) <= f[p] {
        return Ok(LocalLake {
            level: f[p],
            nodes: vec![p],
        });
    }
    loop {
        let low = ceiling_min(&ball);
        let exit = ball.lowest_exit();
        if low <= exit {
            let mut nodes = ball.members.clone();
            nodes.sort_unstable();
            return Ok(LocalLake { level: low, nodes });
        }
        let before = ball.members.clone();
        ball.grow_to(exit);
        if ceiling_min(&ball) <= ball.diam {
            // The previous ball drains over its lowest exit into a lower
            // ceiling reached at exactly that level.
            let mut nodes = before;
            nodes.sort_unstable();
            return Ok(LocalLake {
                level: ball.diam,
                nodes,
            });
        }
    }
}

/// Flooding level of a single node under `ω`.
pub fn local_flood(g: &Graph, omega: &NodeFunction, p: NodeId) -> Result<Weight> {
    Ok(lake_containing(g, omega, p)?.level)
}

/// Propagates flooding levels upstream of `lake` until the passes exceed
/// `mu`. Every node of `lake` must carry a level no higher than the lowest
/// edge leaving it. A side valley whose ceiling dips below its entry pass is
/// flooded from its lowest ceiling node (first declared among equals) and
/// processed recursively. Returns the levels of the newly reached nodes.
pub fn up_hill(
    g: &Graph,
    omega: &NodeFunction,
    lake: &[NodeId],
    mu: Weight,
) -> Result<Vec<Option<Weight>>> {
    check_ceiling_above_ground(g, omega)?;
    let ew = delta_en(g)?;
    let start = g.mask(lake)?;
    let domain = vec![true; g.node_count()];
    let mut out = vec![None; g.node_count()];
    climb(g, &ew, omega, &domain, start, mu, &mut out);
    Ok(out)
}

fn climb(
    g: &Graph,
    ew: &[Weight],
    omega: &NodeFunction,
    domain: &[bool],
    mut inside: Vec<bool>,
    mu: Weight,
    out: &mut [Option<Weight>],
) {
    loop {
        let Some((_, pass)) = lowest_cocycle_edge_of_mask(g, ew, &inside, Some(domain)) else {
            return;
        };
        if pass > mu {
            return;
        }
        let seeds: Vec<NodeId> = g.nodes().filter(|&q| inside[q]).collect();
        let reached = reach(g, &seeds, |e| ew[e] <= pass, Some(domain));
        let fresh: Vec<bool> = g.nodes().map(|q| reached[q] && !inside[q]).collect();
        let mut done = vec![false; g.node_count()];
        for q0 in g.nodes() {
            if !fresh[q0] || done[q0] {
                continue;
            }
            let zone = reach(g, &[q0], |e| ew[e] <= pass, Some(&fresh));
            let members: Vec<NodeId> = g.nodes().filter(|&q| zone[q]).collect();
            for &q in &members {
                done[q] = true;
            }
            let lowest = members
                .iter()
                .copied()
                .min_by_key(|&q| (omega[q], q))
                .expect("zone is nonempty");
            let level = omega[lowest];
            if level >= pass {
                for &q in &members {
                    out[q] = Some(pass);
                }
            } else {
                let basin = reach(g, &[lowest], |e| ew[e] <= level, Some(&zone));
                for q in g.nodes().filter(|&q| basin[q]) {
                    out[q] = Some(level);
                }
                climb(g, ew, omega, &zone, basin, pass, out);
            }
        }
        inside = reached;
    }
}
