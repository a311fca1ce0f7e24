//! Immutable undirected graphs with optional ground levels and edge weights.

use std::collections::{HashMap, HashSet};
use std::ops::{Deref, DerefMut, Index, IndexMut};
use std::slice::SliceIndex;

use crate::error::{FloodError, Result};
use crate::weight::Weight;

pub type NodeId = usize;
pub type EdgeId = usize;

/// A total mapping from the nodes of a graph to levels.
///
/// Used for ground levels, floodings, ceilings and waterfall levels alike.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NodeFunction(Vec<Weight>);

impl NodeFunction {
    pub fn new(values: Vec<Weight>) -> Self {
        NodeFunction(values)
    }

    pub fn constant(n: usize, value: Weight) -> Self {
        NodeFunction(vec![value; n])
    }

    pub fn into_inner(self) -> Vec<Weight> {
        self.0
    }

    /// Pointwise join.
    pub fn join(&self, other: &NodeFunction) -> Result<NodeFunction> {
        self.zip_with(other, Weight::join)
    }

    /// Pointwise meet.
    pub fn meet(&self, other: &NodeFunction) -> Result<NodeFunction> {
        self.zip_with(other, Weight::meet)
    }

    /// `self ≤ other` at every node.
    pub fn le(&self, other: &NodeFunction) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(a, b)| a <= b)
    }

    pub fn check_domain(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(FloodError::DomainMismatch {
                expected: n,
                found: self.len(),
            })
        }
    }

    fn zip_with(&self, other: &NodeFunction, op: fn(Weight, Weight) -> Weight) -> Result<NodeFunction> {
        other.check_domain(self.len())?;
        Ok(NodeFunction(
            self.iter().zip(other.iter()).map(|(&a, &b)| op(a, b)).collect(),
        ))
    }
}

impl From<Vec<Weight>> for NodeFunction {
    fn from(values: Vec<Weight>) -> Self {
        NodeFunction(values)
    }
}

impl FromIterator<Weight> for NodeFunction {
    fn from_iter<I: IntoIterator<Item = Weight>>(iter: I) -> Self {
        NodeFunction(iter.into_iter().collect())
    }
}

impl Deref for NodeFunction {
    type Target = [Weight];
    fn deref(&self) -> &[Weight] {
        &self.0
    }
}

impl DerefMut for NodeFunction {
    fn deref_mut(&mut self) -> &mut [Weight] {
        &mut self.0
    }
}

impl<I: SliceIndex<[Weight]>> Index<I> for NodeFunction {
    type Output = I::Output;
    fn index(&self, i: I) -> &I::Output {
        &self.0[i]
    }
}

impl<I: SliceIndex<[Weight]>> IndexMut<I> for NodeFunction {
    fn index_mut(&mut self, i: I) -> &mut I::Output {
        &mut self.0[i]
    }
}

/// An undirected edge as declared: `u` is the first endpoint written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
}

impl Edge {
    /// The endpoint opposite to `p`.
    #[inline]
    pub fn other(self, p: NodeId) -> NodeId {
        if self.u == p {
            self.v
        } else {
            self.u
        }
    }

    fn key(self) -> (NodeId, NodeId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Undirected graph, fixed after construction.
///
/// Nodes and edges keep their declaration order; every algorithm in the crate
/// iterates in that order, which makes tie-breaking reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
    ground: Option<NodeFunction>,
    edge_weights: Option<Vec<Weight>>,
}

impl Graph {
    /// Builds a graph from named nodes and named edge endpoints.
    pub fn build<N, S, A, B>(
        nodes: N,
        edges: &[(A, B)],
        ground: Option<Vec<Weight>>,
        edge_weights: Option<Vec<Weight>>,
    ) -> Result<Graph>
    where
        N: IntoIterator<Item = S>,
        S: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let names: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(FloodError::DuplicateNode(name.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| FloodError::DanglingEndpoint(s.to_string()))
            };
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::assemble(names, index, &pairs, ground, edge_weights)
    }

    /// Builds a graph on nodes `0..n`, named by their index.
    pub fn from_indices(
        n: usize,
        edges: &[(NodeId, NodeId)],
        ground: Option<Vec<Weight>>,
        edge_weights: Option<Vec<Weight>>,
    ) -> Result<Graph> {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(FloodError::DanglingEndpoint(format!("#{x}")));
                }
            }
        }
        Self::assemble(names, index, edges, ground, edge_weights)
    }

    fn assemble(
        names: Vec<String>,
        index: HashMap<String, NodeId>,
        pairs: &[(NodeId, NodeId)],
        ground: Option<Vec<Weight>>,
        edge_weights: Option<Vec<Weight>>,
    ) -> Result<Graph> {
        let n = names.len();
        let mut seen = HashSet::with_capacity(pairs.len());
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(pairs.len());
        for (id, &(u, v)) in pairs.iter().enumerate() {
            if u == v {
                return Err(FloodError::SelfLoop(names[u].clone()));
            }
            let edge = Edge { u, v };
            if !seen.insert(edge.key()) {
                return Err(FloodError::DuplicateEdge(names[u].clone(), names[v].clone()));
            }
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
            edges.push(edge);
        }
        let ground = match ground {
            Some(f) => {
                let f = NodeFunction::from(f);
                f.check_domain(n)?;
                Some(f)
            }
            None => None,
        };
        if let Some(ew) = &edge_weights {
            if ew.len() != edges.len() {
                return Err(FloodError::DomainMismatch {
                    expected: edges.len(),
                    found: ew.len(),
                });
            }
            for (e, w) in edges.iter().zip(ew) {
                if !w.is_finite() {
                    return Err(FloodError::NonFiniteEdgeWeight(
                        names[e.u].clone(),
                        names[e.v].clone(),
                    ));
                }
            }
        }
        Ok(Graph {
            names,
            index,
            edges,
            adjacency,
            ground,
            edge_weights,
        })
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.names.len()
    }

    pub fn name(&self, p: NodeId) -> &str {
        &self.names[p]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_id(&self, name: &str) -> Result<NodeId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| FloodError::UnknownNode(name.to_string()))
    }

    /// Resolves a list of names to node ids.
    pub fn node_ids<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<NodeId>> {
        names.iter().map(|s| self.node_id(s.as_ref())).collect()
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge between `p` and `q`, if any.
    pub fn find_edge(&self, p: NodeId, q: NodeId) -> Option<EdgeId> {
        self.adjacency[p]
            .iter()
            .find(|&&(r, _)| r == q)
            .map(|&(_, e)| e)
    }

    /// Neighbors of `p` with the connecting edge, in edge declaration order.
    pub fn neighbors(&self, p: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[p]
    }

    pub fn has_ground(&self) -> bool {
        self.ground.is_some()
    }

    pub fn has_edge_weights(&self) -> bool {
        self.edge_weights.is_some()
    }

    pub fn ground(&self) -> Result<&NodeFunction> {
        self.ground.as_ref().ok_or(FloodError::MissingGround)
    }

    pub fn edge_weights(&self) -> Result<&[Weight]> {
        self.edge_weights
            .as_deref()
            .ok_or(FloodError::MissingEdgeWeights)
    }

    /// Same structure with the given ground levels.
    pub fn with_ground(&self, ground: NodeFunction) -> Result<Graph> {
        ground.check_domain(self.node_count())?;
        let mut g = self.clone();
        g.ground = Some(ground);
        Ok(g)
    }

    pub fn without_ground(&self) -> Graph {
        let mut g = self.clone();
        g.ground = None;
        g
    }

    /// Same structure with the given edge weights.
    pub fn with_edge_weights(&self, weights: Vec<Weight>) -> Result<Graph> {
        let pairs: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        Self::assemble(
            self.names.clone(),
            self.index.clone(),
            &pairs,
            self.ground.as_ref().map(|f| f.to_vec()),
            Some(weights),
        )
    }

    pub fn without_edge_weights(&self) -> Graph {
        let mut g = self.clone();
        g.edge_weights = None;
        g
    }

    pub(crate) fn mask(&self, set: &[NodeId]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.node_count()];
        for &p in set {
            if p >= mask.len() {
                return Err(FloodError::UnknownNode(format!("#{p}")));
            }
            mask[p] = true;
        }
        Ok(mask)
    }

    /// Edges with exactly one endpoint in `set`, in declaration order.
    pub fn cocycle(&self, set: &[NodeId]) -> Result<Vec<EdgeId>> {
        let mask = self.mask(set)?;
        Ok(self.cocycle_of_mask(&mask))
    }

    pub(crate) fn cocycle_of_mask(&self, mask: &[bool]) -> Vec<EdgeId> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| mask[e.u] != mask[e.v])
            .map(|(id, _)| id)
            .collect()
    }

    /// Connected components of the partial graph keeping the edges accepted by
    /// `keep`. Components are listed by their smallest node, each sorted.
    pub fn connected_components<F>(&self, keep: F) -> Vec<Vec<NodeId>>
    where
        F: Fn(EdgeId) -> bool,
    {
        let mut comp = vec![usize::MAX; self.node_count()];
        let mut out: Vec<Vec<NodeId>> = Vec::new();
        let mut stack = Vec::new();
        for start in self.nodes() {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            comp[start] = c;
            stack.push(start);
            let mut members = Vec::new();
            while let Some(p) = stack.pop() {
                members.push(p);
                for &(q, e) in &self.adjacency[p] {
                    if comp[q] == usize::MAX && keep(e) {
                        comp[q] = c;
                        stack.push(q);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Subgraph induced by `set`, keeping weights. Nodes keep their relative
    /// order; the second value maps new ids to original ids.
    pub fn subgraph(&self, set: &[NodeId]) -> Result<(Graph, Vec<NodeId>)> {
        let mask = self.mask(set)?;
        let kept: Vec<NodeId> = self.nodes().filter(|&p| mask[p]).collect();
        let mut new_id = vec![usize::MAX; self.node_count()];
        for (i, &p) in kept.iter().enumerate() {
            new_id[p] = i;
        }
        let mut pairs = Vec::new();
        let mut weights = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if mask[e.u] && mask[e.v] {
                pairs.push((new_id[e.u], new_id[e.v]));
                if let Some(ew) = &self.edge_weights {
                    weights.push(ew[id]);
                }
            }
        }
        let names: Vec<String> = kept.iter().map(|&p| self.names[p].clone()).collect();
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let ground = self
            .ground
            .as_ref()
            .map(|f| kept.iter().map(|&p| f[p]).collect());
        let g = Self::assemble(
            names,
            index,
            &pairs,
            ground,
            self.edge_weights.as_ref().map(|_| weights),
        )?;
        Ok((g, kept))
    }

    /// Same nodes, only the listed edges (kept in declaration order).
    pub fn partial_graph(&self, edge_set: &[EdgeId]) -> Result<Graph> {
        let mut keep = vec![false; self.edge_count()];
        for &e in edge_set {
            if e >= keep.len() {
                return Err(FloodError::UnknownEdge(e));
            }
            keep[e] = true;
        }
        let mut pairs = Vec::new();
        let mut weights = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if keep[id] {
                pairs.push((e.u, e.v));
                if let Some(ew) = &self.edge_weights {
                    weights.push(ew[id]);
                }
            }
        }
        Self::assemble(
            self.names.clone(),
            self.index.clone(),
            &pairs,
            self.ground.as_ref().map(|f| f.to_vec()),
            self.edge_weights.as_ref().map(|_| weights),
        )
    }

    /// Display helper: `(u,v)` with node names.
    pub fn edge_label(&self, id: EdgeId) -> String {
        let e = self.edges[id];
        format!("({},{})", self.names[e.u], self.names[e.v])
    }
}

/// Raster connectivity for [`grid_graph`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Connectivity {
    #[default]
    Four,
    Eight,
}

impl TryFrom<u32> for Connectivity {
    type Error = FloodError;
    fn try_from(v: u32) -> Result<Self> {
        match v {
            4 => Ok(Connectivity::Four),
            8 => Ok(Connectivity::Eight),
            other => Err(FloodError::Connectivity(other)),
        }
    }
}

/// Row-major 2-D array of levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub data: Vec<Weight>,
}

impl Raster {
    pub fn new(width: usize, height: usize, data: Vec<Weight>) -> Result<Raster> {
        if data.len() != width * height {
            return Err(FloodError::DomainMismatch {
                expected: width * height,
                found: data.len(),
            });
        }
        Ok(Raster {
            width,
            height,
            data,
        })
    }

    /// A single-row raster.
    pub fn row(values: &[u64]) -> Raster {
        Raster {
            width: values.len(),
            height: 1,
            data: values.iter().map(|&v| Weight::Finite(v)).collect(),
        }
    }
}

/// Pixel graph of a raster: one node per pixel (row-major, named `r<row>c<col>`),
/// ground = pixel value.
pub fn grid_graph(raster: &Raster, connectivity: Connectivity) -> Result<Graph> {
    let (w, h) = (raster.width, raster.height);
    if w == 0 || h == 0 {
        return Err(FloodError::EmptyRaster);
    }
    let at = |r: usize, c: usize| r * w + c;
    let mut pairs = Vec::new();
    for r in 0..h {
        for c in 0..w {
            let p = at(r, c);
            if c + 1 < w {
                pairs.push((p, at(r, c + 1)));
            }
            if r + 1 < h {
                if connectivity == Connectivity::Eight && c > 0 {
                    pairs.push((p, at(r + 1, c - 1)));
                }
                pairs.push((p, at(r + 1, c)));
                if connectivity == Connectivity::Eight && c + 1 < w {
                    pairs.push((p, at(r + 1, c + 1)));
                }
            }
        }
    }
    let names: Vec<String> = (0..h)
        .flat_map(|r| (0..w).map(move |c| format!("r{r}c{c}")))
        .collect();
    let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Graph::assemble(names, index, &pairs, Some(raster.data.clone()), None)
}
