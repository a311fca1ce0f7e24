//! Dendrograms: families of node sets that are pairwise nested or disjoint,
//! each carrying a diameter. The lake dendrogram of an edge-weighted graph is
//! the family of closed balls of its flooding distance.

use std::fmt;

use crate::error::{FloodError, Result};
use crate::graph::{Graph, NodeFunction, NodeId};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    /// Sorted leaf indices.
    pub leaves: Vec<NodeId>,
    pub diam: Weight,
    pub father: Option<usize>,
    pub children: Vec<usize>,
}

/// Clusters `0..n` are the leaves, in leaf order; internal clusters follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dendrogram {
    names: Vec<String>,
    clusters: Vec<Cluster>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Summits,
    Leaves,
    /// Strict ancestors, nearest first.
    Pred,
    ImPred,
    /// Strict descendants.
    Succ,
    ImSucc,
    /// Clusters hanging from a strict ancestor other than the father, and
    /// not themselves ancestors.
    Uncles,
    /// Other children of the father.
    Brothers,
}

/// First pair of sets that overlap without one containing the other.
pub fn find_overlap<S: AsRef<[NodeId]>>(family: &[S]) -> Option<(usize, usize)> {
    let sorted: Vec<Vec<NodeId>> = family
        .iter()
        .map(|s| {
            let mut v = s.as_ref().to_vec();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let (a, b) = (&sorted[i], &sorted[j]);
            let common = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
            if common > 0 && common < a.len() && common < b.len() {
                return Some((i, j));
            }
        }
    }
    None
}

/// True iff every two sets of the family are nested or disjoint.
pub fn is_dendrogram<S: AsRef<[NodeId]>>(family: &[S]) -> bool {
    find_overlap(family).is_none()
}

impl Dendrogram {
    /// Builds a dendrogram over `names` from the non-leaf clusters and their
    /// diameters. Singletons are implicit leaves of diameter `⊥`; a family
    /// member equal to a singleton must carry `⊥`.
    pub fn from_family(names: Vec<String>, family: &[(Vec<NodeId>, Weight)]) -> Result<Dendrogram> {
        let n = names.len();
        let mut sets: Vec<(Vec<NodeId>, Weight)> = (0..n).map(|p| (vec![p], Weight::Bottom)).collect();
        for (set, diam) in family {
            let mut s = set.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(FloodError::EmptySet);
            }
            if let Some(&bad) = s.iter().find(|&&p| p >= n) {
                return Err(FloodError::UnknownNode(format!("#{bad}")));
            }
            if s.len() == 1 {
                if *diam != Weight::Bottom {
                    return Err(FloodError::DiameterOrder {
                        child: s[0],
                        father: s[0],
                    });
                }
                continue;
            }
            sets.push((s, *diam));
        }
        let leaf_sets: Vec<&Vec<NodeId>> = sets.iter().map(|(s, _)| s).collect();
        if let Some((i, j)) = find_overlap(&leaf_sets) {
            return Err(FloodError::NotNested(i, j));
        }
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].0 == sets[j].0 {
                    return Err(FloodError::DuplicateCluster(i, j));
                }
            }
        }
        let mut clusters: Vec<Cluster> = sets
            .into_iter()
            .map(|(leaves, diam)| Cluster {
                leaves,
                diam,
                father: None,
                children: Vec::new(),
            })
            .collect();
        for i in 0..clusters.len() {
            let father = (0..clusters.len())
                .filter(|&j| {
                    j != i
                        && clusters[j].leaves.len() > clusters[i].leaves.len()
                        && clusters[j].leaves.binary_search(&clusters[i].leaves[0]).is_ok()
                })
                .min_by_key(|&j| clusters[j].leaves.len());
            clusters[i].father = father;
        }
        for i in 0..clusters.len() {
            if let Some(f) = clusters[i].father {
                if clusters[f].diam <= clusters[i].diam {
                    return Err(FloodError::DiameterOrder { child: i, father: f });
                }
                clusters[f].children.push(i);
            }
        }
        Ok(Dendrogram { names, clusters })
    }

    /// Same as [`Dendrogram::from_family`] with clusters given by leaf names.
    pub fn from_named<S: AsRef<str>>(leaves: &[S], family: &[(Vec<S>, Weight)]) -> Result<Dendrogram> {
        let names: Vec<String> = leaves.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup = |s: &S| {
            names
                .iter()
                .position(|n| n == s.as_ref())
                .ok_or_else(|| FloodError::UnknownNode(s.as_ref().to_string()))
        };
        let family = family
            .iter()
            .map(|(set, d)| Ok((set.iter().map(lookup).collect::<Result<Vec<_>>>()?, *d)))
            .collect::<Result<Vec<_>>>()?;
        Dendrogram::from_family(names, &family)
    }

    pub fn leaf_count(&self) -> usize {
        self.names.len()
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn cluster(&self, id: usize) -> Result<&Cluster> {
        self.clusters.get(id).ok_or(FloodError::UnknownCluster(id))
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn leaf_name(&self, p: NodeId) -> &str {
        &self.names[p]
    }

    /// Cluster whose leaf set is exactly `set`, if any.
    pub fn find(&self, set: &[NodeId]) -> Option<usize> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        self.clusters.iter().position(|c| c.leaves == s)
    }

    /// Every cluster as (sorted leaves, diameter), sorted; two dendrograms
    /// over the same leaves are equal iff their families are.
    pub fn family(&self) -> Vec<(Vec<NodeId>, Weight)> {
        let mut f: Vec<_> = self.clusters.iter().map(|c| (c.leaves.clone(), c.diam)).collect();
        f.sort();
        f
    }

    fn ancestors(&self, a: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.clusters[a].father;
        while let Some(f) = cur {
            out.push(f);
            cur = self.clusters[f].father;
        }
        out
    }

    fn descendants(&self, a: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = self.clusters[a].children.clone();
        while let Some(c) = stack.pop() {
            out.push(c);
            stack.extend(self.clusters[c].children.iter().copied());
        }
        out.sort_unstable();
        out
    }

    /// Evaluates a relation. `Summits` and `Leaves` ignore `a`.
    pub fn query(&self, relation: Relation, a: usize) -> Result<Vec<usize>> {
        match relation {
            Relation::Summits => {
                return Ok((0..self.len()).filter(|&i| self.clusters[i].father.is_none()).collect())
            }
            Relation::Leaves => return Ok((0..self.leaf_count()).collect()),
            _ => {}
        }
        let c = self.cluster(a)?;
        Ok(match relation {
            Relation::Pred => self.ancestors(a),
            Relation::ImPred => c.father.into_iter().collect(),
            Relation::Succ => self.descendants(a),
            Relation::ImSucc => c.children.clone(),
            Relation::Brothers => match c.father {
                Some(f) => self.clusters[f].children.iter().copied().filter(|&b| b != a).collect(),
                None => Vec::new(),
            },
            Relation::Uncles => {
                let pred = self.ancestors(a);
                let mut out: Vec<usize> = pred
                    .iter()
                    .filter(|&&x| Some(x) != c.father)
                    .flat_map(|&x| self.clusters[x].children.iter().copied())
                    .filter(|b| !pred.contains(b) && *b != a)
                    .collect();
                out.sort_unstable();
                out
            }
            Relation::Summits | Relation::Leaves => unreachable!(),
        })
    }

    /// Minimum of a leaf function over every cluster.
    pub fn cluster_min(&self, leaf_values: &NodeFunction) -> Result<Vec<Weight>> {
        leaf_values.check_domain(self.leaf_count())?;
        Ok(self
            .clusters
            .iter()
            .map(|c| Weight::meet_all(c.leaves.iter().map(|&p| leaf_values[p])))
            .collect())
    }
}

/// Single-linkage merging of the edges in increasing weight; all merges at
/// one weight form a single level, so every cluster is a distinct closed ball
/// whose diameter is the merge weight. A disconnected graph yields a forest.
pub fn build_lake_dendrogram(g: &Graph) -> Result<Dendrogram> {
    let ew = g.edge_weights()?;
    let n = g.node_count();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut top: Vec<usize> = (0..n).collect();
    let mut clusters: Vec<Cluster> = (0..n)
        .map(|p| Cluster {
            leaves: vec![p],
            diam: Weight::Bottom,
            father: None,
            children: Vec::new(),
        })
        .collect();
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| (ew[e], e));
    let mut i = 0;
    while i < order.len() {
        let level = ew[order[i]];
        let mut j = i;
        let mut touched: Vec<usize> = Vec::new();
        while j < order.len() && ew[order[j]] == level {
            let e = g.edge(order[j]);
            let (a, b) = (find(&mut uf, e.u), find(&mut uf, e.v));
            if a != b {
                touched.push(top[a]);
                touched.push(top[b]);
                uf[a] = b;
            }
            j += 1;
        }
        touched.sort_unstable();
        touched.dedup();
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for c in touched {
            let r = find(&mut uf, clusters[c].leaves[0]);
            match groups.iter_mut().find(|(root, _)| *root == r) {
                Some((_, members)) => members.push(c),
                None => groups.push((r, vec![c])),
            }
        }
        let mut made: Vec<(usize, Cluster)> = groups
            .into_iter()
            .map(|(r, children)| {
                let mut leaves: Vec<NodeId> =
                    children.iter().flat_map(|&c| clusters[c].leaves.iter().copied()).collect();
                leaves.sort_unstable();
                (
                    r,
                    Cluster {
                        leaves,
                        diam: level,
                        father: None,
                        children,
                    },
                )
            })
            .collect();
        made.sort_by_key(|(_, c)| c.leaves[0]);
        for (r, cluster) in made {
            let id = clusters.len();
            for &c in &cluster.children {
                clusters[c].father = Some(id);
            }
            clusters.push(cluster);
            top[r] = id;
        }
        i = j;
    }
    Ok(Dendrogram {
        names: g.names().to_vec(),
        clusters,
    })
}

/// Highest flooding of the leaves below `omega`, computed on the dendrogram
/// alone. Each work item is a sub-dendrogram root with an extra ceiling
/// inherited from the cluster it was cut from.
pub fn dendrogram_flood(d: &Dendrogram, omega: &NodeFunction) -> Result<NodeFunction> {
    let low = d.cluster_min(omega)?;
    let mut tau = NodeFunction::constant(d.leaf_count(), Weight::Top);
    let mut work: Vec<(usize, Weight)> = d
        .query(Relation::Summits, 0)?
        .into_iter()
        .map(|s| (s, Weight::Top))
        .collect();
    while let Some((root, cap)) = work.pop() {
        let c = &d.clusters[root];
        let ceiling = |x: usize| low[x].meet(cap);
        if ceiling(root) > c.diam {
            for &p in &c.leaves {
                tau[p] = ceiling(root);
            }
            continue;
        }
        // Chain from the first leaf up to the root.
        let mut chain = vec![c.leaves[0]];
        while *chain.last().unwrap() != root {
            let up = d.clusters[*chain.last().unwrap()].father.expect("leaf lies below root");
            chain.push(up);
        }
        let k = chain
            .iter()
            .position(|&x| ceiling(x) <= d.clusters[x].diam)
            .expect("root satisfies the bound")
            .max(1);
        let lake = chain[k - 1];
        let level = ceiling(lake).meet(d.clusters[chain[k]].diam);
        for &p in &d.clusters[lake].leaves {
            tau[p] = level;
        }
        for l in k..chain.len() {
            let x = chain[l];
            let sub_cap = d.clusters[x].diam.meet(cap);
            for &z in &d.clusters[x].children {
                if z != chain[l - 1] {
                    work.push((z, sub_cap));
                }
            }
        }
    }
    Ok(tau)
}

/// Level range over which a stage of lake growth persists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelRange {
    /// Strictly between the bounds; `None` means unbounded.
    Open {
        above: Option<Weight>,
        below: Option<Weight>,
    },
    Exactly(Weight),
}

impl fmt::Display for LevelRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelRange::Exactly(w) => write!(f, "={w}"),
            LevelRange::Open { above: None, below: None } => f.write_str("any"),
            LevelRange::Open { above: None, below: Some(b) } => write!(f, "<{b}"),
            LevelRange::Open { above: Some(a), below: None } => write!(f, ">{a}"),
            LevelRange::Open { above: Some(a), below: Some(b) } => write!(f, "{a}<..<{b}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageKind {
    RegionalMinimum,
    LakeZone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub nodes: Vec<NodeId>,
    pub range: LevelRange,
    pub kind: StageKind,
}

/// Successive lakes containing `p` as the water rises: a regional minimum
/// while the level stays below the lowest exit, then the closed ball at that
/// exit level, and so on until `p`'s component is covered.
pub fn lake_growth_sequence(g: &Graph, p: NodeId) -> Result<Vec<Stage>> {
    let ew = g.edge_weights()?;
    if p >= g.node_count() {
        return Err(FloodError::UnknownNode(format!("#{p}")));
    }
    let mut inside = vec![false; g.node_count()];
    inside[p] = true;
    let mut stages = Vec::new();
    let mut floor: Option<Weight> = None;
    loop {
        let nodes: Vec<NodeId> = g.nodes().filter(|&q| inside[q]).collect();
        let exit = crate::ultrametric::lowest_cocycle_edge_of_mask(g, ew, &inside, None);
        let Some((_, level)) = exit else {
            if stages.is_empty() {
                stages.push(Stage {
                    nodes,
                    range: LevelRange::Open { above: None, below: None },
                    kind: StageKind::RegionalMinimum,
                });
            }
            return Ok(stages);
        };
        stages.push(Stage {
            nodes: nodes.clone(),
            range: LevelRange::Open {
                above: floor,
                below: Some(level),
            },
            kind: StageKind::RegionalMinimum,
        });
        inside = crate::ultrametric::reach(g, &nodes, |e| ew[e] <= level, None);
        stages.push(Stage {
            nodes: g.nodes().filter(|&q| inside[q]).collect(),
            range: LevelRange::Exactly(level),
            kind: StageKind::LakeZone,
        });
        if crate::ultrametric::lowest_cocycle_edge_of_mask(g, ew, &inside, None).is_none() {
            return Ok(stages);
        }
        floor = Some(level);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::weight::w;

    fn dendro() -> Dendrogram {
        let fx = fixtures::dendro();
        Dendrogram::from_named(&fx.leaves, &fx.clusters).unwrap()
    }

    fn id(d: &Dendrogram, names: &str) -> usize {
        let set: Vec<usize> = names
            .chars()
            .map(|c| (0..d.leaf_count()).find(|&p| d.leaf_name(p) == c.to_string()).unwrap())
            .collect();
        d.find(&set).unwrap()
    }

    #[test]
    fn nesting_check() {
        assert!(is_dendrogram(&[vec![0], vec![1], vec![0, 1]]));
        assert_eq!(find_overlap(&[vec![0, 1], vec![1, 2]]), Some((0, 1)));
        let fx = fixtures::dendro();
        let d = dendro();
        let family: Vec<Vec<usize>> = d.clusters().iter().map(|c| c.leaves.clone()).collect();
        assert!(is_dendrogram(&family));
        assert_eq!(d.len(), fx.leaves.len() + fx.clusters.len());
    }

    #[test]
    fn invalid_families_are_rejected() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert!(matches!(
            Dendrogram::from_family(names.clone(), &[(vec![0, 1], w(1)), (vec![1, 2], w(2))]),
            Err(FloodError::NotNested(..))
        ));
        assert!(matches!(
            Dendrogram::from_family(names, &[(vec![0, 1], w(3)), (vec![0, 1, 2], w(2))]),
            Err(FloodError::DiameterOrder { .. })
        ));
    }

    #[test]
    fn relations() {
        let d = dendro();
        assert_eq!(d.query(Relation::ImPred, id(&d, "bcde")).unwrap(), vec![id(&d, "bcdef")]);
        assert_eq!(d.query(Relation::Brothers, id(&d, "gh")).unwrap(), vec![id(&d, "i")]);
        let uncles = d.query(Relation::Uncles, id(&d, "c")).unwrap();
        let mut expected = vec![id(&d, "f"), id(&d, "a"), id(&d, "ghijk")];
        expected.sort_unstable();
        assert_eq!(uncles, expected);
        assert_eq!(d.query(Relation::Summits, 0).unwrap(), vec![id(&d, "abcdefghijk")]);
        assert_eq!(d.query(Relation::Pred, id(&d, "j")).unwrap().len(), 3);
        assert_eq!(d.query(Relation::Succ, id(&d, "gh")).unwrap(), vec![id(&d, "g"), id(&d, "h")]);
        assert!(matches!(d.query(Relation::Pred, 99), Err(FloodError::UnknownCluster(99))));
    }

    #[test]
    fn dendro_flood_matches_narrative() {
        let fx = fixtures::dendro();
        assert_eq!(dendrogram_flood(&dendro(), &fx.ceiling).unwrap(), fx.tau);
        let top = NodeFunction::constant(11, Weight::Top);
        assert_eq!(dendrogram_flood(&dendro(), &top).unwrap(), top);
    }

    #[test]
    fn lake_dendrogram_of_chain() {
        let c = fixtures::chain();
        let d = build_lake_dendrogram(&c.graph).unwrap();
        assert_eq!(d.len(), 7);
        assert_eq!(d.clusters()[5].leaves, vec![2, 3, 4]);
        assert_eq!(d.clusters()[5].diam, w(2));
        assert_eq!(d.clusters()[6].diam, w(4));
        assert_eq!(dendrogram_flood(&d, &c.ceiling).unwrap(), c.tau);
    }

    #[test]
    fn lake_dendrogram_reproduces_dendro_fixture() {
        let d = build_lake_dendrogram(&fixtures::dendro_tree()).unwrap();
        assert_eq!(d.family(), dendro().family());
    }

    #[test]
    fn single_edge_dendrogram_and_growth() {
        let g = Graph::from_indices(2, &[(0, 1)], None, Some(vec![w(5)])).unwrap();
        let d = build_lake_dendrogram(&g).unwrap();
        assert_eq!(d.clusters()[2].leaves, vec![0, 1]);
        assert_eq!(d.clusters()[2].diam, w(5));
        let s = lake_growth_sequence(&g, 0).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].range.to_string(), "<5");
        assert_eq!((s[1].kind, s[1].nodes.len()), (StageKind::LakeZone, 2));
    }

    #[test]
    fn growth_sequence_on_chain() {
        let c = fixtures::chain();
        let s = lake_growth_sequence(&c.graph, 4).unwrap();
        let summary: Vec<(Vec<usize>, String, StageKind)> =
            s.into_iter().map(|x| (x.nodes, x.range.to_string(), x.kind)).collect();
        assert_eq!(
            summary,
            vec![
                (vec![4], "<2".to_string(), StageKind::RegionalMinimum),
                (vec![2, 3, 4], "=2".to_string(), StageKind::LakeZone),
                (vec![2, 3, 4], "2<..<4".to_string(), StageKind::RegionalMinimum),
                (vec![0, 1, 2, 3, 4], "=4".to_string(), StageKind::LakeZone),
            ]
        );
        let lonely = Graph::from_indices(1, &[], None, Some(vec![])).unwrap();
        let s = lake_growth_sequence(&lonely, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].kind, StageKind::RegionalMinimum);
    }
}
