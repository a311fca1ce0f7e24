#![allow(dead_code)]

use floodgraph::{Graph, NodeFunction, Weight};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random connected structure on `n` nodes: a random spanning tree plus
/// extra edges, with shuffled node labels and edge order.
pub fn connected_pairs(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        pairs.push((perm[i], perm[j]));
    }
    for a in 0..n {
        for b in a + 1..n {
            let present = pairs.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
            if !present && rng.gen_bool(extra) {
                pairs.push((a, b));
            }
        }
    }
    pairs.shuffle(rng);
    pairs
}

/// Edge-weighted instance: weights 0..=15, each ceiling finite with
/// probability ½.
pub fn edge_instance(rng: &mut ChaCha8Rng, max_n: usize) -> (Graph, NodeFunction) {
    let n = rng.gen_range(1..=max_n);
    let pairs = connected_pairs(rng, n, 0.25);
    let weights = pairs.iter().map(|_| Weight::Finite(rng.gen_range(0..=15))).collect();
    let g = Graph::from_indices(n, &pairs, None, Some(weights)).unwrap();
    let omega = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Weight::Finite(rng.gen_range(0..=15))
            } else {
                Weight::Top
            }
        })
        .collect();
    (g, omega)
}

/// Node-weighted instance with plateaus (ground drawn from a few levels),
/// edge weights `f_p ∨ f_q` and a ceiling `ω ≥ f` (or `⊤`).
pub fn node_instance(rng: &mut ChaCha8Rng, max_n: usize) -> (Graph, NodeFunction) {
    let n = rng.gen_range(1..=max_n);
    let pairs = connected_pairs(rng, n, 0.2);
    let levels = rng.gen_range(1..=5u64);
    let f: Vec<Weight> = (0..n).map(|_| Weight::Finite(rng.gen_range(0..levels) * 3)).collect();
    let weights = pairs.iter().map(|&(a, b)| f[a].join(f[b])).collect();
    let omega = f
        .iter()
        .map(|&x| {
            if rng.gen_bool(0.3) {
                Weight::Top
            } else {
                Weight::Finite(x.finite().unwrap() + rng.gen_range(0..=8))
            }
        })
        .collect();
    let g = Graph::from_indices(n, &pairs, Some(f), Some(weights)).unwrap();
    (g, omega)
}

/// Min-max distances by repeated relaxation until stable; independent of
/// the library's own distance code.
pub fn naive_distances(g: &Graph) -> Vec<Vec<Weight>> {
    let n = g.node_count();
    let ew = g.edge_weights().unwrap();
    let mut d = vec![vec![Weight::Top; n]; n];
    for (p, row) in d.iter_mut().enumerate() {
        row[p] = Weight::Bottom;
    }
    loop {
        let mut changed = false;
        for row in d.iter_mut() {
            for (id, e) in g.edges().iter().enumerate() {
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    let cand = row[a].join(ew[id]);
                    if cand < row[b] {
                        row[b] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return d;
        }
    }
}

/// Highest flooding below `omega` from the distance formula, on naive
/// distances.
pub fn naive_flood(g: &Graph, omega: &NodeFunction) -> NodeFunction {
    let d = naive_distances(g);
    (0..g.node_count())
        .map(|q| {
            (0..g.node_count())
                .map(|i| omega[i].join(d[i][q]))
                .min()
                .unwrap_or(Weight::Top)
        })
        .collect()
}

/// `τ_p ≤ τ_q ∨ e_pq` on every edge, both ways.
pub fn edge_valid(g: &Graph, tau: &NodeFunction) -> bool {
    let ew = g.edge_weights().unwrap();
    g.edges().iter().enumerate().all(|(id, e)| {
        tau[e.u] <= tau[e.v].join(ew[id]) && tau[e.v] <= tau[e.u].join(ew[id])
    })
}

/// `τ ≥ f` and `τ_p > τ_q ⇒ τ_p = f_p` on every edge.
pub fn node_valid(g: &Graph, tau: &NodeFunction) -> bool {
    let f = g.ground().unwrap();
    g.nodes().all(|p| tau[p] >= f[p])
        && g.edges().iter().all(|e| {
            [(e.u, e.v), (e.v, e.u)]
                .iter()
                .all(|&(p, q)| tau[p] <= tau[q] || tau[p] == f[p])
        })
}

/// Raising any node still below its ceiling by one unit breaks validity at
/// one of its edges.
pub fn maximal(g: &Graph, tau: &NodeFunction, omega: &NodeFunction) -> bool {
    let ew = g.edge_weights().unwrap();
    g.nodes().filter(|&p| tau[p] < omega[p]).all(|p| {
        let raised = tau[p].succ();
        g.neighbors(p).iter().any(|&(q, e)| raised > tau[q].join(ew[e]))
    })
}

/// Proptest strategy for connected edge-weighted graphs with a ceiling.
pub fn arb_edge_instance(max_n: usize) -> impl Strategy<Value = (Graph, NodeFunction)> {
    any::<u64>().prop_map(move |seed| edge_instance(&mut rng(seed), max_n))
}

/// Proptest strategy for node-weighted graphs with plateaus and `ω ≥ f`.
pub fn arb_node_instance(max_n: usize) -> impl Strategy<Value = (Graph, NodeFunction)> {
    any::<u64>().prop_map(move |seed| node_instance(&mut rng(seed), max_n))
}
