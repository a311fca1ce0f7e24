//! Small reference instances used in docs, tests and the CLI examples.

use crate::graph::{Graph, NodeFunction};
use crate::weight::{w, Weight};

fn nf(values: &[u64]) -> NodeFunction {
    values.iter().map(|&v| w(v)).collect()
}

/// Path a–b–c–d–e with ground, ceiling and its dominated flooding.
#[derive(Clone, Debug)]
pub struct Chain {
    /// Node-weighted path; carries both the ground and `e = f_p ∨ f_q`.
    pub graph: Graph,
    pub ceiling: NodeFunction,
    pub tau: NodeFunction,
}

pub fn chain() -> Chain {
    let ground = vec![w(0), w(4), w(1), w(2), w(0)];
    let graph = Graph::build(
        ["a", "b", "c", "d", "e"],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        Some(ground),
        Some(vec![w(4), w(4), w(2), w(2)]),
    )
    .expect("chain fixture");
    Chain {
        graph,
        ceiling: nf(&[0, 5, 3, 3, 1]),
        tau: nf(&[0, 4, 2, 2, 1]),
    }
}

/// Tank network A–F with a valid flooding holding a full lake {D, E}.
#[derive(Clone, Debug)]
pub struct Tank {
    pub graph: Graph,
    pub tau: NodeFunction,
}

pub fn tank() -> Tank {
    let graph = Graph::build(
        ["A", "B", "C", "D", "E", "F"],
        &[("A", "B"), ("B", "C"), ("C", "D"), ("D", "E"), ("E", "F")],
        None,
        Some(vec![w(1), w(5), w(3), w(2), w(6)]),
    )
    .expect("tank fixture");
    Tank {
        graph,
        tau: nf(&[2, 2, 1, 3, 3, 3]),
    }
}

/// Eleven leaves a..k, the internal clusters with their diameters, a ceiling
/// on the leaves and the expected flooding.
#[derive(Clone, Debug)]
pub struct Dendro {
    pub leaves: Vec<&'static str>,
    pub clusters: Vec<(Vec<&'static str>, Weight)>,
    pub ceiling: NodeFunction,
    pub tau: NodeFunction,
}

pub fn dendro() -> Dendro {
    let leaves = vec!["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"];
    let clusters = vec![
        (vec!["b", "c", "d", "e"], w(4)),
        (vec!["b", "c", "d", "e", "f"], w(7)),
        (vec!["a", "b", "c", "d", "e", "f"], w(9)),
        (vec!["g", "h"], w(1)),
        (vec!["g", "h", "i"], w(6)),
        (vec!["j", "k"], w(3)),
        (vec!["g", "h", "i", "j", "k"], w(8)),
        (leaves.clone(), w(10)),
    ];
    let mut ceiling = NodeFunction::constant(leaves.len(), Weight::Top);
    ceiling[2] = w(6);
    ceiling[7] = w(1);
    Dendro {
        leaves,
        clusters,
        ceiling,
        tau: nf(&[9, 6, 6, 6, 6, 7, 1, 1, 6, 8, 8]),
    }
}

/// An edge-weighted tree whose lake dendrogram is the one of [`dendro`].
pub fn dendro_tree() -> Graph {
    let edges = [
        ("b", "c"),
        ("c", "d"),
        ("d", "e"),
        ("e", "f"),
        ("a", "b"),
        ("g", "h"),
        ("h", "i"),
        ("j", "k"),
        ("i", "j"),
        ("f", "g"),
    ];
    let weights = [4, 4, 4, 7, 9, 1, 6, 3, 8, 10];
    Graph::build(
        dendro().leaves,
        &edges,
        None,
        Some(weights.iter().map(|&v| w(v)).collect()),
    )
    .expect("dendro tree fixture")
}
