mod common;

use common::*;
use floodgraph::dendrogram::{build_lake_dendrogram, dendrogram_flood, is_dendrogram};
use floodgraph::hydrostatics::{
    check_flooding, derive_edge_graph, flooding_inf, flooding_sup, lakes, node_lakes, flat_zones, LakeKind,
    Semantics,
};
use floodgraph::io::{parse_graph, write_graph};
use floodgraph::reductions::{
    delta_en_of, eps_ne_of, gamma_e_of, lake_containing, mst_with_contraction, contract_flat_zones, phi_n_of,
    up_hill, waterfall_flooding,
};
use floodgraph::reductions::{contract_close_flood, local_flood};
use floodgraph::solvers::{
    berge_flood, ceiling_sources, core_expanding_flood, dijkstra_flood, dominated_flood, oracle_df2, prim_flood, Init,
    Schedule,
};
use floodgraph::ultrametric::{ball, diameter, distance_matrix, mst, BallKind};
use floodgraph::{grid_graph, Connectivity, NodeFunction, Raster, Weight};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cocycle_of_complement((g, _) in arb_edge_instance(10), mask in proptest::collection::vec(any::<bool>(), 10)) {
        let set: Vec<usize> = g.nodes().filter(|&p| mask[p]).collect();
        let rest: Vec<usize> = g.nodes().filter(|&p| !mask[p]).collect();
        prop_assert_eq!(g.cocycle(&set).unwrap(), g.cocycle(&rest).unwrap());
    }

    #[test]
    fn components_partition((g, _) in arb_edge_instance(10), limit in 0u64..16) {
        let ew = g.edge_weights().unwrap().to_vec();
        let comps = g.connected_components(|e| ew[e] <= Weight::Finite(limit));
        let mut seen = vec![0; g.node_count()];
        for c in &comps {
            prop_assert!(!c.is_empty());
            for &p in c { seen[p] += 1; }
        }
        prop_assert!(seen.iter().all(|&k| k == 1));
        prop_assert!(comps.windows(2).all(|w| w[0][0] < w[1][0]));
    }

    #[test]
    fn grid_edge_count(h in 1usize..6, w in 1usize..6, eight in any::<bool>()) {
        let raster = Raster::new(w, h, vec![Weight::ZERO; w * h]).unwrap();
        let conn = if eight { Connectivity::Eight } else { Connectivity::Four };
        let g = grid_graph(&raster, conn).unwrap();
        let four = h * (w - 1) + w * (h - 1);
        let diag = if eight { 2 * (h - 1) * (w - 1) } else { 0 };
        prop_assert_eq!(g.node_count(), h * w);
        prop_assert_eq!(g.edge_count(), four + diag);
    }

    #[test]
    fn graph_text_round_trip((g, omega) in arb_node_instance(10)) {
        let text = write_graph(&g, Some(&omega));
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back.graph, &g);
        prop_assert_eq!(back.ceiling.unwrap(), omega);
    }

    #[test]
    fn node_edge_equivalence((g, _) in arb_node_instance(10), bump in proptest::collection::vec(0u64..4, 10)) {
        let f = g.ground().unwrap();
        let tau: NodeFunction = g.nodes().map(|p| Weight::Finite(f[p].finite().unwrap() + bump[p])).collect();
        let node = check_flooding(&g, &tau, Semantics::Node).unwrap().is_valid();
        let edge = check_flooding(&derive_edge_graph(&g).unwrap(), &tau, Semantics::Edge).unwrap().is_valid();
        prop_assert_eq!(node, edge);
        prop_assert_eq!(node, node_valid(&g, &tau));
    }

    #[test]
    fn lakes_partition_and_classify((g, omega) in arb_edge_instance(10)) {
        let tau = dominated_flood(&g, &omega).unwrap();
        let ew = g.edge_weights().unwrap();
        let part = lakes(&g, &tau).unwrap();
        let index = part.lake_index(g.node_count());
        prop_assert!(index.iter().all(|&i| i != usize::MAX));
        for (i, lake) in part.lakes.iter().enumerate() {
            prop_assert!(lake.nodes.iter().all(|&p| tau[p] == lake.level));
            let cocycle = g.cocycle(&lake.nodes).unwrap();
            match &lake.kind {
                LakeKind::Full(exhaust) => {
                    prop_assert!(!exhaust.is_empty());
                    for x in exhaust {
                        prop_assert_eq!(index[x.inside], i);
                        prop_assert!(ew[x.edge] == lake.level && tau[x.outside] < lake.level);
                    }
                }
                LakeKind::RegionalMinimum => {
                    for e in cocycle {
                        let edge = g.edge(e);
                        let out = if index[edge.u] == i { edge.v } else { edge.u };
                        prop_assert!(ew[e] > lake.level || tau[out] >= lake.level);
                    }
                }
            }
        }
    }

    #[test]
    fn node_lakes_are_flat_zones_of_tau((g, omega) in arb_node_instance(10)) {
        let tau = dominated_flood(&g, &omega).unwrap();
        let lakes: Vec<Vec<usize>> = node_lakes(&g.without_edge_weights(), &tau).unwrap().lakes.into_iter().map(|l| l.nodes).collect();
        let zones = flat_zones(&g.with_ground(tau.clone()).unwrap()).unwrap();
        prop_assert_eq!(lakes, zones);
    }

    #[test]
    fn wet_neighbours_share_level((g, omega) in arb_node_instance(10)) {
        let tau = dominated_flood(&g, &omega).unwrap();
        let f = g.ground().unwrap();
        for e in g.edges() {
            if tau[e.u] > f[e.u] && tau[e.v] > f[e.v] {
                prop_assert_eq!(tau[e.u], tau[e.v]);
            }
        }
    }

    #[test]
    fn sup_and_inf_are_floodings((g, a) in arb_edge_instance(10), seed in any::<u64>()) {
        let mut r = rng(seed);
        let b: NodeFunction = g.nodes().map(|_| Weight::Finite(r.gen_range(0..16))).collect();
        let t1 = dominated_flood(&g, &a).unwrap();
        let t2 = dominated_flood(&g, &b).unwrap();
        for out in [flooding_sup(&g, &t1, &t2, Semantics::Edge).unwrap(), flooding_inf(&g, &t1, &t2, Semantics::Edge).unwrap()] {
            prop_assert!(edge_valid(&g, &out));
        }
    }

    #[test]
    fn ball_lemmas((g, _) in arb_edge_instance(9), rho in 0u64..16) {
        let rho = Weight::Finite(rho);
        let balls: Vec<Vec<usize>> = g.nodes().map(|p| ball(&g, p, rho, BallKind::Closed).unwrap()).collect();
        for p in g.nodes() {
            prop_assert!(diameter(&g, &balls[p]).unwrap() <= rho);
            for &q in &balls[p] {
                prop_assert_eq!(&balls[q], &balls[p]);
            }
        }
    }

    #[test]
    fn mst_keeps_distances((g, _) in arb_edge_instance(10)) {
        let tree = mst(&g, None).unwrap();
        prop_assert_eq!(distance_matrix(&tree).unwrap(), distance_matrix(&g).unwrap());
    }

    #[test]
    fn dijkstra_extracts_in_order((g, omega) in arb_edge_instance(12)) {
        let r = dijkstra_flood(&g, &omega, &Init::AllFiniteCeiling).unwrap();
        prop_assert!(r.order.windows(2).all(|w| r.tau[w[0]] <= r.tau[w[1]]));
    }

    #[test]
    fn solver_output_is_d_compatible((g, omega) in arb_edge_instance(10)) {
        let tau = dominated_flood(&g, &omega).unwrap();
        let d = naive_distances(&g);
        for p in g.nodes() {
            for q in g.nodes() {
                prop_assert!(tau[p] <= tau[q].join(d[p][q]));
            }
        }
    }

    #[test]
    fn open_balls_flood_uniformly((g, omega) in arb_edge_instance(10), radius in 1u64..16) {
        let tau = dominated_flood(&g, &omega).unwrap();
        let lambda = Weight::Finite(radius);
        for p in g.nodes() {
            let b = ball(&g, p, lambda, BallKind::Open).unwrap();
            if b.iter().any(|&q| tau[q] >= lambda) {
                prop_assert!(b.iter().all(|&q| tau[q] == tau[b[0]]));
            }
        }
    }

    #[test]
    fn lake_dendrogram_is_the_ball_family((g, omega) in arb_edge_instance(12)) {
        let d = build_lake_dendrogram(&g).unwrap();
        let family: Vec<Vec<usize>> = d.clusters().iter().map(|c| c.leaves.clone()).collect();
        prop_assert!(is_dendrogram(&family));
        let dm = distance_matrix(&g).unwrap();
        let mut balls = Vec::new();
        for p in g.nodes() {
            for q in g.nodes() {
                let b = ball(&g, p, dm.get(p, q), BallKind::Closed).unwrap();
                let diam = diameter(&g, &b).unwrap();
                balls.push((b, diam));
            }
        }
        balls.sort();
        balls.dedup();
        prop_assert_eq!(d.family(), balls);
        prop_assert_eq!(dendrogram_flood(&d, &omega).unwrap(), naive_flood(&g, &omega));
    }

    #[test]
    fn adjunction((g, _) in arb_edge_instance(8), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: NodeFunction = g.nodes().map(|_| Weight::Finite(r.gen_range(0..8))).collect();
        let e: Vec<Weight> = g.edges().iter().map(|_| Weight::Finite(r.gen_range(0..8))).collect();
        let dilated = delta_en_of(&g, &f).unwrap();
        let eroded = eps_ne_of(&g, &e).unwrap();
        prop_assert_eq!(dilated.iter().zip(&e).all(|(a, b)| a <= b), f.le(&eroded));
    }

    #[test]
    fn adjunction_on_ground((g, _) in arb_node_instance(8)) {
        let f = g.ground().unwrap();
        let e = g.edge_weights().unwrap();
        let dilated = delta_en_of(&g, f).unwrap();
        prop_assert!(dilated.iter().zip(e).all(|(a, b)| a <= b));
        prop_assert!(f.le(&eps_ne_of(&g, e).unwrap()));
    }

    #[test]
    fn opening_and_closing((g, _) in arb_edge_instance(10), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: NodeFunction = g.nodes().map(|_| Weight::Finite(r.gen_range(0..16))).collect();
        let e = g.edge_weights().unwrap();
        let opened = gamma_e_of(&g, e).unwrap();
        prop_assert!(opened.iter().zip(e).all(|(a, b)| a <= b));
        prop_assert_eq!(gamma_e_of(&g, &opened).unwrap(), opened);
        let closed = phi_n_of(&g, &f).unwrap();
        prop_assert!(f.le(&closed));
        prop_assert_eq!(phi_n_of(&g, &closed).unwrap(), closed);
    }

    #[test]
    fn closing_of_ground((g, _) in arb_node_instance(10)) {
        let f = g.ground().unwrap();
        let closed = phi_n_of(&g, f).unwrap();
        prop_assert!(f.le(&closed));
        prop_assert_eq!(phi_n_of(&g, &closed).unwrap(), closed);
    }

    #[test]
    fn waterfall_and_sup_absorption((g, omega) in arb_edge_instance(10), cut in 0u64..16) {
        let eta = waterfall_flooding(&g).unwrap();
        prop_assert!(edge_valid(&g, &eta));
        let tau = dominated_flood(&g, &omega).unwrap();
        prop_assert!(edge_valid(&g, &tau.join(&eta).unwrap()));
        // Arbitrary functions below η: τ ∨ η is η itself, always valid.
        let below: NodeFunction = eta.iter().map(|&x| x.meet(Weight::Finite(cut))).collect();
        prop_assert!(edge_valid(&g, &below.join(&eta).unwrap()));
    }

    #[test]
    fn contracting_prim_matches_contraction((g, _) in arb_node_instance(12)) {
        let (tree, map) = mst_with_contraction(&g).unwrap();
        let k = contract_flat_zones(&g, None).unwrap();
        prop_assert_eq!(&map, &k.map);
        let kg = derive_edge_graph(&k.graph).unwrap();
        prop_assert_eq!(distance_matrix(&tree).unwrap(), distance_matrix(&kg).unwrap());
    }

    #[test]
    fn up_hill_completes_the_lake((g, omega) in arb_node_instance(12), pick in any::<usize>()) {
        let tau = dominated_flood(&g, &omega).unwrap();
        let p = pick % g.node_count();
        let lake = lake_containing(&g, &omega, p).unwrap();
        prop_assert_eq!(lake.level, tau[p]);
        prop_assert!(lake.nodes.iter().all(|&q| tau[q] == lake.level));
        let rest = up_hill(&g, &omega, &lake.nodes, Weight::Top).unwrap();
        for q in g.nodes() {
            if !lake.nodes.contains(&q) {
                prop_assert_eq!(rest[q], Some(tau[q]), "node {}", q);
            }
        }
    }

    #[test]
    fn ultrametric_axioms((g, _) in arb_edge_instance(9)) {
        let d = distance_matrix(&g).unwrap();
        for p in g.nodes() {
            prop_assert_eq!(d.get(p, p), Weight::Bottom);
            for q in g.nodes() {
                prop_assert_eq!(d.get(p, q), d.get(q, p));
                for r in g.nodes() {
                    prop_assert!(d.get(p, r) <= d.get(p, q).join(d.get(q, r)));
                    // Two largest sides of every triangle are equal.
                    let mut sides = [d.get(p, q), d.get(q, r), d.get(p, r)];
                    sides.sort();
                    prop_assert_eq!(sides[1], sides[2]);
                }
            }
        }
    }

    #[test]
    fn solvers_agree_and_are_maximal((g, omega) in arb_edge_instance(12)) {
        let expected = naive_flood(&g, &omega);
        prop_assert!(edge_valid(&g, &expected) && expected.le(&omega) && maximal(&g, &expected, &omega));
        prop_assert_eq!(&dominated_flood(&g, &omega).unwrap(), &expected);
        prop_assert_eq!(&oracle_df2(&g, &omega).unwrap(), &expected);
        for schedule in [Schedule::Jacobi, Schedule::GaussSeidelAlternating] {
            prop_assert_eq!(&berge_flood(&g, &omega, schedule).unwrap().tau, &expected);
        }
        let sources = ceiling_sources(&omega);
        if !sources.is_empty() {
            prop_assert_eq!(&prim_flood(&g, &sources).unwrap().tau, &expected);
        }
    }

    #[test]
    fn node_domain_solvers_agree((g, omega) in arb_node_instance(12)) {
        let expected = naive_flood(&g, &omega);
        prop_assert!(node_valid(&g, &expected));
        prop_assert_eq!(&core_expanding_flood(&g, &omega).unwrap().tau, &expected);
        prop_assert_eq!(&contract_close_flood(&g, &omega).unwrap(), &expected);
    }

    #[test]
    fn local_flood_matches_global((g, omega) in arb_node_instance(12)) {
        let tau = dominated_flood(&g, &omega).unwrap();
        for p in g.nodes() {
            prop_assert_eq!(local_flood(&g, &omega, p).unwrap(), tau[p]);
        }
    }
}
