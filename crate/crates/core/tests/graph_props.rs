use proptest::prelude::*;

use kcolor::{
    build_peel_sequence, check_x_membership, classify_simple, generate_gnp,
    removable_edges, shortest_cycle_through_edge, CycleThreshold, Edge, GnpParams, Graph,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<_> = pairs.zip(mask).filter(|(_, keep)| *keep).map(|(p, _)| p).collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Length of the shortest simple cycle through `e`, by listing every simple
/// path between its endpoints that avoids `e`.
fn brute_shortest_cycle(g: &Graph, e: Edge) -> Option<usize> {
    fn dfs(g: &Graph, at: usize, target: usize, e: Edge, len: usize, seen: &mut Vec<bool>, best: &mut Option<usize>) {
        if at == target {
            *best = Some(best.map_or(len, |b| b.min(len)));
            return;
        }
        for &y in g.neighbors(at) {
            if seen[y] || Edge::new(at, y) == e {
                continue;
            }
            seen[y] = true;
            dfs(g, y, target, e, len + 1, seen, best);
            seen[y] = false;
        }
    }
    let (a, b) = e.endpoints();
    let mut seen = vec![false; g.n()];
    seen[a] = true;
    let mut best = None;
    dfs(g, a, b, e, 0, &mut seen, &mut best);
    best.map(|path| path + 1)
}

proptest! {
    #[test]
    fn shortest_cycle_matches_path_listing(g in graph_strategy(8), cap in 3usize..10) {
        let cap = CycleThreshold::new(cap).unwrap();
        for e in g.edges() {
            let expected = brute_shortest_cycle(&g, e).filter(|&l| cap.is_short(l));
            prop_assert_eq!(shortest_cycle_through_edge(&g, e, cap).unwrap(), expected);
        }
        let removable: Vec<Edge> = g
            .edges()
            .filter(|&e| brute_shortest_cycle(&g, e).filter(|&l| cap.is_short(l)).is_none())
            .collect();
        prop_assert_eq!(removable_edges(&g, cap), removable);
    }

    #[test]
    fn classify_matches_degrees_and_components(g in graph_strategy(8)) {
        let expected = g.components().iter().all(|comp| {
            comp.len() == 1
                || comp.iter().all(|&v| g.degree(v) == 2)
        });
        let dec = classify_simple(&g);
        prop_assert_eq!(dec.is_some(), expected);
        if let Some(dec) = dec {
            prop_assert_eq!(dec.vertex_count(), g.n());
            let mut rebuilt = Graph::empty(g.n());
            for cycle in &dec.cycles {
                prop_assert!(cycle.len() >= 3);
                for i in 0..cycle.len() {
                    rebuilt.add_edge(Edge::new(cycle[i], cycle[(i + 1) % cycle.len()])).unwrap();
                }
            }
            prop_assert_eq!(rebuilt, g);
        }
    }

    #[test]
    fn peel_sequence_rebuilds_input(g in graph_strategy(9), cap in 0usize..8, seed in any::<u64>()) {
        let cap = if cap < 3 { CycleThreshold::NONE } else { CycleThreshold::new(cap).unwrap() };
        let seq = build_peel_sequence(&g, cap, seed);
        prop_assert_eq!(seq.graph_at(seq.steps()).unwrap(), g.clone());
        prop_assert_eq!(seq.base.edge_count() + seq.steps(), g.edge_count());
        // the base does not depend on the shuffle
        prop_assert_eq!(&build_peel_sequence(&g, cap, seed ^ 1).base, &seq.base);
        for i in 0..seq.steps() {
            let (v, u) = seq.additions[i].endpoints();
            prop_assert!(!seq.graph_at(i).unwrap().has_edge(v, u));
        }
    }

    #[test]
    fn edge_list_round_trip(g in graph_strategy(10)) {
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        prop_assert_eq!(Graph::read_edge_list(buf.as_slice()).unwrap(), g);
    }
}

#[test]
fn gnp_edge_counts_are_binomial() {
    let (n, d) = (200, 4.0);
    let p = d / n as f64;
    let pairs = (n * (n - 1) / 2) as f64;
    let mean = pairs * p;
    let sd = (pairs * p * (1.0 - p)).sqrt();
    let trials = 1000;
    let total: usize = (0..trials)
        .map(|s| generate_gnp(&GnpParams::new(n, d, s).unwrap()).unwrap().edge_count())
        .sum();
    let avg = total as f64 / trials as f64;
    // the average of 1000 counts has standard deviation sd / sqrt(1000)
    assert!((avg - mean).abs() < 4.0 * sd / (trials as f64).sqrt(), "{avg} vs {mean}");
}

#[test]
fn membership_of_forest_and_triangle() {
    let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]).unwrap();
    let cap = CycleThreshold::new(4).unwrap();
    let m = check_x_membership(&g, 2.0, cap);
    assert!(m.member, "{:?}", m.violations);
    assert_eq!(m.removable, 2);
    assert_eq!(m.decomposition.unwrap().cycles, vec![vec![0, 1, 2]]);
}
