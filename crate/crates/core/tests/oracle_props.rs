use num_traits::One;
use proptest::prelude::*;

use kcolor::oracle::{
    count_bichromatic_paths, enumerate_colorings, exact_output_law, measure_alpha_using,
    LawOptions, PathologyTest,
};
use kcolor::{CycleThreshold, Graph, PathCountTable, RunConfig};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<_> = pairs.zip(mask).filter(|(_, keep)| *keep).map(|(p, _)| p).collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Paths with all vertices colored `c` or `q` and distinct colors on
/// consecutive vertices, by listing vertex sequences.
fn brute_paths(g: &Graph, sigma: &[usize], c: usize, q: usize, max_len: usize) -> Vec<u64> {
    fn extend(g: &Graph, sigma: &[usize], path: &mut Vec<usize>, c: usize, q: usize, max_len: usize, out: &mut Vec<u64>) {
        let len = path.len() - 1;
        if len >= 1 && path[0] < *path.last().unwrap() {
            out[len] += 1;
        }
        if len == max_len {
            return;
        }
        let last = *path.last().unwrap();
        for y in 0..g.n() {
            let ok = g.has_edge(last, y)
                && !path.contains(&y)
                && (sigma[y] == c || sigma[y] == q)
                && sigma[y] != sigma[last];
            if ok {
                path.push(y);
                extend(g, sigma, path, c, q, max_len, out);
                path.pop();
            }
        }
    }
    let mut out = vec![0; max_len + 1];
    for s in (0..g.n()).filter(|&s| sigma[s] == c || sigma[s] == q) {
        extend(g, sigma, &mut vec![s], c, q, max_len, &mut out);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_tests_agree(g in graph_strategy(6), v in 0usize..6, u in 0usize..6, k in 3usize..=4) {
        let (v, u) = (v % g.n(), u % g.n());
        prop_assume!(v != u && !g.has_edge(v, u));
        let a = measure_alpha_using(&g, v, u, k, PathologyTest::KempeChain).unwrap();
        let b = measure_alpha_using(&g, v, u, k, PathologyTest::UnionFind).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.alpha_f64 >= 0.0 && a.alpha_f64 <= 1.0);
    }

    #[test]
    fn exact_law_has_unit_mass(g in graph_strategy(5), seed in any::<u64>(), k in 3usize..=4) {
        let cfg = RunConfig::new(k, 3.0, CycleThreshold::NONE, seed).unwrap();
        let law = exact_output_law(&g, &cfg, LawOptions::default()).unwrap();
        prop_assert!(law.total_mass().is_one());
    }

    #[test]
    fn path_counts_match_listing(g in graph_strategy(7), seed in any::<u64>(), k in 2usize..=4) {
        let colorings = enumerate_colorings(&g, k).unwrap();
        prop_assume!(!colorings.is_empty());
        let sigma = colorings[(seed % colorings.len() as u64) as usize].as_slice();
        let counts = count_bichromatic_paths(&g, sigma, 0, 1, 6).unwrap();
        prop_assert_eq!(counts.by_length, brute_paths(&g, sigma, 0, 1, 6));
    }
}

#[test]
fn enumeration_matches_transfer_counts() {
    for k in 1..=4usize {
        let table = PathCountTable::new(k, 8).unwrap();
        for n in 3..=8 {
            let cycle = enumerate_colorings(&Graph::cycle(n), k).unwrap().len();
            assert_eq!(table.cycle_colorings(n), cycle.into(), "C_{n} k={k}");
            let path = enumerate_colorings(&Graph::path(n), k).unwrap().len();
            let closed = k * (k.max(1) - 1).pow(n as u32 - 1);
            assert_eq!(path, closed, "P_{n} k={k}");
        }
    }
}
