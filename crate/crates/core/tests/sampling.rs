use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kcolor::oracle::{
    enumerate_colorings, exact_output_law, glauber_step, greedy_coloring, EmpiricalDistribution,
    ExactLaw, LawOptions,
};
use kcolor::{classify_simple, sample_many, sample_simple, CycleThreshold, Graph, RunConfig};

fn empirical_of<I: IntoIterator<Item = Vec<usize>>>(samples: I) -> EmpiricalDistribution {
    let mut e = EmpiricalDistribution::new();
    for s in samples {
        e.add(&s);
    }
    e
}

#[test]
fn simple_sampler_is_close_to_uniform() {
    let graphs = [
        Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
        Graph::from_edges(6, [(0, 2), (2, 4), (4, 0), (1, 3), (3, 5), (5, 1)]).unwrap(),
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
    ];
    for (i, g) in graphs.iter().enumerate() {
        for k in 3..=4 {
            let dec = classify_simple(g).unwrap();
            let law = ExactLaw::uniform_proper(g, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64 * 10 + k as u64);
            let trials = 20_000;
            let e = empirical_of((0..trials).map(|_| sample_simple(&dec, k, &mut rng).unwrap().into_vec()));
            let report = e.compare(&law);
            let limit = 3.0 * (law.support_size() as f64 / trials as f64).sqrt();
            assert_eq!(report.outside_support, 0);
            assert!(report.tv_distance <= limit, "graph {i} k={k}: {report:?}");
        }
    }
}

#[test]
fn single_edge_output_is_uniform() {
    let g = Graph::path(2);
    let cfg = RunConfig::new(3, 2.0, CycleThreshold::new(9).unwrap(), 11).unwrap();
    let reports = sample_many(&g, &cfg, 10_000).unwrap();
    let e = empirical_of(reports.into_iter().map(|r| r.coloring.unwrap()));
    let report = e.compare(&ExactLaw::uniform_proper(&g, 3).unwrap());
    assert_eq!(report.support_size, 6);
    assert!(report.tv_distance < 0.02, "{report:?}");
}

#[test]
fn disjoint_edges_have_uniform_marginals() {
    let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    let cfg = RunConfig::new(3, 2.0, CycleThreshold::NONE, 3).unwrap();
    let reports = sample_many(&g, &cfg, 12_000).unwrap();
    for (a, b) in [(0, 1), (2, 3)] {
        let e = empirical_of(reports.iter().map(|r| {
            let c = r.coloring.as_ref().unwrap();
            vec![c[a], c[b]]
        }));
        let report = e.compare(&ExactLaw::uniform_proper(&Graph::path(2), 3).unwrap());
        let chi = report.chi_square.unwrap();
        assert!(chi.p_value > 0.001, "{report:?}");
    }
}

/// The branch-enumerated law, averaged over peel orders, is the law the
/// sampler actually produces, switch failures included.
#[test]
fn sampler_matches_its_exact_law() {
    // on an odd cycle the closing edge can meet a failed switch
    let g = Graph::cycle(5);
    let cfg = RunConfig::new(3, 2.0, CycleThreshold::NONE, 99).unwrap();
    let law = exact_output_law(&g, &cfg, LawOptions { marginalize_order: true }).unwrap();
    assert!(law.improper_mass(&g) > num_rational::BigRational::from_integer(0.into()));
    let reports = sample_many(&g, &cfg, 100_000).unwrap();
    let e = empirical_of(reports.into_iter().map(|r| r.coloring.unwrap()));
    let report = e.compare(&law);
    assert_eq!(report.outside_support, 0);
    let chi = report.chi_square.unwrap();
    assert!(chi.p_value > 0.001, "{report:?}");
}

#[test]
fn glauber_mixes_on_four_cycle() {
    let g = Graph::cycle(4);
    let k = 3;
    let law = ExactLaw::uniform_proper(&g, k).unwrap();
    assert_eq!(law.support_size(), enumerate_colorings(&g, k).unwrap().len());
    let mut sigma = greedy_coloring(&g, k).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut e = EmpiricalDistribution::new();
    for _ in 0..1_000_000 {
        glauber_step(&g, &mut sigma, &mut rng);
        e.add(sigma.as_slice());
    }
    let tv = e.tv_to(&law);
    assert!(tv < 0.02, "{tv}");
}
