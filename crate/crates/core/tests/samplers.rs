//! Seeded samplers against exact laws built independently here.

use undirectify::exact::{state_count, DistributionKind, GraphDistribution};
use undirectify::models::{exact_model_distribution_seeded, sample, ModelClass, ModelSpec, Sample};
use undirectify::montecarlo::{chi_square, run_replicates};
use undirectify::rng::split;

const SEED: u64 = 0x5EED;

fn counts(spec: &ModelSpec, kind: DistributionKind, reps: usize) -> Vec<usize> {
    let mut c = vec![0; state_count(spec.n, kind).unwrap()];
    for code in run_replicates(SEED, reps, |_, s| match sample(spec, s).unwrap() {
        Sample::Graph(g) => g.code().unwrap(),
        Sample::Digraph(d) => d.code().unwrap(),
    }) {
        c[code as usize] += 1;
    }
    c
}

/// Uniform law on codes with exactly `m` bits set.
fn uniform_on_popcount(n: usize, kind: DistributionKind, m: u32) -> GraphDistribution {
    let states = state_count(n, kind).unwrap();
    let hits = (0..states).filter(|c| c.count_ones() == m).count() as f64;
    let pmf = (0..states).map(|c| if c.count_ones() == m { 1.0 / hits } else { 0.0 }).collect();
    GraphDistribution::new(n, kind, pmf).unwrap()
}

/// Product law of independent bits, bit `k` on with probability `p[k]`.
fn product_law(n: usize, kind: DistributionKind, p: &[f64]) -> GraphDistribution {
    let states = state_count(n, kind).unwrap();
    let pmf = (0..states)
        .map(|c| {
            p.iter()
                .enumerate()
                .map(|(k, &pk)| if c >> k & 1 == 1 { pk } else { 1.0 - pk })
                .product()
        })
        .collect();
    GraphDistribution::new(n, kind, pmf).unwrap()
}

#[test]
fn classical_er_is_uniform_on_two_edge_graphs() {
    let spec = ModelSpec::classical_er(4, 2);
    let law = uniform_on_popcount(4, DistributionKind::Graph, 2);
    let exact = exact_model_distribution_seeded(&spec, SEED).unwrap();
    for (x, y) in exact.pmf().iter().zip(law.pmf()) {
        assert!((x - y).abs() <= 1e-12);
    }
    let chi = chi_square(&counts(&spec, DistributionKind::Graph, 100_000), &law).unwrap();
    assert_eq!(chi.impossible, 0);
    assert!(chi.p_value > 1e-3, "{chi:?}");
}

#[test]
fn directed_classical_er_is_uniform_on_two_arc_digraphs() {
    let spec = ModelSpec::directed_classical_er(3, 2);
    let law = uniform_on_popcount(3, DistributionKind::Digraph, 2);
    let chi = chi_square(&counts(&spec, DistributionKind::Digraph, 100_000), &law).unwrap();
    assert_eq!(chi.impossible, 0);
    assert!(chi.p_value > 1e-3, "{chi:?}");
}

#[test]
fn gilbert_matches_product_law() {
    let spec = ModelSpec::gilbert(4, 0.3);
    let law = product_law(4, DistributionKind::Graph, &[0.3; 6]);
    let chi = chi_square(&counts(&spec, DistributionKind::Graph, 100_000), &law).unwrap();
    assert!(chi.p_value > 1e-3, "{chi:?}");
}

#[test]
fn custom_iag_matches_product_law() {
    let pi = vec![vec![0.0, 0.2, 0.7], vec![0.5, 0.0, 0.1], vec![0.9, 0.4, 0.0]];
    let spec = ModelSpec::custom_independent(ModelClass::IAG, pi.clone());
    // ordered index of (v, w) is 2·{v,w} + (v > w); pairs (0,1), (0,2), (1,2)
    let p = [pi[0][1], pi[1][0], pi[0][2], pi[2][0], pi[1][2], pi[2][1]];
    let law = product_law(3, DistributionKind::Digraph, &p);
    let exact = exact_model_distribution_seeded(&spec, SEED).unwrap();
    for (x, y) in exact.pmf().iter().zip(law.pmf()) {
        assert!((x - y).abs() <= 1e-12);
    }
    let chi = chi_square(&counts(&spec, DistributionKind::Digraph, 100_000), &law).unwrap();
    assert!(chi.p_value > 1e-3, "{chi:?}");
}

#[test]
fn weighted_esrg_matches_two_step_order_sum() {
    // μ° ∝ (2, 1, 1) on pairs {1,2}, {1,3}, {2,3}; folded from a symmetric matrix
    let mu = vec![vec![0.0, 0.25, 0.125], vec![0.25, 0.0, 0.125], vec![0.125, 0.125, 0.0]];
    let spec = ModelSpec::custom_selection(ModelClass::ESRG, mu, 2);
    let mut pmf = vec![0.0; 8];
    pmf[0b011] = 5.0 / 12.0;
    pmf[0b101] = 5.0 / 12.0;
    pmf[0b110] = 1.0 / 6.0;
    let law = GraphDistribution::new(3, DistributionKind::Graph, pmf).unwrap();
    let exact = exact_model_distribution_seeded(&spec, SEED).unwrap();
    for (x, y) in exact.pmf().iter().zip(law.pmf()) {
        assert!((x - y).abs() <= 1e-12);
    }
    let chi = chi_square(&counts(&spec, DistributionKind::Graph, 100_000), &law).unwrap();
    assert!(chi.p_value > 1e-3, "{chi:?}");
}

#[test]
fn wrong_law_is_rejected() {
    let spec = ModelSpec::gilbert(3, 0.5);
    let law = product_law(3, DistributionKind::Graph, &[0.4; 3]);
    let chi = chi_square(&counts(&spec, DistributionKind::Graph, 100_000), &law).unwrap();
    assert!(chi.p_value < 1e-6, "{chi:?}");
}

#[test]
fn replicate_seeds_do_not_depend_on_count() {
    let spec = ModelSpec::gilbert(6, 0.5);
    let short = run_replicates(SEED, 10, |_, s| sample(&spec, s).unwrap());
    let long = run_replicates(SEED, 1000, |_, s| sample(&spec, s).unwrap());
    assert_eq!(short[..], long[..10]);
    assert_eq!(short[3], sample(&spec, split(SEED, 3)).unwrap());
}
