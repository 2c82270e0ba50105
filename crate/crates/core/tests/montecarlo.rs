use undirectify::exact::{event_probability, DistributionKind, GraphDistribution};
use undirectify::graph::EventSpec;
use undirectify::models::{exact_model_distribution_seeded, ModelSpec};
use undirectify::montecarlo::{
    empirical_tv, equivalence_pipeline, exact_insensitivity, insensitivity_probe, run_suite, series_rows,
    ExperimentConfig, PipelineModels, Suite, SuiteReport, VerdictReport,
};

fn row<'a>(rows: &'a [VerdictReport], name: &str) -> &'a VerdictReport {
    rows.iter().find(|r| r.statistic == name).unwrap_or_else(|| panic!("no row {name}"))
}

#[test]
fn self_tv_shrinks_with_replicates() {
    let spec = ModelSpec::gilbert(4, 0.3);
    let est: Vec<_> = [1_000, 10_000, 100_000]
        .iter()
        .map(|&r| empirical_tv(&spec, &spec, 4, r, 11).unwrap())
        .collect();
    for w in est.windows(2) {
        // monotone within the bootstrap intervals
        assert!(w[1].estimate <= w[0].ci.1, "{:?} then {:?}", w[0], w[1]);
    }
    assert!(est[2].estimate < est[0].estimate);
    assert!(est[2].estimate < 0.02);
}

#[test]
fn forgetting_directed_gilbert_matches_gilbert() {
    let p = 0.3f64;
    let a = ModelSpec::directed_gilbert(4, p);
    let b = ModelSpec::gilbert(4, 1.0 - (1.0 - p).powi(2));
    let same = empirical_tv(&a, &b, 4, 50_000, 5).unwrap();
    let other = empirical_tv(&a, &ModelSpec::gilbert(4, p), 4, 50_000, 5).unwrap();
    let self_tv = empirical_tv(&b, &b, 4, 50_000, 5).unwrap();
    assert!(same.estimate <= self_tv.ci.1 + 3.0 * same.bootstrap_se, "{same:?}");
    assert!(other.ci.0 > same.ci.1, "{other:?} vs {same:?}");
}

#[test]
fn triangle_after_one_added_edge() {
    // on three vertices one addition creates a triangle exactly from the
    // two-edge graphs, and can never destroy one
    for p in [0.1, 0.5, 0.8] {
        let dist = exact_model_distribution_seeded(&ModelSpec::gilbert(3, p), 0).unwrap();
        let rows = exact_insensitivity(&dist, &EventSpec::triangle(), 1).unwrap();
        let shift = 3.0 * p * p * (1.0 - p);
        assert!((row(&rows, "P(G ∈ Q)").estimate - p.powi(3)).abs() <= 1e-12);
        assert!((row(&rows, "Δ adversary toward Q").estimate - shift).abs() <= 1e-12);
        assert!((row(&rows, "Δ random addition").estimate - shift).abs() <= 1e-12);
        assert!(row(&rows, "Δ adversary away from Q").estimate.abs() <= 1e-12);
        assert!((row(&rows, "max |Δ|").estimate - shift).abs() <= 1e-12);
        assert!(rows.iter().all(|r| r.pass.is_none()));
    }
}

#[test]
fn sampled_probe_brackets_the_exact_shift() {
    let p = 0.5;
    let rows = insensitivity_probe(&ModelSpec::gilbert(3, p), &EventSpec::triangle(), 1, 20_000, 9).unwrap();
    let r = row(&rows, "Δ adversary toward Q");
    let shift = 3.0 * p * p * (1.0 - p);
    assert!((r.estimate - shift).abs() <= 4.0 * r.standard_error, "{r:?}");
}

#[test]
fn addition_budget_is_bounded_by_the_pairs() {
    let dist = GraphDistribution::point_mass(6, DistributionKind::Graph, 0).unwrap();
    assert!(exact_insensitivity(&dist, &EventSpec::triangle(), 16).is_err());
    let rows = exact_insensitivity(&dist, &EventSpec::triangle(), 15).unwrap();
    assert_eq!(row(&rows, "Δ adversary toward Q").estimate, 1.0);
}

#[test]
fn pipeline_on_a_four_point_grid() {
    let q = EventSpec::max_degree_at_least(3);
    let rows = equivalence_pipeline(&PipelineModels::GilbertEr { alpha: 1.0 }, &q, &[6, 8, 10, 12], 1_000, 4).unwrap();
    assert_eq!(rows.len(), 4 * 8);
    let report = SuiteReport::new("pipeline", rows);
    assert_eq!(series_rows(&report).len(), 32);
    assert!(report.pass);
}

#[test]
fn pipeline_event_frequencies_follow_exact_law() {
    // with m = 4 arcs on n = 4, p = 1/3: the forgotten IAG is Gilbert(1 − (1 − p)²)
    // and the coupled IEG is Gilbert(2p)
    let q = EventSpec::triangle();
    let rows = equivalence_pipeline(&PipelineModels::GilbertEr { alpha: 1.0 }, &q, &[4], 40_000, 8).unwrap();
    let p = 4.0 / 12.0;
    let law = |x: f64| {
        let d = exact_model_distribution_seeded(&ModelSpec::gilbert(4, x), 0).unwrap();
        event_probability(&d, &q).unwrap()
    };
    for (name, want) in [("P(IAG ∈ U⁻¹Q)", law(1.0 - (1.0f64 - p).powi(2))), ("P(IEG(π°) ∈ Q)", law(2.0 * p))] {
        let r = row(&rows, name);
        assert!((r.estimate - want).abs() <= 4.0 * r.standard_error, "{name}: {r:?} vs {want}");
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let cfg = ExperimentConfig {
        replicates: Some(500),
        tail_replicates: Some(500),
        oracle_replicates: Some(500),
        instances: Some(3),
        ..Default::default()
    };
    for suite in [Suite::IagIegApprox, Suite::AsrgEsrg, Suite::Pipeline] {
        let many = serde_json::to_string(&run_suite(suite, &cfg).unwrap()).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let one = pool.install(|| serde_json::to_string(&run_suite(suite, &cfg).unwrap()).unwrap());
        assert_eq!(many, one, "{suite}");
    }
}
