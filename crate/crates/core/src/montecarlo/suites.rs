use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::checks::{chernoff_xi_check, exact_coupling_check, xi_mean_check, SelectionRun};
use super::insensitivity::insensitivity_probe;
use super::pipeline::{equivalence_pipeline, PipelineModels};
use super::runner::{run_replicates, Proportion, Schedule};
use super::stats::chi_square;
use super::verdict::{SuiteReport, VerdictReport};
use crate::coupling::{couple_iag_ieg_exact, growth_bound};
use crate::error::{Error, Result};
use crate::exact::{
    event_probability, phi_pushforward, selection_distribution_oracle, tv_distance, witness_events, DistributionKind,
    GraphDistribution,
};
use crate::graph::{lift_event, Digraph, EventSpec, Monotonicity};
use crate::models::{
    cci_kernel, independent_distribution, ArcProbabilities, CciParameters, ModelClass, ModelSpec, TypedVertexVector,
};
use crate::rng::{split, stream, DEFAULT_SEED, EDGE_STREAM};

/// Exact identities are asserted to this absolute tolerance.
pub const EXACT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    GilbertPhi,
    IagIegExact,
    IagIegApprox,
    AsrgEsrg,
    Martingale,
    GrowthBound,
    CciBounds,
    Monotonicity,
    Pipeline,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::GilbertPhi,
        Suite::IagIegExact,
        Suite::IagIegApprox,
        Suite::AsrgEsrg,
        Suite::Martingale,
        Suite::GrowthBound,
        Suite::CciBounds,
        Suite::Monotonicity,
        Suite::Pipeline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GilbertPhi => "gilbert-phi",
            Suite::IagIegExact => "iag-ieg-exact",
            Suite::IagIegApprox => "iag-ieg-approx",
            Suite::AsrgEsrg => "asrg-esrg",
            Suite::Martingale => "martingale",
            Suite::GrowthBound => "growth-bound",
            Suite::CciBounds => "cci-bounds",
            Suite::Monotonicity => "monotonicity",
            Suite::Pipeline => "pipeline",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown suite {s:?}")))
    }
}

/// Settings for one suite run. Every field is optional; missing fields take
/// the suite's defaults, which reproduce the acceptance configurations.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_seed: Option<u64>,
    /// Replicates for the main Monte Carlo checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replicates: Option<usize>,
    /// Replicates for the tail checks that need many more draws.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_replicates: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_grid: Option<Vec<f64>>,
    /// The suite's main model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<ModelSpec>,
    /// Small selection models checked against their exact laws.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_specs: Option<Vec<ModelSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_replicates: Option<usize>,
    /// Overrides the main spec's edge count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Slack schedules `ω(n)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omegas: Option<Vec<Schedule>>,
    /// Rate schedules `r_n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rates: Option<Vec<Schedule>>,
    /// Random instances or pairs per check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub events: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_cell_observations: Option<usize>,
    /// Largest `m` for the growth-bound grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    /// Edges the insensitivity probe may add.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub added_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineModels>,
}

impl ExperimentConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: ExperimentConfig = serde_json::from_str(s)?;
        Ok(c)
    }

    pub fn seed(&self) -> u64 {
        self.base_seed.unwrap_or(DEFAULT_SEED)
    }

    /// Checks counts, grids and that every schedule is positive and finite
    /// on the grid the suite will use.
    pub fn validate(&self, suite: Suite) -> Result<()> {
        for (name, v) in [
            ("replicates", self.replicates),
            ("tail_replicates", self.tail_replicates),
            ("oracle_replicates", self.oracle_replicates),
            ("instances", self.instances),
        ] {
            if v == Some(0) {
                return Err(Error::InvalidSpec(format!("{name} must be at least 1")));
            }
        }
        if self.n_grid.as_ref().is_some_and(|g| g.is_empty()) {
            return Err(Error::InvalidSpec("n_grid must not be empty".into()));
        }
        if let Some(p) = &self.p_grid {
            if let Some(x) = p.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                return Err(Error::InvalidSpec(format!("p_grid entry {x} outside [0, 1]")));
            }
        }
        if let Some(s) = &self.spec {
            s.validate()?;
        }
        for s in self.oracle_specs.iter().flatten() {
            s.validate()?;
        }
        for e in self.events.iter().flatten() {
            EventSpec::parse(e)?;
        }
        let grid = match suite {
            Suite::IagIegApprox => self.n_grid.clone().unwrap_or_else(|| vec![self.main_spec(suite).n]),
            _ => vec![self.main_spec(suite).n],
        };
        for s in self.omegas.iter().chain(&self.rates).flatten() {
            for &n in &grid {
                s.eval(n)?;
            }
        }
        Ok(())
    }

    fn main_spec(&self, suite: Suite) -> ModelSpec {
        if let Some(s) = &self.spec {
            return s.clone();
        }
        match suite {
            Suite::IagIegExact => ModelSpec::directed_gilbert(4, 0.3),
            Suite::IagIegApprox => ModelSpec::directed_gilbert(10, 0.05),
            Suite::Monotonicity => ModelSpec::gilbert(3, 0.5),
            _ => ModelSpec::directed_classical_er(10, 5),
        }
    }

    fn events(&self) -> Result<Vec<EventSpec>> {
        match &self.events {
            Some(names) => names.iter().map(|e| EventSpec::parse(e)).collect(),
            None => Ok(EventSpec::builtins()),
        }
    }
}

/// Runs one suite. Hard checks carry a pass/fail outcome; the report passes
/// iff none of them failed.
pub fn run_suite(suite: Suite, config: &ExperimentConfig) -> Result<SuiteReport> {
    config.validate(suite)?;
    let checks = match suite {
        Suite::GilbertPhi => gilbert_phi(config)?,
        Suite::IagIegExact => iag_ieg_exact(config)?,
        Suite::IagIegApprox => iag_ieg_approx(config)?,
        Suite::AsrgEsrg => asrg_esrg(config)?,
        Suite::Martingale => martingale(config)?,
        Suite::GrowthBound => growth(config)?,
        Suite::CciBounds => cci_bounds(config)?,
        Suite::Monotonicity => monotonicity(config)?,
        Suite::Pipeline => pipeline(config)?,
    };
    Ok(SuiteReport::new(suite.name(), checks))
}

/// `Σ exp` normalized: a uniform draw from the simplex.
pub fn random_simplex<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    let x: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = x.iter().sum();
    x.into_iter().map(|v| v / s).collect()
}

/// Largest `|P(RD ∈ U⁻¹Q) − P(Φ(RD) ∈ Q)|` over the events.
fn event_transfer_gap(digraph_law: &GraphDistribution, phi: &GraphDistribution, events: &[EventSpec]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for q in events {
        let a = event_probability(digraph_law, q)?;
        let b = event_probability(phi, q)?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

fn gilbert_phi(c: &ExperimentConfig) -> Result<Vec<VerdictReport>> {
    let events = c.events()?;
    let mut rows = Vec::new();
    for &n in c.n_grid.as_deref().unwrap_or(&[2, 3, 4]) {
        for &p in c.p_grid.as_deref().unwrap_or(&[0.0, 0.1, 0.3, 0.5, 0.9, 1.0]) {
            let arcs = n * n.saturating_sub(1);
            let dgil = independent_distribution(n, DistributionKind::Digraph, &vec![p; arcs])?;
            let phi = phi_pushforward(&dgil)?;
            let p2 = 1.0 - (1.0 - p) * (1.0 - p);
            let gil = independent_distribution(n, DistributionKind::Graph, &vec![p2; arcs / 2])?;
            let tv = tv_distance(&phi, &gil)?;
            rows.push(
                VerdictReport::upper(format!("TV(Φ(DGil), Gil) p={p}"), tv, 0.0, EXACT_TOLERANCE, "exact", 0.0).at_n(n),
            );
            let gap = event_transfer_gap(&dgil, &phi, &events)?;
            rows.push(
                VerdictReport::upper(format!("event transfer p={p}"), gap, 0.0, EXACT_TOLERANCE, "exact", 0.0)
                    .at_n(n)
                    .with_note(format!("max over {} events", events.len())),
            );
        }
    }
    // witness identity on random pairs of laws on 3 vertices
    let pairs = c.instances.unwrap_or(100);
    let base = split(c.seed(), 0x57);
    let mut worst: f64 = 0.0;
    for i in 0..pairs {
        let mut rng = stream(base, i as u64);
        let a = GraphDistribution::new(3, DistributionKind::Graph, random_simplex(8, &mut rng))?;
        let b = GraphDistribution::new(3, DistributionKind::Graph, random_simplex(8, &mut rng))?;
        let w = witness_events(&a, &b)?;
        worst = worst.max((w.gap - tv_distance(&a, &b)?).abs());
    }
    rows.push(
        VerdictReport::upper("|gap(Q⁺) − TV|", worst, 0.0, EXACT_TOLERANCE, "exact", 0.0)
            .at_n(3)
            .with_run(pairs, c.seed())
            .with_note(format!("max over {pairs} random pairs")),
    );
    Ok(rows)
}

fn iag_ieg_exact(c: &ExperimentConfig) -> Result<Vec<VerdictReport>> {
    let events = c.events()?;
    let grid = c.n_grid.clone().unwrap_or_else(|| vec![3, 4]);
    let count = c.instances.unwrap_or(20);
    let base = split(c.seed(), 0x1A);
    let mut rows = Vec::new();
    let mut instances = Vec::with_capacity(count);
    for i in 0..count {
        let n = grid[i % grid.len()];
        let mut rng = stream(base, i as u64);
        let values: Vec<f64> = (0..n * (n - 1)).map(|_| rng.random()).collect();
        let pi = ArcProbabilities::from_ordered(n, values)?;
        let iag = independent_distribution(n, DistributionKind::Digraph, pi.values())?;
        let phi = phi_pushforward(&iag)?;
        let ieg = independent_distribution(n, DistributionKind::Graph, pi.forgetful().values())?;
        rows.push(
            VerdictReport::upper(format!("TV(Φ(IAG), IEG(π′)) #{i}"), tv_distance(&phi, &ieg)?, 0.0, EXACT_TOLERANCE, "exact", 0.0)
                .at_n(n),
        );
        rows.push(
            VerdictReport::upper(format!("event transfer #{i}"), event_transfer_gap(&iag, &phi, &events)?, 0.0, EXACT_TOLERANCE, "exact", 0.0)
                .at_n(n),
        );
        instances.push(pi);
    }
    let replicates = c.replicates.unwrap_or(100_000);
    let clean = run_replicates(c.seed(), replicates, |k, s| {
        let pi = &instances[k % instances.len()];
        let x = couple_iag_ieg_exact(pi, &mut stream(s, EDGE_STREAM));
        x.xi() == 0 && x.audit().is_ok()
    });
    rows.push(
        VerdictReport::flag("coupled Ξ = 0", clean.iter().all(|&b| b), format!("over {count} instances"))
            .with_run(replicates, c.seed()),
    );
    rows.extend(exact_coupling_check(&c.main_spec(Suite::IagIegExact), replicates, c.seed())?);
    Ok(rows)
}

fn iag_ieg_approx(c: &ExperimentConfig) -> Result<Vec<VerdictReport>> {
    let spec = c.main_spec(Suite::IagIegApprox);
    let mut rows = xi_mean_check(&spec, c.replicates.unwrap_or(100_000), c.seed())?;
    let omegas = c
        .omegas
        .clone()
        .unwrap_or_else(|| vec![Schedule::Constant { c: 1.0 }, Schedule::Constant { c: 5.0 }]);
    for &n in c.n_grid.as_deref().unwrap_or(&[spec.n]) {
        for w in &omegas {
            let omega = w.eval(n)?;
            let v = chernoff_xi_check(&spec, n, omega, c.tail_replicates.unwrap_or(1_000_000), c.seed())?;
            rows.push(v.with_note(format!("ω = {}", w.describe())));
        }
    }
    Ok(rows)
}

fn oracle_defaults() -> Vec<ModelSpec> {
    let mu = vec![vec![0.0, 0.3, 0.05], vec![0.1, 0.0, 0.2], vec![0.15, 0.2, 0.0]];
    vec![
        ModelSpec::directed_classical_er(3, 2),
        ModelSpec::custom_selection(ModelClass::ASRG, mu, 2),
    ]
}

fn code(words: &[u64]) -> usize {
    words.first().copied().unwrap_or(0) as usize
}

fn asrg_esrg(c: &ExperimentConfig) -> Result<Vec<VerdictReport>> {
    let mut rows = Vec::new();
    let reps = c.oracle_replicates.unwrap_or(200_000);
    for (i, spec) in c.oracle_specs.clone().unwrap_or_else(oracle_defaults).iter().enumerate() {
        if spec.class != ModelClass::ASRG {
            return Err(Error::InvalidSpec("oracle specs must be ASRG specs".into()));
        }
        let seed = split(c.seed(), 0x0A + i as u64);
        let mu = spec.arc_mass(&spec.vertices(seed))?;
        let m = spec.m()?;
        let run = SelectionRun::with_mass(&mu, m, reps, seed)?;
        let dlaw = selection_distribution_oracle(&mu, m)?;
        let glaw = selection_distribution_oracle(&mu.summed(), m)?;
        let mut dcount = vec![0usize; dlaw.pmf().len()];
        let mut gcount = vec![0usize; glaw.pmf().len()];
        for s in &run.samples {
            dcount[code(s.digraph.words())] += 1;
            gcount[code(s.graph.words())] += 1;
        }
        for (side, counts, law) in [("digraph", &dcount, &dlaw), ("graph", &gcount, &glaw)] {
            let x = chi_square(counts, law)?;
            let mut v = VerdictReport::info(format!("chi-square p-value, {side} side, spec #{i}"), x.p_value, 0.0)
                .at_n(spec.n)
                .with_run(reps, seed)
                .with_excluded(run.excluded)
                .with_note(format!("statistic {} on {} df, {} impossible", x.statistic, x.df, x.impossible));
            v.bound = Some(0.001);
            v.bound_formula = "p-value > 0.001".into();
            v.pass = Some(x.p_value > 0.001);
            rows.push(v);
        }
        rows.push(run.increment_invariants());
    }
    let spec = c.main_spec(Suite::AsrgEsrg);
    let run = SelectionRun::new(&spec, c.m, c.replicates.unwrap_or(100_000), c.seed())?;
    rows.push(run.increment_invariants());
    rows.extend(run.increment_cells(c.min_cell_observations.unwrap_or(500))?);
    let rates = c
        .rates
        .clone()
        .unwrap_or_else(|| vec![Schedule::Constant { c: 1.0 }, Schedule::Constant { c: 2.0 }]);
    for r in &rates {
        rows.push(run.psi_tail(r.eval(spec.n)?)?.with_note(format!("r = {}", r.describe())));
    }
    Ok(rows)
}

fn martingale(c: &ExperimentConfig) -> Result<Vec<VerdictReport>> {
    let spec = c.main_spec(Suite::Martingale);
    SelectionRun::new(&spec, c.m, c.replicates.unwrap_or(100_000), c.seed())?.drift()
}

/// The `(m, f)` grid: `m = 1..=m_max`, `f ∈ {2m+1, 10m, 100m}`.
pub fn growth_grid(m_max: usize) -> Vec<(usize, f64)> {
    (1..=m_max)
        .flat_map(|m| [2 * m + 1, 10 * m, 100 * m].map(|f| (m, f as f64)))
        .collect()
}

/// Rows for the growth sum: the half-gap chain form and the headline `m²/f`
/// form, then the `m²/(f−m)` and `2m²/f` forms.
pub fn growth_rows(m_max: usize) -> Result<Vec<VerdictReport>> {
    let mut rows = Vec::new();
    for (m, f) in growth_grid(m_max) {
        let g = growth_bound(m, f)?;
        let mm = (m * m) as f64;
        let tag = format!("growth sum m={m} f={f}");
        rows.push(VerdictReport::upper(&tag, g, 0.0, mm / (2.0 * (f - m as f64)), "m²/(2(f−m))", 0.0));
        if f - m as f64 >= f / 2.0 {
            rows.push(VerdictReport::upper(&tag, g, 0.0, mm / f, "m²/f (f−m ≥ f/2)", 0.0));
        }
        rows.push(VerdictReport::upper(&tag, g, 0.0, mm / (f - m as f64), "m²/(f−m)", 0.0));
        rows.push(VerdictReport::upper(&tag, g, 0.0, 2.0 * mm / f, "2m²/f", 0.0));
    }
    Ok(rows)
}

fn growth(c: &ExperimentConfig) -> Result<Vec<VerdictReport>> {
    growth_rows(c.m_max.unwrap_or(20))
}

/// Random valid CCI parameters with `tau, l, r` uniform on `1..=4`, `q` and
/// `p` uniform on their simplices, and indicator entries that are fair coins,
/// redrawn until every channel is used by some type.
pub fn random_cci<R: Rng + ?Sized>(rng: &mut R) -> CciParameters {
    let tau = rng.random_range(1..=4);
    let l = rng.random_range(1..=4);
    let r = rng.random_range(1..=4);
    let q = random_simplex(tau, rng);
    let flat = random_simplex(l * r, rng);
    let p = flat.chunks(r).map(<[f64]>::to_vec).collect();
    let indicator = |rng: &mut R, cols: usize| loop {
        let m: Vec<Vec<u8>> = (0..tau).map(|_| (0..cols).map(|_| u8::from(rng.random::<bool>())).collect()).collect();
        if (0..cols).all(|c| m.iter().any(|row| row[c] == 1)) {
            break m;
        }
    };
    let i = indicator(rng, l);
    let j = indicator(rng, r);
    let alpha = rng.random_range(0.5..2.0);
    CciParameters { tau, q, l, r, p, i, j, alpha }
}

/// Relative slack for comparing a computed mass with a bound it may equal.
const RELATIVE_SLACK: f64 = 1e-12;

fn cci_bounds(c: &ExperimentConfig) -> Result<Vec<VerdictReport>> {
    let count = c.instances.unwrap_or(100);
    let n = c.n_grid.as_ref().map_or(100, |g| g[0]);
    let realizations = c.replicates.unwrap_or(10_000);
    let base = split(c.seed(), 0xCC);
    let mut rows = Vec::new();
    for i in 0..count {
        let params = random_cci(&mut stream(base, i as u64));
        let kernel = cci_kernel(&params)?;
        let kb = params.kernel_bound();
        let kmax = kernel.max();
        rows.push(
            VerdictReport::upper(format!("κ↑ #{i}"), kmax, 0.0, kb, "α/(λ↓ϱ↓)", kb * RELATIVE_SLACK)
                .with_note(format!("tau={} l={} r={}", params.tau, params.l, params.r)),
        );
        let qmin = params.q_min();
        let nq2 = (n as f64 * qmin).powi(2);
        let stated = 1.0 / nq2;
        let corrected = 4.0 / nq2;
        let seed = split(base, 1 << 32 | i as u64);
        // (mass above 1/(n q↓)², counts not concentrated, concentrated but mass above 4/(n q↓)²)
        let outcomes = run_replicates(seed, realizations, |_, s| -> Result<(bool, bool, bool)> {
            let v = TypedVertexVector::discrete(n, &params.q, s);
            let conc = params.counts_concentrated(&v);
            let mu = match params.raw_mass_max(&v) {
                Ok(x) => x,
                Err(Error::DegenerateRealization(_)) => f64::INFINITY,
                Err(e) => return Err(e),
            };
            Ok((
                mu > stated * (1.0 + RELATIVE_SLACK),
                !conc,
                conc && mu > corrected * (1.0 + RELATIVE_SLACK),
            ))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let high = Proportion::from_flags(outcomes.iter().map(|o| o.0));
        let loose = Proportion::from_flags(outcomes.iter().map(|o| o.1));
        let wrong = outcomes.iter().filter(|o| o.2).count();
        let mut v = VerdictReport::upper(
            format!("P(μ↑ > 1/(n q↓)²) #{i}"),
            high.p,
            high.se,
            loose.p,
            "P(some L_i or R_j < q↓n/2)",
            0.0,
        )
        .at_n(n)
        .with_run(realizations, seed);
        v.pass = Some(high.hits <= loose.hits);
        rows.push(v);
        let cheb = params.chebyshev_bound(n);
        rows.push(
            VerdictReport::upper(
                format!("P(some L_i or R_j < q↓n/2) #{i}"),
                loose.p,
                loose.se,
                cheb,
                "l r · 4(1 − q↓)/(n q↓)",
                3.0 * loose.se,
            )
            .at_n(n)
            .with_ci(loose.wald_ci())
            .with_run(realizations, seed),
        );
        rows.push(
            VerdictReport::flag(
                format!("μ↑ ≤ 4/(n q↓)² when concentrated #{i}"),
                wrong == 0,
                format!("{wrong} concentrated realizations above 4/(n q↓)²"),
            )
            .at_n(n)
            .with_run(realizations, seed),
        );
    }
    Ok(rows)
}

/// Draws a digraph and a random subgraph of it on `n` vertices.
pub fn random_nested_digraphs<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Digraph, Digraph) {
    let density: f64 = rng.random();
    let mut big = Digraph::empty(n);
    for k in 0..n * n.saturating_sub(1) {
        if rng.random::<f64>() < density {
            big.insert_ordered(k);
        }
    }
    let mut small = big.clone();
    for k in big.ordered_indices().collect::<Vec<_>>() {
        if rng.random::<bool>() {
            small.remove_ordered(k);
        }
    }
    (small, big)
}

fn monotonicity(c: &ExperimentConfig) -> Result<Vec<VerdictReport>> {
    let grid = c.n_grid.clone().unwrap_or_else(|| vec![2, 3, 4, 5, 6]);
    let pairs = c.instances.unwrap_or(10_000);
    let mut rows = Vec::new();
    let events = c.events()?;
    for (e, q) in events.iter().enumerate() {
        if q.monotonicity() == Monotonicity::None {
            continue;
        }
        let lifted = lift_event(q);
        let seed = split(c.seed(), 0x30 + e as u64);
        let violations = run_replicates(seed, pairs, |_, s| {
            let mut rng = stream(s, 0);
            let n = grid[rng.random_range(0..grid.len())];
            let (small, big) = random_nested_digraphs(n, &mut rng);
            let (a, b) = (lifted.holds(&small), lifted.holds(&big));
            match q.monotonicity() {
                Monotonicity::Increasing => a && !b,
                Monotonicity::Decreasing => b && !a,
                Monotonicity::None => false,
            }
        })
        .into_iter()
        .filter(|&v| v)
        .count();
        let tag_ok = grid
            .iter()
            .all(|&n| q.falsify_tag(n, 1_000, &mut stream(seed, 1 + n as u64)).is_none());
        rows.push(
            VerdictReport::flag(
                format!("{} preserves {:?}", lifted.name(), q.monotonicity()),
                violations == 0 && tag_ok,
                format!("{violations} violating subset pairs; graph-level tag search clean: {tag_ok}"),
            )
            .with_run(pairs, seed),
        );
    }
    let spec = c.main_spec(Suite::Monotonicity);
    let r = c.added_edges.unwrap_or(1);
    let reps = c.replicates.unwrap_or(10_000);
    for (e, q) in events.iter().enumerate() {
        let seed = split(c.seed(), 0x50 + e as u64);
        for mut v in insensitivity_probe(&spec, q, r, reps, seed)? {
            v.statistic = format!("{}: {}", q.name(), v.statistic);
            rows.push(v);
        }
    }
    Ok(rows)
}

fn pipeline(c: &ExperimentConfig) -> Result<Vec<VerdictReport>> {
    let models = c.pipeline.clone().unwrap_or(PipelineModels::GilbertEr { alpha: 1.0 });
    let q = match c.events.as_deref() {
        Some([name, ..]) => EventSpec::parse(name)?,
        _ => EventSpec::max_degree_at_least(3),
    };
    let grid = c.n_grid.clone().unwrap_or_else(|| vec![6, 8, 10, 12]);
    equivalence_pipeline(&models, &q, &grid, c.replicates.unwrap_or(10_000), c.seed())
}
