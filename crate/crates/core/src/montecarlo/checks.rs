use std::collections::BTreeMap;

use super::runner::{mean_se, run_replicates, Proportion};
use super::verdict::VerdictReport;
use crate::coupling::{
    approx_expected_errors, couple_asrg_esrg, couple_iag_ieg_approx, couple_iag_ieg_exact, martingale_transform,
    CoupledSample, Rule,
};
use crate::error::{Error, Result};
use crate::models::{ArcProbabilities, EdgeMassFn, ModelClass, ModelSpec, DEFAULT_REJECTION_CAP};
use crate::rng::{stream, EDGE_STREAM};

fn expect(spec: &ModelSpec, class: ModelClass) -> Result<()> {
    spec.validate()?;
    if spec.class != class {
        return Err(Error::InvalidSpec(format!("expected a {class:?} spec, got {:?}", spec.class)));
    }
    Ok(())
}

/// `π` on the realization of `V_n` drawn from `seed`. Every replicate of a
/// coupling check reuses it, so checks are conditional on `V_n`.
fn realized_pi(spec: &ModelSpec, seed: u64) -> Result<ArcProbabilities> {
    expect(spec, ModelClass::IAG)?;
    let pi = spec.arc_probabilities(&spec.vertices(seed))?;
    pi.summed().check_probabilities()?;
    Ok(pi)
}

fn check_replicates(replicates: usize) -> Result<()> {
    if replicates == 0 {
        return Err(Error::InvalidSpec("replicates must be at least 1".into()));
    }
    Ok(())
}

/// Replicates of one of the independent couplings on one realization of
/// `V_n`.
#[derive(Clone, Debug)]
pub struct IndependentRun {
    pub pi: ArcProbabilities,
    pub seed: u64,
    pub samples: Vec<CoupledSample>,
}

impl IndependentRun {
    pub fn exact(spec: &ModelSpec, replicates: usize, seed: u64) -> Result<Self> {
        check_replicates(replicates)?;
        expect(spec, ModelClass::IAG)?;
        let pi = spec.arc_probabilities(&spec.vertices(seed))?;
        let samples = run_replicates(seed, replicates, |_, s| couple_iag_ieg_exact(&pi, &mut stream(s, EDGE_STREAM)));
        Ok(IndependentRun { pi, seed, samples })
    }

    pub fn approx(spec: &ModelSpec, replicates: usize, seed: u64) -> Result<Self> {
        check_replicates(replicates)?;
        let pi = realized_pi(spec, seed)?;
        let samples = run_replicates(seed, replicates, |_, s| couple_iag_ieg_approx(&pi, &mut stream(s, EDGE_STREAM)))
            .into_iter()
            .collect::<Result<_>>()?;
        Ok(IndependentRun { pi, seed, samples })
    }

    fn n(&self) -> usize {
        self.pi.n()
    }

    fn stamp(&self, v: VerdictReport) -> VerdictReport {
        v.at_n(self.n()).with_run(self.samples.len(), self.seed)
    }

    /// `Ξ = 0` and an exact forgetful image in every replicate, and the mean
    /// edge frequency against `π′`.
    pub fn exact_verdicts(&self) -> Vec<VerdictReport> {
        let pairs = (self.n() * self.n().saturating_sub(1) / 2).max(1) as f64;
        let clean = self.samples.iter().all(|c| c.xi() == 0 && c.audit().is_ok());
        let target = crate::numeric::sum(self.pi.forgetful().values().iter().copied()) / pairs;
        let freq = mean_se(self.samples.iter().map(|c| c.graph.edge_count() as f64 / pairs));
        vec![
            self.stamp(VerdictReport::flag("exact coupling Ξ = 0", clean, "Ξ⁽¹⁾ = Ξ⁽²⁾ = 0 in every replicate")),
            self.stamp(VerdictReport::close(
                "edge frequency",
                freq.mean,
                freq.se,
                target,
                "mean of 1 − (1 − π(v,w))(1 − π(w,v))",
                3.0 * freq.se,
            )),
        ]
    }

    /// Mean `Ξ` against `Σ π(v,w)π(w,v)` and `(nπ↑)²`, and `Ξ⁽²⁾ = 0` in every
    /// replicate.
    pub fn approx_verdicts(&self) -> Vec<VerdictReport> {
        let est = mean_se(self.samples.iter().map(|c| c.xi() as f64));
        let exact = approx_expected_errors(&self.pi);
        let cap = (self.n() as f64 * self.pi.max()).powi(2);
        let xi2_zero = self.samples.iter().all(|c| c.xi2 == 0);
        let audited = self.samples.iter().all(|c| c.audit().is_ok());
        vec![
            self.stamp(VerdictReport::close("mean Ξ", est.mean, est.se, exact, "Σ π(v,w) π(w,v)", 3.0 * est.se)),
            self.stamp(VerdictReport::upper("mean Ξ", est.mean, est.se, cap, "(n π↑)²", 3.0 * est.se)),
            self.stamp(VerdictReport::flag("Ξ⁽²⁾ = 0", xi2_zero, "in every replicate")),
            self.stamp(VerdictReport::flag(
                "recomputed errors",
                audited,
                "tracked counters equal recomputed Ξ⁽¹⁾, Ξ⁽²⁾",
            )),
        ]
    }
}

/// Exact coupling: every replicate must have `Ξ = 0` and a graph equal to the
/// forgetful image; also reports the mean edge frequency against `π′`.
pub fn exact_coupling_check(spec: &ModelSpec, replicates: usize, seed: u64) -> Result<Vec<VerdictReport>> {
    Ok(IndependentRun::exact(spec, replicates, seed)?.exact_verdicts())
}

/// Approximate coupling: mean `Ξ` against `Σ π(v,w)π(w,v)`, the `(nπ↑)²` bound
/// and `Ξ⁽²⁾ = 0` in every replicate.
pub fn xi_mean_check(spec: &ModelSpec, replicates: usize, seed: u64) -> Result<Vec<VerdictReport>> {
    Ok(IndependentRun::approx(spec, replicates, seed)?.approx_verdicts())
}

/// Frequency of `Ξ > 2ω max(1, (nπ↑)²)` against `exp(−3ω/2)`.
pub fn chernoff_xi_check(spec: &ModelSpec, n: usize, omega: f64, replicates: usize, seed: u64) -> Result<VerdictReport> {
    check_replicates(replicates)?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidSpec(format!("omega={omega} must be positive")));
    }
    let mut spec = spec.clone();
    spec.n = n;
    let pi = realized_pi(&spec, seed)?;
    let threshold = 2.0 * omega * (n as f64 * pi.max()).powi(2).max(1.0);
    let hits = run_replicates(seed, replicates, |_, s| {
        couple_iag_ieg_approx(&pi, &mut stream(s, EDGE_STREAM)).map(|c| c.xi() as f64 > threshold)
    })
    .into_iter()
    .collect::<Result<Vec<bool>>>()?;
    let p = Proportion::from_flags(hits);
    let bound = (-1.5 * omega).exp();
    Ok(VerdictReport::upper(
        format!("P(Ξ > {threshold})"),
        p.p,
        p.se,
        bound,
        format!("exp(-3ω/2), ω={omega}"),
        3.0 * p.se,
    )
    .at_n(n)
    .with_ci(p.wald_ci())
    .with_run(replicates, seed))
}

/// Replicates of the selection coupling on one realization of `V_n`.
#[derive(Clone, Debug)]
pub struct SelectionRun {
    pub n: usize,
    pub m: usize,
    pub mu_up: f64,
    pub seed: u64,
    pub samples: Vec<CoupledSample>,
    /// Replicates dropped because a fresh edge could not be found.
    pub excluded: usize,
}

impl SelectionRun {
    /// `m` overrides the spec's edge count when given.
    pub fn new(spec: &ModelSpec, m: Option<usize>, replicates: usize, seed: u64) -> Result<Self> {
        check_replicates(replicates)?;
        expect(spec, ModelClass::ASRG)?;
        let m = match m {
            Some(m) => m,
            None => spec.m()?,
        };
        let mu = spec.arc_mass(&spec.vertices(seed))?;
        Self::with_mass(&mu, m, replicates, seed)
    }

    pub fn with_mass(mu: &EdgeMassFn, m: usize, replicates: usize, seed: u64) -> Result<Self> {
        let mu_up = mu.max();
        let outcomes = run_replicates(seed, replicates, |_, s| {
            couple_asrg_esrg(mu, m, DEFAULT_REJECTION_CAP, &mut stream(s, EDGE_STREAM))
        });
        let mut samples = Vec::with_capacity(replicates);
        let mut excluded = 0;
        for o in outcomes {
            match o {
                Ok(c) => samples.push(c),
                Err(Error::IterationCap { .. }) | Err(Error::DegenerateRealization(_)) => excluded += 1,
                Err(e) => return Err(e),
            }
        }
        Ok(SelectionRun {
            n: mu.n(),
            m,
            mu_up,
            seed,
            samples,
            excluded,
        })
    }

    fn f(&self) -> f64 {
        1.0 / self.mu_up
    }

    fn check_m(&self) -> Result<()> {
        if self.m as f64 >= self.f() {
            return Err(Error::Precondition(format!("m={} must be below 1/mu↑={}", self.m, self.f())));
        }
        Ok(())
    }

    fn stamp(&self, v: VerdictReport) -> VerdictReport {
        v.at_n(self.n).with_run(self.samples.len() + self.excluded, self.seed).with_excluded(self.excluded)
    }

    /// Frequency of `Ψ_m ≥ 1/r + m²μ↑` against `r m² μ↑`.
    pub fn psi_tail(&self, r: f64) -> Result<VerdictReport> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidSpec(format!("r={r} must be positive")));
        }
        self.check_m()?;
        let mm = (self.m * self.m) as f64 * self.mu_up;
        let threshold = 1.0 / r + mm;
        let p = Proportion::from_flags(self.samples.iter().map(|c| c.xi1 as f64 >= threshold));
        Ok(self.stamp(
            VerdictReport::upper(
                format!("P(Ψ_m ≥ {threshold:.6})"),
                p.p,
                p.se,
                r * mm,
                format!("r m² μ↑, r={r}, m={}", self.m),
                3.0 * p.se,
            )
            .with_ci(p.wald_ci()),
        ))
    }

    /// Increments are 0 or 1, equal the rule-III indicators, and `Ψ_m = Ξ⁽¹⁾`
    /// with `Ξ⁽²⁾ = 0`, in every replicate.
    pub fn increment_invariants(&self) -> VerdictReport {
        let ok = self.samples.iter().all(|c| {
            c.xi2 == 0
                && c.psi_trajectory.last() == Some(&c.xi1)
                && c.rules.iter().zip(c.psi_trajectory.windows(2)).all(|(rule, w)| {
                    let d = w[1] as i64 - w[0] as i64;
                    d == i64::from(*rule == Rule::III)
                })
        });
        self.stamp(VerdictReport::flag(
            "Ψ increments",
            ok,
            "increments in {0, 1}, equal to rule-III indicators; Ψ_m = Ξ⁽¹⁾, Ξ⁽²⁾ = 0",
        ))
    }

    /// Per `(s, Ψ_s)` cell with at least `min_obs` observations, the frequency
    /// of an increment against `(s − 2Ψ_s)/(1/μ↑ − s)`.
    pub fn increment_cells(&self, min_obs: usize) -> Result<Vec<VerdictReport>> {
        self.check_m()?;
        let mut cells: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for c in &self.samples {
            for (s, w) in c.psi_trajectory.windows(2).enumerate() {
                let e = cells.entry((s, w[0])).or_default();
                e.0 += 1;
                e.1 += w[1] - w[0];
            }
        }
        let f = self.f();
        Ok(cells
            .into_iter()
            .filter(|(_, (obs, _))| *obs >= min_obs)
            .map(|((s, k), (obs, hits))| {
                let p = Proportion::new(hits, obs);
                let bound = (s as f64 - 2.0 * k as f64) / (f - s as f64);
                self.stamp(
                    VerdictReport::upper(
                        format!("P(Ψ_{{s+1}} − Ψ_s = 1 | s={s}, Ψ_s={k})"),
                        p.p,
                        p.se,
                        bound,
                        "(s − 2Ψ_s)/(1/μ↑ − s)",
                        3.0 * p.se,
                    )
                    .with_ci(p.wald_ci())
                    .with_note(format!("{obs} observations")),
                )
            })
            .collect())
    }

    /// Terminal drift `E[M_m] − M_0` (one-sided, against 3 SE) and the
    /// largest disagreement between the closed and recursive forms of `M`.
    pub fn drift(&self) -> Result<Vec<VerdictReport>> {
        let mut terminal = Vec::with_capacity(self.samples.len());
        let mut worst: f64 = 0.0;
        for c in &self.samples {
            let t = martingale_transform(&c.psi_trajectory, self.mu_up)?;
            worst = worst.max(t.recompute_error(&c.psi_trajectory)?);
            terminal.push(t.m_values[self.m] - t.m_values[0]);
        }
        let d = mean_se(terminal);
        Ok(vec![
            self.stamp(VerdictReport::upper("E[M_m] − M_0", d.mean, d.se, 0.0, "0 (one-sided)", 3.0 * d.se)),
            self.stamp(VerdictReport::upper(
                "martingale recompute error",
                worst,
                0.0,
                1e-9,
                "closed form vs recursion",
                0.0,
            )),
        ])
    }
}

/// Tail check for the selection coupling error count.
pub fn psi_tail_check(spec: &ModelSpec, m: usize, r: f64, replicates: usize, seed: u64) -> Result<VerdictReport> {
    SelectionRun::new(spec, Some(m), replicates, seed)?.psi_tail(r)
}

/// Terminal drift of the transformed error process, conditional on the
/// realization of `V_n` drawn from `seed`.
pub fn supermartingale_drift_check(spec: &ModelSpec, m: usize, replicates: usize, seed: u64) -> Result<Vec<VerdictReport>> {
    SelectionRun::new(spec, Some(m), replicates, seed)?.drift()
}
