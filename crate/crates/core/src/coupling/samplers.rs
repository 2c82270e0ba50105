use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{forgetful_map, Digraph, Graph};
use crate::models::{ArcProbabilities, EdgeMassFn, PairDomain, RejectionSampler};

/// Which rule placed the graph-side edge in a selection coupling step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// The arc lands on an existing edge: draw a fresh edge.
    I,
    /// The arc opens a new location: place the matching edge.
    II,
    /// The arc completes a bidirectional pair: draw a fresh edge.
    III,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub i: usize,
    pub ii: usize,
    pub iii: usize,
}

/// A jointly sampled graph and digraph with their location errors.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledSample {
    pub graph: Graph,
    pub digraph: Digraph,
    /// Pairs with an edge but no arc in either direction.
    pub xi1: usize,
    /// Pairs with an arc but no edge.
    pub xi2: usize,
    /// `Ψ_0, .., Ψ_m`; empty for the independent couplings.
    pub psi_trajectory: Vec<usize>,
    /// Rule applied at each step; empty for the independent couplings.
    pub rules: Vec<Rule>,
    pub rule_counts: RuleCounts,
}

impl CoupledSample {
    pub fn xi(&self) -> usize {
        self.xi1 + self.xi2
    }

    /// Recomputes the errors from the two structures and compares them with
    /// the tracked counters.
    pub fn audit(&self) -> Result<()> {
        let (x1, x2) = location_errors(&self.graph, &self.digraph)?;
        if (x1, x2) != (self.xi1, self.xi2) {
            return Err(Error::Mismatch(format!(
                "tracked errors ({}, {}) but structures give ({x1}, {x2})",
                self.xi1, self.xi2
            )));
        }
        Ok(())
    }
}

/// `(Ξ⁽¹⁾, Ξ⁽²⁾)` between a graph and a digraph on the same vertex set.
pub fn location_errors(graph: &Graph, digraph: &Digraph) -> Result<(usize, usize)> {
    if graph.n() != digraph.n() {
        return Err(Error::Mismatch(format!("graph on n={} vs digraph on n={}", graph.n(), digraph.n())));
    }
    let u = forgetful_map(digraph);
    let (mut x1, mut x2) = (0, 0);
    for (a, b) in graph.words().iter().zip(u.words()) {
        x1 += (a & !b).count_ones() as usize;
        x2 += (b & !a).count_ones() as usize;
    }
    Ok((x1, x2))
}

fn independent_sample(graph: Graph, digraph: Digraph, xi1: usize) -> CoupledSample {
    CoupledSample {
        graph,
        digraph,
        xi1,
        xi2: 0,
        psi_trajectory: Vec::new(),
        rules: Vec::new(),
        rule_counts: RuleCounts::default(),
    }
}

/// Draws both arc indicators of every pair and puts an edge wherever at least
/// one arc is present. The graph is exactly the forgetful image.
pub fn couple_iag_ieg_exact<R: Rng + ?Sized>(pi: &ArcProbabilities, rng: &mut R) -> CoupledSample {
    let n = pi.n();
    let mut d = Digraph::empty(n);
    let mut g = Graph::empty(n);
    for (k, c) in pi.values().chunks(2).enumerate() {
        let fwd = rng.random::<f64>() < c[0];
        let bwd = rng.random::<f64>() < c[1];
        if fwd {
            d.insert_ordered(2 * k);
        }
        if bwd {
            d.insert_ordered(2 * k + 1);
        }
        if fwd || bwd {
            g.insert_pair(k);
        }
    }
    independent_sample(g, d, 0)
}

/// Couples the edge indicator of `IEG(π°)` with the arcs of `IAG(π)`.
///
/// Per pair with `a = π(v,w)`, `b = π(w,v)`: no edge and no arc with
/// probability `1 − a − b`; an edge but no arc with probability `ab`;
/// otherwise an edge together with arcs drawn from the law of the two
/// indicators given that at least one is on.
pub fn couple_iag_ieg_approx<R: Rng + ?Sized>(pi: &ArcProbabilities, rng: &mut R) -> Result<CoupledSample> {
    pi.summed().check_probabilities()?;
    let n = pi.n();
    let mut d = Digraph::empty(n);
    let mut g = Graph::empty(n);
    let mut xi1 = 0;
    for (k, c) in pi.values().chunks(2).enumerate() {
        let (a, b) = (c[0], c[1]);
        let both = a * b;
        let u: f64 = rng.random();
        if u < both {
            g.insert_pair(k);
            xi1 += 1;
        } else if u < a + b {
            g.insert_pair(k);
            let fwd_only = a * (1.0 - b);
            let bwd_only = b * (1.0 - a);
            let w = rng.random::<f64>() * (fwd_only + bwd_only + both);
            if w < fwd_only {
                d.insert_ordered(2 * k);
            } else if w < fwd_only + bwd_only {
                d.insert_ordered(2 * k + 1);
            } else {
                d.insert_ordered(2 * k);
                d.insert_ordered(2 * k + 1);
            }
        }
    }
    Ok(independent_sample(g, d, xi1))
}

/// `E[Ξ]` under [`couple_iag_ieg_approx`]: `Σ_pairs π(v,w) π(w,v)`.
pub fn approx_expected_errors(pi: &ArcProbabilities) -> f64 {
    crate::numeric::sum(pi.values().chunks(2).map(|c| c[0] * c[1]))
}

/// Builds `ASRG(μ, m)` arc by arc and `ESRG(μ°, m)` alongside it.
///
/// Each arc `(v,w)` is drawn from `μ` until it is new. If `(w,v)` is already
/// present rule III applies, else if `{v,w}` is already an edge rule I
/// applies; both place a fresh edge drawn from `μ°` until it is new. Otherwise
/// rule II places `{v,w}`. Location errors are recomputed after every step and
/// must equal `Ψ`.
pub fn couple_asrg_esrg<R: Rng + ?Sized>(mu: &EdgeMassFn, m: usize, cap: u64, rng: &mut R) -> Result<CoupledSample> {
    if mu.domain() != PairDomain::Ordered {
        return Err(Error::InvalidSpec("the selection coupling needs a mass on ordered pairs".into()));
    }
    let folded = mu.summed();
    mu.check_feasible(m)?;
    folded.check_feasible(m)?;
    let arcs = RejectionSampler::new(mu, cap);
    let edges = RejectionSampler::new(&folded, cap);
    let n = mu.n();
    let mut d = Digraph::empty(n);
    let mut g = Graph::empty(n);
    let mut psi = 0;
    let mut trajectory = Vec::with_capacity(m + 1);
    trajectory.push(0);
    let mut rules = Vec::with_capacity(m);
    let mut counts = RuleCounts::default();
    for step in 1..=m {
        let k = arcs.draw_absent(rng, |k| d.has_ordered(k), step)?;
        d.insert_ordered(k);
        let pair = k / 2;
        let rule = if d.has_ordered(k ^ 1) {
            Rule::III
        } else if g.has_pair(pair) {
            Rule::I
        } else {
            Rule::II
        };
        match rule {
            Rule::II => {
                g.insert_pair(pair);
                counts.ii += 1;
            }
            Rule::I | Rule::III => {
                let e = edges.draw_absent(rng, |e| g.has_pair(e), step)?;
                g.insert_pair(e);
                if rule == Rule::III {
                    psi += 1;
                    counts.iii += 1;
                } else {
                    counts.i += 1;
                }
            }
        }
        let (x1, x2) = location_errors(&g, &d)?;
        if x1 + x2 != psi || x2 != 0 {
            return Err(Error::Mismatch(format!(
                "after step {step}: tracked Ψ={psi}, structures give ({x1}, {x2})"
            )));
        }
        rules.push(rule);
        trajectory.push(psi);
    }
    Ok(CoupledSample {
        graph: g,
        digraph: d,
        xi1: psi,
        xi2: 0,
        psi_trajectory: trajectory,
        rules,
        rule_counts: counts,
    })
}
