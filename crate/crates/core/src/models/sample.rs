use rand::Rng;

use super::mass::{EdgeMassFn, PairDomain, RejectionSampler, DEFAULT_REJECTION_CAP};
use super::probability::{ArcProbabilities, EdgeProbabilities};
use super::spec::{ModelClass, ModelSpec};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};
use crate::rng::{stream, EDGE_STREAM};

/// One draw from a model, directed or not.
#[derive(Clone, Debug, PartialEq)]
pub enum Sample {
    Graph(Graph),
    Digraph(Digraph),
}

/// One Bernoulli per ordered pair, in index order.
pub fn sample_iag_with<R: Rng + ?Sized>(pi: &ArcProbabilities, rng: &mut R) -> Digraph {
    let mut d = Digraph::empty(pi.n());
    for (k, &p) in pi.values().iter().enumerate() {
        if rng.random::<f64>() < p {
            d.insert_ordered(k);
        }
    }
    d
}

/// One Bernoulli per unordered pair, in index order.
pub fn sample_ieg_with<R: Rng + ?Sized>(pi: &EdgeProbabilities, rng: &mut R) -> Graph {
    let mut g = Graph::empty(pi.n());
    for (k, &p) in pi.values().iter().enumerate() {
        if rng.random::<f64>() < p {
            g.insert_pair(k);
        }
    }
    g
}

/// Places `m` distinct pairs by drawing from `mu` and redrawing pairs already
/// placed. Returns the pair indices in placement order.
pub fn sample_selection_with<R: Rng + ?Sized>(
    mu: &EdgeMassFn,
    m: usize,
    cap: u64,
    rng: &mut R,
) -> Result<Vec<usize>> {
    mu.check_feasible(m)?;
    let sampler = RejectionSampler::new(mu, cap);
    let mut present = vec![false; mu.values().len()];
    let mut order = Vec::with_capacity(m);
    for step in 1..=m {
        let k = sampler.draw_absent(rng, |k| present[k], step)?;
        present[k] = true;
        order.push(k);
    }
    Ok(order)
}

pub fn sample_asrg_with<R: Rng + ?Sized>(mu: &EdgeMassFn, m: usize, cap: u64, rng: &mut R) -> Result<Digraph> {
    if mu.domain() != PairDomain::Ordered {
        return Err(Error::InvalidSpec("ASRG needs a mass on ordered pairs".into()));
    }
    let mut d = Digraph::empty(mu.n());
    for k in sample_selection_with(mu, m, cap, rng)? {
        d.insert_ordered(k);
    }
    Ok(d)
}

pub fn sample_esrg_with<R: Rng + ?Sized>(mu: &EdgeMassFn, m: usize, cap: u64, rng: &mut R) -> Result<Graph> {
    if mu.domain() != PairDomain::Unordered {
        return Err(Error::InvalidSpec("ESRG needs a mass on unordered pairs".into()));
    }
    let mut g = Graph::empty(mu.n());
    for k in sample_selection_with(mu, m, cap, rng)? {
        g.insert_pair(k);
    }
    Ok(g)
}

fn expect_class(spec: &ModelSpec, class: ModelClass) -> Result<()> {
    spec.validate()?;
    if spec.class != class {
        return Err(Error::InvalidSpec(format!("expected a {class:?} spec, got {:?}", spec.class)));
    }
    Ok(())
}

/// Realizes `V_n` and then one independent edge per unordered pair.
pub fn sample_ieg(spec: &ModelSpec, seed: u64) -> Result<Graph> {
    expect_class(spec, ModelClass::IEG)?;
    let pi = spec.edge_probabilities(&spec.vertices(seed))?;
    Ok(sample_ieg_with(&pi, &mut stream(seed, EDGE_STREAM)))
}

pub fn sample_iag(spec: &ModelSpec, seed: u64) -> Result<Digraph> {
    expect_class(spec, ModelClass::IAG)?;
    let pi = spec.arc_probabilities(&spec.vertices(seed))?;
    Ok(sample_iag_with(&pi, &mut stream(seed, EDGE_STREAM)))
}

pub fn sample_esrg(spec: &ModelSpec, seed: u64) -> Result<Graph> {
    expect_class(spec, ModelClass::ESRG)?;
    let mu = spec.selection_mass(&spec.vertices(seed))?;
    sample_esrg_with(&mu, spec.m()?, DEFAULT_REJECTION_CAP, &mut stream(seed, EDGE_STREAM))
}

pub fn sample_asrg(spec: &ModelSpec, seed: u64) -> Result<Digraph> {
    expect_class(spec, ModelClass::ASRG)?;
    let mu = spec.selection_mass(&spec.vertices(seed))?;
    sample_asrg_with(&mu, spec.m()?, DEFAULT_REJECTION_CAP, &mut stream(seed, EDGE_STREAM))
}

/// Dispatches on the spec's class.
pub fn sample(spec: &ModelSpec, seed: u64) -> Result<Sample> {
    Ok(match spec.class {
        ModelClass::IEG => Sample::Graph(sample_ieg(spec, seed)?),
        ModelClass::IAG => Sample::Digraph(sample_iag(spec, seed)?),
        ModelClass::ESRG => Sample::Graph(sample_esrg(spec, seed)?),
        ModelClass::ASRG => Sample::Digraph(sample_asrg(spec, seed)?),
    })
}
