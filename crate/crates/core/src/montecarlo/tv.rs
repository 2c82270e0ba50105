use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::runner::{mean_se, run_replicates};
use crate::error::{Error, Result};
use crate::graph::forgetful_map;
use crate::models::{sample, ModelSpec, Sample};
use crate::rng::{split, stream};

/// Number of bootstrap resamples behind every TV interval.
pub const BOOTSTRAP_RESAMPLES: usize = 200;

/// Plug-in TV estimate with a percentile bootstrap interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TvEstimate {
    pub estimate: f64,
    pub ci: (f64, f64),
    pub bootstrap_se: f64,
    pub replicates: usize,
    pub seed: u64,
    /// Distinct structures seen across both samples.
    pub observed_states: usize,
    /// `log2` of the size of the compared state space.
    pub state_bits: usize,
    pub warning: Option<String>,
}

fn key(s: Sample, forget: bool) -> Vec<u64> {
    match s {
        Sample::Graph(g) => g.words().to_vec(),
        Sample::Digraph(d) if forget => forgetful_map(&d).words().to_vec(),
        Sample::Digraph(d) => d.words().to_vec(),
    }
}

fn plug_in_tv(ca: &[u32], cb: &[u32], na: usize, nb: usize) -> f64 {
    let (na, nb) = (na as f64, nb as f64);
    0.5 * ca
        .iter()
        .zip(cb)
        .map(|(&x, &y)| (x as f64 / na - y as f64 / nb).abs())
        .sum::<f64>()
}

/// Half the L1 distance between the empirical pmfs of `replicates` draws
/// from each spec at vertex count `n`.
///
/// If exactly one spec is directed its draws are mapped through the
/// forgetful map first. Sample `a` uses seeds `split(split(seed, 0), k)`,
/// sample `b` uses `split(split(seed, 1), k)`.
pub fn empirical_tv(spec_a: &ModelSpec, spec_b: &ModelSpec, n: usize, replicates: usize, seed: u64) -> Result<TvEstimate> {
    if replicates == 0 {
        return Err(Error::InvalidSpec("replicates must be at least 1".into()));
    }
    let (mut a, mut b) = (spec_a.clone(), spec_b.clone());
    a.n = n;
    b.n = n;
    a.validate()?;
    b.validate()?;
    let (da, db) = (a.class.is_directed(), b.class.is_directed());
    let forget = da != db;
    let bits = if da && db { n * n.saturating_sub(1) } else { n * n.saturating_sub(1) / 2 };

    let draw = |spec: &ModelSpec, base: u64| -> Result<Vec<Vec<u64>>> {
        run_replicates(base, replicates, |_, s| sample(spec, s).map(|x| key(x, forget)))
            .into_iter()
            .collect()
    };
    let xs = draw(&a, split(seed, 0))?;
    let ys = draw(&b, split(seed, 1))?;

    // Dense ids in key order so the estimate does not depend on hashing.
    let mut ids: BTreeMap<&[u64], usize> = BTreeMap::new();
    for k in xs.iter().chain(&ys) {
        ids.entry(k.as_slice()).or_insert(0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    let ia: Vec<usize> = xs.iter().map(|k| ids[k.as_slice()]).collect();
    let ib: Vec<usize> = ys.iter().map(|k| ids[k.as_slice()]).collect();
    let states = ids.len();

    let counts = |idx: &[usize]| {
        let mut c = vec![0u32; states];
        for &i in idx {
            c[i] += 1;
        }
        c
    };
    let estimate = plug_in_tv(&counts(&ia), &counts(&ib), replicates, replicates);

    let boot_base = split(seed, 2);
    let mut boots: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream(boot_base, r as u64);
            let mut ca = vec![0u32; states];
            let mut cb = vec![0u32; states];
            for _ in 0..replicates {
                ca[ia[rng.random_range(0..replicates)]] += 1;
            }
            for _ in 0..replicates {
                cb[ib[rng.random_range(0..replicates)]] += 1;
            }
            plug_in_tv(&ca, &cb, replicates, replicates)
        })
        .collect();
    let se = mean_se(boots.iter().copied()).se * (BOOTSTRAP_RESAMPLES as f64).sqrt();
    boots.sort_by(f64::total_cmp);
    let lo = boots[(BOOTSTRAP_RESAMPLES as f64 * 0.025) as usize];
    let hi = boots[(BOOTSTRAP_RESAMPLES as f64 * 0.975) as usize - 1];

    let warning = if bits >= 64 || (1u64 << bits) as f64 > replicates as f64 / 10.0 {
        Some(format!(
            "state space of 2^{bits} structures exceeds replicates/10; the plug-in estimate is biased upward"
        ))
    } else {
        None
    };
    Ok(TvEstimate {
        estimate,
        ci: (lo.min(estimate), hi.max(estimate)),
        bootstrap_se: se,
        replicates,
        seed,
        observed_states: states,
        state_bits: bits,
        warning,
    })
}
