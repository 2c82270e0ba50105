use super::distribution::{DistributionKind, GraphDistribution};
use crate::error::{Error, Result};
use crate::models::{EdgeMassFn, ModelSpec, PairDomain, TypedVertexVector};
use crate::numeric::NeumaierSum;

/// Largest number of insertion sequences the oracle will walk.
pub const ORACLE_TERM_CAP: u128 = 10_000_000;
/// Largest `n` and `m` the oracle accepts.
pub const ORACLE_N_MAX: usize = 4;
pub const ORACLE_M_MAX: usize = 4;

fn falling(k: usize, m: usize) -> u128 {
    (0..m).map(|i| (k - i) as u128).product()
}

/// Exact law of a selection model by summing over every ordered sequence of
/// `m` distinct pairs. A sequence `k_1, .., k_m` has probability
/// `Π_t mu(k_t) / (total − Σ_{s<t} mu(k_s))`.
pub fn selection_distribution_oracle(mu: &EdgeMassFn, m: usize) -> Result<GraphDistribution> {
    let n = mu.n();
    if n > ORACLE_N_MAX || m > ORACLE_M_MAX {
        return Err(Error::TooLarge {
            what: "insertion sequences",
            n,
            max: ORACLE_N_MAX,
            states: format!("m={m} (oracle allows n<={ORACLE_N_MAX}, m<={ORACLE_M_MAX})"),
        });
    }
    mu.check_feasible(m)?;
    let items: Vec<usize> = (0..mu.values().len()).filter(|&k| mu.values()[k] > 0.0).collect();
    let terms = falling(items.len(), m);
    if terms > ORACLE_TERM_CAP {
        return Err(Error::TooLarge {
            what: "insertion sequences",
            n,
            max: ORACLE_N_MAX,
            states: format!("{terms}"),
        });
    }
    let kind = match mu.domain() {
        PairDomain::Ordered => DistributionKind::Digraph,
        PairDomain::Unordered => DistributionKind::Graph,
    };
    let total = mu.total();
    let mut acc = vec![NeumaierSum::new(); 1usize << kind.bits(n)];
    let mut seq = Vec::with_capacity(m);
    walk(mu.values(), &items, total, m, &mut seq, &mut acc);
    let pmf: Vec<f64> = acc.iter().map(NeumaierSum::value).collect();
    GraphDistribution::new(n, kind, pmf)
}

fn walk(mass: &[f64], items: &[usize], total: f64, m: usize, seq: &mut Vec<usize>, acc: &mut [NeumaierSum]) {
    if seq.len() == m {
        let mut prob = 1.0;
        let mut used = 0.0;
        let mut code = 0usize;
        for &k in seq.iter() {
            prob *= mass[k] / (total - used);
            used += mass[k];
            code |= 1 << k;
        }
        acc[code].add(prob);
        return;
    }
    for &k in items {
        if !seq.contains(&k) {
            seq.push(k);
            walk(mass, items, total, m, seq, acc);
            seq.pop();
        }
    }
}

/// Oracle for the law of an ESRG or ASRG spec, conditional on `vertices`.
pub fn esrg_exact_distribution_oracle(spec: &ModelSpec, vertices: &TypedVertexVector) -> Result<GraphDistribution> {
    spec.validate()?;
    if !spec.class.is_selection() {
        return Err(Error::InvalidSpec("the order-sum oracle needs a selection model".into()));
    }
    let mu = spec.selection_mass(vertices)?;
    Ok(selection_distribution_oracle(&mu, spec.m()?)?
        .with_conditioning(spec.instance.has_random_types().then_some(vertices.seed)))
}
