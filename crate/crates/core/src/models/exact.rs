use std::collections::BTreeMap;

use super::mass::{EdgeMassFn, PairDomain};
use super::spec::{ModelClass, ModelSpec};
use super::vertices::TypedVertexVector;
use crate::error::{Error, Result};
use crate::exact::{state_count, DistributionKind, GraphDistribution};

/// Largest `m` for which selection-model laws are computed exactly.
pub const EXACT_SELECTION_M_MAX: usize = 6;

/// Law of independent indicators: bit `k` is on with probability `p[k]`.
pub fn independent_distribution(n: usize, kind: DistributionKind, p: &[f64]) -> Result<GraphDistribution> {
    let states = state_count(n, kind)?;
    debug_assert_eq!(1usize << p.len(), states);
    let mut pmf = Vec::with_capacity(states);
    pmf.push(1.0);
    for &pk in p {
        let len = pmf.len();
        for c in 0..len {
            let base = pmf[c];
            pmf.push(base * pk);
            pmf[c] = base * (1.0 - pk);
        }
    }
    GraphDistribution::new(n, kind, pmf)
}

/// Law of a selection model by dynamic programming over the set of placed
/// pairs. From a set `S` each absent pair `k` is added with probability
/// `mu(k) / Σ_{j ∉ S} mu(j)`.
pub fn selection_distribution(mu: &EdgeMassFn, m: usize, m_max: usize) -> Result<GraphDistribution> {
    let n = mu.n();
    let kind = match mu.domain() {
        PairDomain::Ordered => DistributionKind::Digraph,
        PairDomain::Unordered => DistributionKind::Graph,
    };
    let states = state_count(n, kind)?;
    if m > m_max {
        return Err(Error::TooLarge {
            what: "insertion orders",
            n,
            max: m_max,
            states: format!("m={m} exceeds the exact selection cap {m_max}"),
        });
    }
    mu.check_feasible(m)?;
    let items: Vec<usize> = (0..mu.values().len()).filter(|&k| mu.values()[k] > 0.0).collect();
    let mass: Vec<f64> = items.iter().map(|&k| mu.values()[k]).collect();
    let mut layer: BTreeMap<u64, f64> = BTreeMap::new();
    layer.insert(0, 1.0);
    for _ in 0..m {
        let mut next: BTreeMap<u64, f64> = BTreeMap::new();
        for (&set, &p) in &layer {
            let remaining: f64 = (0..items.len()).filter(|&i| set >> i & 1 == 0).map(|i| mass[i]).sum();
            for i in (0..items.len()).filter(|&i| set >> i & 1 == 0) {
                *next.entry(set | 1 << i).or_insert(0.0) += p * mass[i] / remaining;
            }
        }
        layer = next;
    }
    let mut pmf = vec![0.0; states];
    for (set, p) in layer {
        let code: usize = (0..items.len()).filter(|&i| set >> i & 1 == 1).map(|i| 1usize << items[i]).sum();
        pmf[code] = p;
    }
    GraphDistribution::new(n, kind, pmf)
}

/// Exact law of `spec` conditional on the realization `vertices`. The result
/// records the realization seed when the instance has random vertex types.
pub fn exact_model_distribution(spec: &ModelSpec, vertices: &TypedVertexVector) -> Result<GraphDistribution> {
    spec.validate()?;
    let n = vertices.n();
    let dist = match spec.class {
        ModelClass::IAG => {
            let pi = spec.arc_probabilities(vertices)?;
            independent_distribution(n, DistributionKind::Digraph, pi.values())?
        }
        ModelClass::IEG => {
            let pi = spec.edge_probabilities(vertices)?;
            independent_distribution(n, DistributionKind::Graph, pi.values())?
        }
        ModelClass::ASRG | ModelClass::ESRG => {
            selection_distribution(&spec.selection_mass(vertices)?, spec.m()?, EXACT_SELECTION_M_MAX)?
        }
    };
    Ok(dist.with_conditioning(spec.instance.has_random_types().then_some(vertices.seed)))
}

/// [`exact_model_distribution`] on the realization drawn from `seed`.
pub fn exact_model_distribution_seeded(spec: &ModelSpec, seed: u64) -> Result<GraphDistribution> {
    exact_model_distribution(spec, &spec.vertices(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{selection_distribution_oracle, tv_distance};
    use crate::rng::rng_from_seed;
    use rand::Rng;

    #[test]
    fn gilbert_two_vertices() {
        let d = exact_model_distribution_seeded(&ModelSpec::gilbert(2, 0.3), 0).unwrap();
        assert_eq!(d.pmf(), &[0.7, 0.3]);
        assert_eq!(d.conditioned_on_seed(), None);
    }

    #[test]
    fn directed_gilbert_uniform() {
        let d = exact_model_distribution_seeded(&ModelSpec::directed_gilbert(2, 0.5), 0).unwrap();
        assert_eq!(d.pmf(), &[0.25; 4]);
    }

    #[test]
    fn classical_er_single_edge() {
        let d = exact_model_distribution_seeded(&ModelSpec::classical_er(3, 1), 0).unwrap();
        for code in [1, 2, 4] {
            assert!((d.prob(code) - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn dp_agrees_with_order_sum() {
        let mut rng = rng_from_seed(21);
        for domain in [PairDomain::Unordered, PairDomain::Ordered] {
            for n in 2..=4 {
                for _ in 0..5 {
                    let len = domain.len(n);
                    let w: Vec<f64> = (0..len).map(|_| if rng.random::<f64>() < 0.2 { 0.0 } else { rng.random() }).collect();
                    let Ok(mu) = EdgeMassFn::normalized(n, domain, w) else { continue };
                    for m in 0..=mu.positive_count().min(4) {
                        let a = selection_distribution(&mu, m, EXACT_SELECTION_M_MAX).unwrap();
                        let b = selection_distribution_oracle(&mu, m).unwrap();
                        assert!(tv_distance(&a, &b).unwrap() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn caps() {
        let mu = EdgeMassFn::uniform(5, PairDomain::Unordered).unwrap();
        assert!(selection_distribution(&mu, 7, EXACT_SELECTION_M_MAX).is_err());
        assert!(exact_model_distribution_seeded(&ModelSpec::gilbert(7, 0.5), 0).is_err());
    }
}
