use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{pair_count, PairIndex};

/// Default number of draws allowed while placing one edge or arc.
pub const DEFAULT_REJECTION_CAP: u64 = 1_000_000;

/// Tolerance on the total mass of an [`EdgeMassFn`].
pub const MASS_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairDomain {
    Ordered,
    Unordered,
}

impl PairDomain {
    pub fn len(self, n: usize) -> usize {
        match self {
            PairDomain::Ordered => 2 * pair_count(n),
            PairDomain::Unordered => pair_count(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairDomain::Ordered => "ordered",
            PairDomain::Unordered => "unordered",
        }
    }
}

/// A mass function on the ordered or unordered pairs of a realized `V_n`,
/// indexed by [`PairIndex`]. Self-pairs carry no mass.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeMassFn {
    n: usize,
    domain: PairDomain,
    mass: Vec<f64>,
}

impl EdgeMassFn {
    pub fn new(n: usize, domain: PairDomain, mass: Vec<f64>) -> Result<Self> {
        if mass.len() != domain.len(n) {
            return Err(Error::InvalidSpec(format!(
                "expected {} {} masses, got {}",
                domain.len(n),
                domain.name(),
                mass.len()
            )));
        }
        if mass.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidSpec("masses must be finite and nonnegative".into()));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidSpec(format!("mass sums to {total}, not 1")));
        }
        Ok(EdgeMassFn { n, domain, mass })
    }

    /// Scales nonnegative weights to total mass 1.
    pub fn normalized(n: usize, domain: PairDomain, weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::DegenerateRealization("no pair carries positive mass".into()));
        }
        Self::new(n, domain, weights.into_iter().map(|x| x / total).collect())
    }

    /// Keeps the masses as given, requiring only `0 < total <= 1`. Samplers
    /// condition on the pairs that exist, so the missing mass behaves like
    /// mass on self-pairs that is always redrawn.
    pub fn defective(n: usize, domain: PairDomain, mass: Vec<f64>) -> Result<Self> {
        if mass.len() != domain.len(n) || mass.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidSpec("bad defective mass vector".into()));
        }
        let total: f64 = mass.iter().sum();
        if !(total > 0.0) || total > 1.0 + MASS_TOLERANCE {
            return Err(Error::DegenerateRealization(format!("total mass {total} outside (0, 1]")));
        }
        Ok(EdgeMassFn { n, domain, mass })
    }

    pub fn uniform(n: usize, domain: PairDomain) -> Result<Self> {
        let len = domain.len(n);
        if len == 0 {
            return Err(Error::InvalidSpec(format!("no pairs on n={n} vertices")));
        }
        Self::new(n, domain, vec![1.0 / len as f64; len])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> PairDomain {
        self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.mass
    }

    pub fn get(&self, v: usize, w: usize) -> f64 {
        if v == w {
            return 0.0;
        }
        match self.domain {
            PairDomain::Ordered => self.mass[PairIndex::ordered(self.n, v, w)],
            PairDomain::Unordered => self.mass[PairIndex::unordered(self.n, v, w)],
        }
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// `mu↑`, the largest mass on a single pair.
    pub fn max(&self) -> f64 {
        self.mass.iter().copied().fold(0.0, f64::max)
    }

    pub fn positive_count(&self) -> usize {
        self.mass.iter().filter(|&&x| x > 0.0).count()
    }

    /// `mu(v,w) + mu(w,v)` on unordered pairs. Unordered input is returned as is.
    pub fn summed(&self) -> EdgeMassFn {
        match self.domain {
            PairDomain::Unordered => self.clone(),
            PairDomain::Ordered => EdgeMassFn {
                n: self.n,
                domain: PairDomain::Unordered,
                mass: self.mass.chunks(2).map(|c| c[0] + c[1]).collect(),
            },
        }
    }

    /// Errors unless `m` pairs of positive mass exist.
    pub fn check_feasible(&self, m: usize) -> Result<()> {
        let available = self.positive_count();
        if m > available {
            return Err(Error::Infeasible {
                m,
                available,
                domain: self.domain.name(),
            });
        }
        Ok(())
    }
}

/// Draws pair indices from a mass function, optionally retrying until an
/// index outside a given set appears.
#[derive(Clone, Debug)]
pub struct RejectionSampler {
    items: Vec<usize>,
    dist: Option<WeightedIndex<f64>>,
    cap: u64,
}

impl RejectionSampler {
    pub fn new(mass: &EdgeMassFn, cap: u64) -> Self {
        let items: Vec<usize> = (0..mass.mass.len()).filter(|&k| mass.mass[k] > 0.0).collect();
        let dist = if items.is_empty() {
            None
        } else {
            Some(WeightedIndex::new(items.iter().map(|&k| mass.mass[k])).expect("positive weights"))
        };
        RejectionSampler { items, dist, cap }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        self.dist.as_ref().map(|d| self.items[d.sample(rng)])
    }

    /// Repeats [`draw`](Self::draw) until `present` is false. `step` is only
    /// used in the error when the cap is hit.
    pub fn draw_absent<R, F>(&self, rng: &mut R, present: F, step: usize) -> Result<usize>
    where
        R: Rng + ?Sized,
        F: Fn(usize) -> bool,
    {
        let dist = self
            .dist
            .as_ref()
            .ok_or_else(|| Error::DegenerateRealization("no pair carries positive mass".into()))?;
        for _ in 0..self.cap {
            let k = self.items[dist.sample(rng)];
            if !present(k) {
                return Ok(k);
            }
        }
        Err(Error::IterationCap { cap: self.cap, step })
    }
}
