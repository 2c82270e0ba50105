use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{pair_count, parse_hex_code, to_hex_code, Digraph, Enumerator, Graph};
use crate::numeric;

/// Tolerance on the total mass of a [`GraphDistribution`].
pub const TOTAL_MASS_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionKind {
    Graph,
    Digraph,
}

impl DistributionKind {
    /// Bits in a canonical code on `n` vertices.
    pub fn bits(self, n: usize) -> usize {
        match self {
            DistributionKind::Graph => pair_count(n),
            DistributionKind::Digraph => 2 * pair_count(n),
        }
    }
}

/// An exact pmf over all graphs or all digraphs on `n` vertices, stored densely
/// by canonical code.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphDistribution {
    n: usize,
    kind: DistributionKind,
    pmf: Vec<f64>,
    conditioned_on_seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionJson {
    n: usize,
    kind: DistributionKind,
    pmf: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conditioned_on_seed: Option<u64>,
}

/// Number of states, refusing sizes beyond the enumeration caps.
pub fn state_count(n: usize, kind: DistributionKind) -> Result<usize> {
    let e = Enumerator::default();
    match kind {
        DistributionKind::Graph => e.graph_states(n),
        DistributionKind::Digraph => e.digraph_states(n),
    }
}

impl GraphDistribution {
    /// Validates and wraps a dense pmf.
    pub fn new(n: usize, kind: DistributionKind, pmf: Vec<f64>) -> Result<Self> {
        let states = state_count(n, kind)?;
        if pmf.len() != states {
            return Err(Error::InvalidSpec(format!("expected {states} probabilities, got {}", pmf.len())));
        }
        if let Some(k) = pmf.iter().position(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidSpec(format!("mass at code {k:x} is {}", pmf[k])));
        }
        let total = numeric::sum(pmf.iter().copied());
        if (total - 1.0).abs() > TOTAL_MASS_TOLERANCE {
            return Err(Error::InvalidSpec(format!("total mass {total} differs from 1 by more than 1e-12")));
        }
        Ok(GraphDistribution {
            n,
            kind,
            pmf,
            conditioned_on_seed: None,
        })
    }

    pub fn point_mass(n: usize, kind: DistributionKind, code: u64) -> Result<Self> {
        let mut pmf = vec![0.0; state_count(n, kind)?];
        let slot = pmf
            .get_mut(code as usize)
            .ok_or_else(|| Error::InvalidGraph(format!("code {code:x} out of range")))?;
        *slot = 1.0;
        Self::new(n, kind, pmf)
    }

    pub fn with_conditioning(mut self, seed: Option<u64>) -> Self {
        self.conditioned_on_seed = seed;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// Seed of the vertex realization this pmf is conditional on, if any.
    pub fn conditioned_on_seed(&self) -> Option<u64> {
        self.conditioned_on_seed
    }

    pub fn prob(&self, code: u64) -> f64 {
        self.pmf.get(code as usize).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        numeric::sum(self.pmf.iter().copied())
    }

    pub fn graph(&self, code: u64) -> Result<Graph> {
        Graph::from_code(self.n, code)
    }

    pub fn digraph(&self, code: u64) -> Result<Digraph> {
        Digraph::from_code(self.n, code)
    }

    pub fn same_space(&self, other: &GraphDistribution) -> Result<()> {
        if self.n != other.n || self.kind != other.kind {
            return Err(Error::Mismatch(format!(
                "{:?} on n={} vs {:?} on n={}",
                self.kind, self.n, other.kind, other.n
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let pmf = self
            .pmf
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(k, &p)| (to_hex_code(&[k as u64]), p))
            .collect();
        serde_json::to_string_pretty(&DistributionJson {
            n: self.n,
            kind: self.kind,
            pmf,
            conditioned_on_seed: self.conditioned_on_seed,
        })
        .expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: DistributionJson = serde_json::from_str(s)?;
        let states = state_count(raw.n, raw.kind)?;
        let mut pmf = vec![0.0; states];
        let mut seen = vec![false; states];
        for (key, p) in &raw.pmf {
            let words = parse_hex_code(key)?;
            if words.len() > 1 || words.first().is_some_and(|&w| w as usize >= states) {
                return Err(Error::InvalidGraph(format!(
                    "code {key} does not decode to a {:?} on n={}",
                    raw.kind, raw.n
                )));
            }
            let k = words.first().copied().unwrap_or(0) as usize;
            if seen[k] {
                return Err(Error::Parse(format!("code {key} appears twice")));
            }
            seen[k] = true;
            pmf[k] = *p;
        }
        Ok(Self::new(raw.n, raw.kind, pmf)?.with_conditioning(raw.conditioned_on_seed))
    }
}
