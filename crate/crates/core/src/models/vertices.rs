use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{stream, TYPE_STREAM};

/// The type carried by one vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum VertexType {
    /// No type beyond the vertex label.
    Label,
    /// A type in `{0, .., tau-1}`.
    Discrete { t: usize },
    /// A point on the unit torus with a positive weight.
    Spatial { position: Vec<f64>, weight: f64 },
}

/// A realized vertex vector `V_n` together with the seed it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypedVertexVector {
    pub types: Vec<VertexType>,
    pub seed: u64,
}

/// Law of the positive GIRG weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "law")]
pub enum WeightLaw {
    Constant { value: f64 },
    /// Pareto with density proportional to `w^-exponent` on `[scale, inf)`.
    Pareto { exponent: f64, scale: f64 },
}

impl WeightLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightLaw::Constant { value } if value > 0.0 && value.is_finite() => Ok(()),
            WeightLaw::Pareto { exponent, scale } if exponent > 1.0 && scale > 0.0 && scale.is_finite() => {
                Ok(())
            }
            _ => Err(Error::InvalidSpec(format!("bad weight law {self:?}"))),
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            WeightLaw::Constant { value } => value,
            WeightLaw::Pareto { exponent, scale } => {
                // 1 - U lies in (0, 1]
                let u = 1.0 - rng.random::<f64>();
                scale * u.powf(-1.0 / (exponent - 1.0))
            }
        }
    }
}

/// Checks that `pmf` is a probability vector within `tol`.
pub(crate) fn check_pmf(name: &str, pmf: &[f64], tol: f64) -> Result<()> {
    if pmf.is_empty() {
        return Err(Error::InvalidSpec(format!("{name} is empty")));
    }
    if pmf.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::InvalidSpec(format!("{name} has a negative or non-finite entry")));
    }
    let s: f64 = pmf.iter().sum();
    if (s - 1.0).abs() > tol {
        return Err(Error::InvalidSpec(format!("{name} sums to {s}, not 1")));
    }
    Ok(())
}

/// Inverse-CDF draw from a finite pmf.
pub(crate) fn draw_categorical<R: Rng>(pmf: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (k, &p) in pmf.iter().enumerate() {
        acc += p;
        if u < acc {
            return k;
        }
    }
    // rounding left a sliver above the last cumulative value
    pmf.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

impl TypedVertexVector {
    pub fn n(&self) -> usize {
        self.types.len()
    }

    pub fn labels(n: usize, seed: u64) -> Self {
        TypedVertexVector {
            types: vec![VertexType::Label; n],
            seed,
        }
    }

    pub fn from_discrete(types: &[usize], seed: u64) -> Self {
        TypedVertexVector {
            types: types.iter().map(|&t| VertexType::Discrete { t }).collect(),
            seed,
        }
    }

    /// i.i.d. types drawn from `pmf` on the type sub-stream of `seed`.
    pub fn discrete(n: usize, pmf: &[f64], seed: u64) -> Self {
        let mut rng = stream(seed, TYPE_STREAM);
        TypedVertexVector {
            types: (0..n)
                .map(|_| VertexType::Discrete {
                    t: draw_categorical(pmf, &mut rng),
                })
                .collect(),
            seed,
        }
    }

    /// Uniform torus positions in `[0,1)^dim` with i.i.d. weights.
    pub fn spatial(n: usize, dim: usize, weights: &WeightLaw, seed: u64) -> Self {
        let mut rng = stream(seed, TYPE_STREAM);
        TypedVertexVector {
            types: (0..n)
                .map(|_| {
                    let position = (0..dim).map(|_| rng.random::<f64>()).collect();
                    let weight = weights.draw(&mut rng);
                    VertexType::Spatial { position, weight }
                })
                .collect(),
            seed,
        }
    }

    /// The discrete type of vertex `v`, if it has one.
    pub fn discrete_type(&self, v: usize) -> Option<usize> {
        match self.types[v] {
            VertexType::Discrete { t } => Some(t),
            _ => None,
        }
    }

    /// Number of vertices of each discrete type in `0..tau`.
    pub fn type_counts(&self, tau: usize) -> Vec<usize> {
        let mut c = vec![0; tau];
        for v in 0..self.n() {
            if let Some(t) = self.discrete_type(v) {
                if t < tau {
                    c[t] += 1;
                }
            }
        }
        c
    }
}
