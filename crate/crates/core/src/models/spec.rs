use serde::{Deserialize, Serialize};

use super::cci::{cci_kernel, cci_mass, CciParameters};
use super::mass::{EdgeMassFn, PairDomain};
use super::probability::{
    girg_probability, irg_probability, ArcProbabilities, ConstantProbability, EdgeProbabilities,
    EdgeProbabilityFn, Kernel, MatrixProbability,
};
use super::vertices::{check_pmf, TypedVertexVector, WeightLaw};
use crate::error::{Error, Result};
use crate::graph::{pair_count, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelClass {
    /// Independent arc graph.
    IAG,
    /// Independent edge graph.
    IEG,
    /// Arc selection random graph.
    ASRG,
    /// Edge selection random graph.
    ESRG,
}

impl ModelClass {
    pub fn is_directed(self) -> bool {
        matches!(self, ModelClass::IAG | ModelClass::ASRG)
    }

    pub fn is_selection(self) -> bool {
        matches!(self, ModelClass::ASRG | ModelClass::ESRG)
    }
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CciInstance {
    #[serde(flatten)]
    pub params: CciParameters,
    /// Overrides `floor(alpha n)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Rescale the mass to 1 after dropping self-pairs.
    #[serde(default = "default_true")]
    pub renormalize: bool,
}

/// Explicit per-vertex parameters: `pi` for independent models, `mu` and `m`
/// for selection models. Both are `n x n` matrices; the diagonal is ignored.
/// For ESRG the matrix is read as an ordered mass and folded onto unordered
/// pairs, `mu(v,w) + mu(w,v)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CustomInstance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "instance", content = "params", rename_all = "kebab-case")]
pub enum Instance {
    Gilbert {
        p: f64,
    },
    DirectedGilbert {
        p: f64,
    },
    Irg {
        type_pmf: Vec<f64>,
        kernel: Kernel,
    },
    Ird {
        type_pmf: Vec<f64>,
        kernel: Kernel,
    },
    Girg {
        alpha: f64,
        lambda: f64,
        dim: usize,
        weights: WeightLaw,
    },
    ClassicalEr {
        m: usize,
    },
    DirectedClassicalEr {
        m: usize,
    },
    Cci(CciInstance),
    Custom(CustomInstance),
}

impl Instance {
    pub fn name(&self) -> &'static str {
        match self {
            Instance::Gilbert { .. } => "gilbert",
            Instance::DirectedGilbert { .. } => "directed-gilbert",
            Instance::Irg { .. } => "irg",
            Instance::Ird { .. } => "ird",
            Instance::Girg { .. } => "girg",
            Instance::ClassicalEr { .. } => "classical-er",
            Instance::DirectedClassicalEr { .. } => "directed-classical-er",
            Instance::Cci(_) => "cci",
            Instance::Custom(_) => "custom",
        }
    }

    fn allows(&self, class: ModelClass) -> bool {
        use ModelClass::*;
        match self {
            Instance::Gilbert { .. } | Instance::Irg { .. } => class == IEG,
            Instance::DirectedGilbert { .. } | Instance::Ird { .. } => class == IAG,
            Instance::Girg { .. } => matches!(class, IAG | IEG),
            Instance::ClassicalEr { .. } => class == ESRG,
            Instance::DirectedClassicalEr { .. } => class == ASRG,
            Instance::Cci(_) => matches!(class, ASRG | ESRG),
            Instance::Custom(_) => true,
        }
    }

    /// Whether vertices carry random types, so exact results are conditional
    /// on a realization.
    pub fn has_random_types(&self) -> bool {
        matches!(
            self,
            Instance::Irg { .. } | Instance::Ird { .. } | Instance::Girg { .. } | Instance::Cci(_)
        )
    }
}

/// A model class, a named instance with parameters, the vertex count and an
/// optional seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub class: ModelClass,
    #[serde(flatten)]
    pub instance: Instance,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Largest torus dimension accepted for GIRG positions.
pub const MAX_GIRG_DIM: usize = 64;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidSpec(format!("{name}={p} outside [0, 1]")));
    }
    Ok(())
}

fn check_square(name: &str, m: &[Vec<f64>], n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidSpec(format!("{name} must be an {n}x{n} matrix")));
    }
    if m.iter().flatten().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::InvalidSpec(format!("{name} entries must be finite and nonnegative")));
    }
    Ok(())
}

fn off_diagonal(m: &[Vec<f64>], n: usize) -> Vec<f64> {
    let idx = crate::graph::PairIndex::new(n);
    (0..idx.ordered_len())
        .map(|k| {
            let (v, w) = idx.arc(k);
            m[v][w]
        })
        .collect()
}

impl ModelSpec {
    pub fn new(class: ModelClass, instance: Instance, n: usize) -> Self {
        ModelSpec {
            class,
            instance,
            n,
            seed: None,
        }
    }

    pub fn gilbert(n: usize, p: f64) -> Self {
        Self::new(ModelClass::IEG, Instance::Gilbert { p }, n)
    }

    pub fn directed_gilbert(n: usize, p: f64) -> Self {
        Self::new(ModelClass::IAG, Instance::DirectedGilbert { p }, n)
    }

    pub fn classical_er(n: usize, m: usize) -> Self {
        Self::new(ModelClass::ESRG, Instance::ClassicalEr { m }, n)
    }

    pub fn directed_classical_er(n: usize, m: usize) -> Self {
        Self::new(ModelClass::ASRG, Instance::DirectedClassicalEr { m }, n)
    }

    pub fn ird(n: usize, type_pmf: Vec<f64>, kernel: Kernel) -> Self {
        Self::new(ModelClass::IAG, Instance::Ird { type_pmf, kernel }, n)
    }

    pub fn cci(n: usize, params: CciParameters) -> Self {
        Self::new(
            ModelClass::ASRG,
            Instance::Cci(CciInstance {
                params,
                m: None,
                renormalize: true,
            }),
            n,
        )
    }

    /// The inhomogeneous random digraph whose kernel is the CCI limit kernel.
    pub fn ird_from_cci(n: usize, params: &CciParameters) -> Result<Self> {
        Ok(Self::ird(n, params.q.clone(), cci_kernel(params)?))
    }

    pub fn custom_independent(class: ModelClass, pi: Vec<Vec<f64>>) -> Self {
        let n = pi.len();
        Self::new(
            class,
            Instance::Custom(CustomInstance {
                pi: Some(pi),
                mu: None,
                m: None,
            }),
            n,
        )
    }

    pub fn custom_selection(class: ModelClass, mu: Vec<Vec<f64>>, m: usize) -> Self {
        let n = mu.len();
        Self::new(
            class,
            Instance::Custom(CustomInstance {
                pi: None,
                mu: Some(mu),
                m: Some(m),
            }),
            n,
        )
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: ModelSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Checks parameters without realizing anything.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be positive".into()));
        }
        if self.n > MAX_VERTICES {
            return Err(Error::InvalidSpec(format!("n={} exceeds the limit of {MAX_VERTICES} vertices", self.n)));
        }
        if !self.instance.allows(self.class) {
            return Err(Error::InvalidSpec(format!(
                "instance {} is not a {:?} model",
                self.instance.name(),
                self.class
            )));
        }
        let n = self.n;
        match &self.instance {
            Instance::Gilbert { p } | Instance::DirectedGilbert { p } => check_probability("p", *p)?,
            Instance::Irg { type_pmf, kernel } | Instance::Ird { type_pmf, kernel } => {
                check_pmf("type_pmf", type_pmf, 1e-9)?;
                Kernel::new(kernel.matrix.clone())?;
                if kernel.tau() != type_pmf.len() {
                    return Err(Error::InvalidSpec("kernel size must match type_pmf".into()));
                }
                if self.class == ModelClass::IEG && !kernel.is_symmetric() {
                    return Err(Error::InvalidSpec("irg needs a symmetric kernel".into()));
                }
            }
            Instance::Girg { alpha, lambda, dim, weights } => {
                girg_probability(*alpha, *lambda, n)?;
                if *dim == 0 || *dim > MAX_GIRG_DIM {
                    return Err(Error::InvalidSpec(format!("girg needs 1 <= dim <= {MAX_GIRG_DIM}")));
                }
                weights.validate()?;
            }
            Instance::ClassicalEr { m } => {
                if *m > pair_count(n) {
                    return Err(Error::Infeasible {
                        m: *m,
                        available: pair_count(n),
                        domain: "unordered",
                    });
                }
            }
            Instance::DirectedClassicalEr { m } => {
                let available = 2 * pair_count(n);
                if *m > available {
                    return Err(Error::Infeasible {
                        m: *m,
                        available,
                        domain: "ordered",
                    });
                }
            }
            Instance::Cci(c) => {
                c.params.validate()?;
            }
            Instance::Custom(c) => {
                if self.class.is_selection() {
                    let mu = c
                        .mu
                        .as_ref()
                        .ok_or_else(|| Error::InvalidSpec("custom selection model needs mu".into()))?;
                    if c.pi.is_some() || c.m.is_none() {
                        return Err(Error::InvalidSpec("custom selection model takes mu and m only".into()));
                    }
                    check_square("mu", mu, n)?;
                    EdgeMassFn::new(n, PairDomain::Ordered, off_diagonal(mu, n))?;
                } else {
                    let pi = c
                        .pi
                        .as_ref()
                        .ok_or_else(|| Error::InvalidSpec("custom independent model needs pi".into()))?;
                    if c.mu.is_some() || c.m.is_some() {
                        return Err(Error::InvalidSpec("custom independent model takes pi only".into()));
                    }
                    check_square("pi", pi, n)?;
                    if pi.iter().flatten().any(|&x| x > 1.0) {
                        return Err(Error::InvalidSpec("pi entries must lie in [0, 1]".into()));
                    }
                    if self.class == ModelClass::IEG && !(MatrixProbability { matrix: pi.clone() }).symmetric() {
                        return Err(Error::InvalidSpec("IEG needs a symmetric pi".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Realizes `V_n` from the type sub-stream of `seed`.
    pub fn vertices(&self, seed: u64) -> TypedVertexVector {
        match &self.instance {
            Instance::Irg { type_pmf, .. } | Instance::Ird { type_pmf, .. } => {
                TypedVertexVector::discrete(self.n, type_pmf, seed)
            }
            Instance::Cci(c) => TypedVertexVector::discrete(self.n, &c.params.q, seed),
            Instance::Girg { dim, weights, .. } => TypedVertexVector::spatial(self.n, *dim, weights, seed),
            _ => TypedVertexVector::labels(self.n, seed),
        }
    }

    /// The connection probability of an independent model.
    pub fn probability_fn(&self) -> Result<Box<dyn EdgeProbabilityFn>> {
        Ok(match &self.instance {
            Instance::Gilbert { p } | Instance::DirectedGilbert { p } => Box::new(ConstantProbability(*p)),
            Instance::Irg { kernel, .. } | Instance::Ird { kernel, .. } => {
                Box::new(irg_probability(kernel.clone(), self.n))
            }
            Instance::Girg { alpha, lambda, .. } => Box::new(girg_probability(*alpha, *lambda, self.n)?),
            Instance::Custom(CustomInstance { pi: Some(pi), .. }) => {
                Box::new(MatrixProbability { matrix: pi.clone() })
            }
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "{} is not an independent edge/arc model",
                    self.instance.name()
                )))
            }
        })
    }

    /// `pi` on all ordered pairs of a realization.
    pub fn arc_probabilities(&self, vertices: &TypedVertexVector) -> Result<ArcProbabilities> {
        let f = self.probability_fn()?;
        Ok(ArcProbabilities::realize(f.as_ref(), vertices))
    }

    /// `pi` on unordered pairs; fails if the realized `pi` is not symmetric.
    pub fn edge_probabilities(&self, vertices: &TypedVertexVector) -> Result<EdgeProbabilities> {
        self.arc_probabilities(vertices)?.to_symmetric()
    }

    /// The ordered mass `mu` of a selection model, before any folding.
    pub fn arc_mass(&self, vertices: &TypedVertexVector) -> Result<EdgeMassFn> {
        let n = vertices.n();
        match &self.instance {
            Instance::ClassicalEr { .. } | Instance::DirectedClassicalEr { .. } => {
                EdgeMassFn::uniform(n, PairDomain::Ordered)
            }
            Instance::Cci(c) => cci_mass(&c.params, vertices, c.renormalize),
            Instance::Custom(CustomInstance { mu: Some(mu), .. }) => {
                EdgeMassFn::new(n, PairDomain::Ordered, off_diagonal(mu, n))
            }
            _ => Err(Error::InvalidSpec(format!(
                "{} is not a selection model",
                self.instance.name()
            ))),
        }
    }

    /// The mass the sampler draws from: `mu` for ASRG, `mu°` for ESRG.
    pub fn selection_mass(&self, vertices: &TypedVertexVector) -> Result<EdgeMassFn> {
        let mu = self.arc_mass(vertices)?;
        Ok(match self.class {
            ModelClass::ESRG => mu.summed(),
            _ => mu,
        })
    }

    /// Number of edges or arcs a selection model places.
    pub fn m(&self) -> Result<usize> {
        match &self.instance {
            Instance::ClassicalEr { m } | Instance::DirectedClassicalEr { m } => Ok(*m),
            Instance::Cci(c) => Ok(c.m.unwrap_or_else(|| c.params.arcs_for(self.n))),
            Instance::Custom(CustomInstance { m: Some(m), .. }) => Ok(*m),
            _ => Err(Error::InvalidSpec(format!(
                "{} does not fix a number of edges",
                self.instance.name()
            ))),
        }
    }
}
