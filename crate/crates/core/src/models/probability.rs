use serde::{Deserialize, Serialize};

use super::vertices::{TypedVertexVector, VertexType};
use crate::error::{Error, Result};
use crate::graph::{pair_count, PairIndex};

/// A connection probability on vertex pairs of a realized `V_n`.
///
/// Implementations return the unclamped value from [`raw`](Self::raw);
/// [`evaluate`](Self::evaluate) clamps to `[0, 1]`.
pub trait EdgeProbabilityFn: Send + Sync {
    fn raw(&self, vertices: &TypedVertexVector, v: usize, w: usize) -> f64;

    /// Whether `evaluate(v, w) == evaluate(w, v)` holds by construction.
    fn symmetric(&self) -> bool;

    fn evaluate(&self, vertices: &TypedVertexVector, v: usize, w: usize) -> f64 {
        self.raw(vertices, v, w).clamp(0.0, 1.0)
    }
}

/// `pi ≡ p`.
#[derive(Clone, Copy, Debug)]
pub struct ConstantProbability(pub f64);

impl EdgeProbabilityFn for ConstantProbability {
    fn raw(&self, _: &TypedVertexVector, _: usize, _: usize) -> f64 {
        self.0
    }
    fn symmetric(&self) -> bool {
        true
    }
}

/// A kernel on a finite type space `{0, .., tau-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Kernel {
    pub matrix: Vec<Vec<f64>>,
}

impl Kernel {
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let tau = matrix.len();
        if tau == 0 || matrix.iter().any(|row| row.len() != tau) {
            return Err(Error::InvalidSpec("kernel must be a non-empty square matrix".into()));
        }
        if matrix.iter().flatten().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidSpec("kernel entries must be finite and nonnegative".into()));
        }
        Ok(Kernel { matrix })
    }

    pub fn tau(&self) -> usize {
        self.matrix.len()
    }

    pub fn eval(&self, t: usize, s: usize) -> f64 {
        self.matrix[t][s]
    }

    pub fn max(&self) -> f64 {
        self.matrix.iter().flatten().copied().fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self) -> bool {
        let tau = self.tau();
        (0..tau).all(|t| (0..tau).all(|s| self.matrix[t][s] == self.matrix[s][t]))
    }
}

/// Inhomogeneous random (di)graph probability `min(kappa(t, s) / n, 1)`.
#[derive(Clone, Debug)]
pub struct KernelProbability {
    pub kernel: Kernel,
    pub n: usize,
}

pub fn irg_probability(kernel: Kernel, n: usize) -> KernelProbability {
    KernelProbability { kernel, n }
}

impl EdgeProbabilityFn for KernelProbability {
    fn raw(&self, vertices: &TypedVertexVector, v: usize, w: usize) -> f64 {
        match (vertices.discrete_type(v), vertices.discrete_type(w)) {
            (Some(t), Some(s)) => self.kernel.eval(t, s) / self.n as f64,
            _ => 0.0,
        }
    }
    fn symmetric(&self) -> bool {
        self.kernel.is_symmetric()
    }
}

/// Geometric inhomogeneous random graph probability with torus sup-norm distance.
#[derive(Clone, Copy, Debug)]
pub struct GirgProbability {
    pub alpha: f64,
    pub lambda: f64,
    pub n: usize,
}

pub fn girg_probability(alpha: f64, lambda: f64, n: usize) -> Result<GirgProbability> {
    if !(alpha > 0.0 && lambda > 0.0 && alpha.is_finite() && lambda.is_finite()) {
        return Err(Error::InvalidSpec("girg needs alpha > 0 and lambda > 0".into()));
    }
    Ok(GirgProbability { alpha, lambda, n })
}

/// Sup-norm distance on the unit torus.
pub fn torus_distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let d = (a - b).abs().rem_euclid(1.0);
            d.min(1.0 - d)
        })
        .fold(0.0, f64::max)
}

impl GirgProbability {
    /// The formula on explicit positions and weights; coincident points give 1.
    pub fn value(&self, x: &[f64], vw: f64, y: &[f64], ww: f64) -> f64 {
        let dist = torus_distance(x, y);
        if dist == 0.0 {
            return 1.0;
        }
        let d = x.len() as f64;
        let scale = (vw * ww / (self.n as f64 * self.lambda)).powf(self.alpha);
        (scale / dist.powf(self.alpha * d)).min(1.0)
    }
}

impl EdgeProbabilityFn for GirgProbability {
    fn raw(&self, vertices: &TypedVertexVector, v: usize, w: usize) -> f64 {
        match (&vertices.types[v], &vertices.types[w]) {
            (
                VertexType::Spatial { position: x, weight: a },
                VertexType::Spatial { position: y, weight: b },
            ) => self.value(x, *a, y, *b),
            _ => 0.0,
        }
    }
    fn symmetric(&self) -> bool {
        true
    }
}

/// An explicit `n x n` matrix indexed by vertex.
#[derive(Clone, Debug)]
pub struct MatrixProbability {
    pub matrix: Vec<Vec<f64>>,
}

impl EdgeProbabilityFn for MatrixProbability {
    fn raw(&self, _: &TypedVertexVector, v: usize, w: usize) -> f64 {
        self.matrix[v][w]
    }
    fn symmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|v| (0..n).all(|w| self.matrix[v][w] == self.matrix[w][v]))
    }
}

/// `pi(v, w)` on every ordered pair of a realized vertex vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcProbabilities {
    n: usize,
    p: Vec<f64>,
}

/// A value per unordered pair. Entries of [`ArcProbabilities::summed`] may exceed 1.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeProbabilities {
    n: usize,
    p: Vec<f64>,
}

impl ArcProbabilities {
    pub fn realize(f: &dyn EdgeProbabilityFn, vertices: &TypedVertexVector) -> Self {
        let n = vertices.n();
        let idx = PairIndex::new(n);
        let p = (0..idx.ordered_len())
            .map(|k| {
                let (v, w) = idx.arc(k);
                f.evaluate(vertices, v, w)
            })
            .collect();
        ArcProbabilities { n, p }
    }

    pub fn constant(n: usize, p: f64) -> Self {
        ArcProbabilities {
            n,
            p: vec![p.clamp(0.0, 1.0); 2 * pair_count(n)],
        }
    }

    /// From values indexed by [`PairIndex`] ordered indices.
    pub fn from_ordered(n: usize, p: Vec<f64>) -> Result<Self> {
        if p.len() != 2 * pair_count(n) {
            return Err(Error::InvalidSpec(format!(
                "expected {} ordered-pair probabilities, got {}",
                2 * pair_count(n),
                p.len()
            )));
        }
        if p.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::InvalidSpec("probabilities must lie in [0, 1]".into()));
        }
        Ok(ArcProbabilities { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, v: usize, w: usize) -> f64 {
        self.p[PairIndex::ordered(self.n, v, w)]
    }

    /// `pi↑`, the largest realized value.
    pub fn max(&self) -> f64 {
        self.p.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self) -> bool {
        self.p.chunks(2).all(|c| c[0] == c[1])
    }

    /// `pi(v,w) + pi(w,v)` per unordered pair.
    pub fn summed(&self) -> EdgeProbabilities {
        EdgeProbabilities {
            n: self.n,
            p: self.p.chunks(2).map(|c| c[0] + c[1]).collect(),
        }
    }

    /// `1 - (1 - pi(v,w)) (1 - pi(w,v))` per unordered pair.
    pub fn forgetful(&self) -> EdgeProbabilities {
        EdgeProbabilities {
            n: self.n,
            p: self.p.chunks(2).map(|c| 1.0 - (1.0 - c[0]) * (1.0 - c[1])).collect(),
        }
    }

    /// The common value per unordered pair; fails unless symmetric.
    pub fn to_symmetric(&self) -> Result<EdgeProbabilities> {
        if let Some(k) = self.p.chunks(2).position(|c| c[0] != c[1]) {
            let (v, w) = PairIndex::new(self.n).pair(k);
            return Err(Error::InvalidSpec(format!(
                "undirected model needs symmetric pi, but pi({},{})={} and pi({},{})={}",
                v + 1,
                w + 1,
                self.p[2 * k],
                w + 1,
                v + 1,
                self.p[2 * k + 1]
            )));
        }
        Ok(EdgeProbabilities {
            n: self.n,
            p: self.p.chunks(2).map(|c| c[0]).collect(),
        })
    }
}

impl EdgeProbabilities {
    pub fn constant(n: usize, p: f64) -> Self {
        EdgeProbabilities {
            n,
            p: vec![p; pair_count(n)],
        }
    }

    pub fn from_unordered(n: usize, p: Vec<f64>) -> Result<Self> {
        if p.len() != pair_count(n) {
            return Err(Error::InvalidSpec(format!(
                "expected {} pair probabilities, got {}",
                pair_count(n),
                p.len()
            )));
        }
        Ok(EdgeProbabilities { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, v: usize, w: usize) -> f64 {
        self.p[PairIndex::unordered(self.n, v, w)]
    }

    pub fn max(&self) -> f64 {
        self.p.iter().copied().fold(0.0, f64::max)
    }

    /// Fails with the first pair whose value exceeds 1.
    pub fn check_probabilities(&self) -> Result<()> {
        if let Some(k) = self.p.iter().position(|&x| x > 1.0) {
            let (v, w) = PairIndex::new(self.n).pair(k);
            return Err(Error::SummedProbabilityTooLarge {
                v: v + 1,
                w: w + 1,
                sum: self.p[k],
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::vertices::WeightLaw;

    #[test]
    fn irg_formula() {
        let vs = TypedVertexVector::from_discrete(&[0, 0, 0, 0, 0, 0, 0, 0], 0);
        let zero = irg_probability(Kernel::new(vec![vec![0.0]]).unwrap(), 8);
        assert_eq!(zero.evaluate(&vs, 0, 1), 0.0);
        let full = irg_probability(Kernel::new(vec![vec![8.0]]).unwrap(), 8);
        assert_eq!(full.evaluate(&vs, 0, 1), 1.0);
        let two = irg_probability(Kernel::new(vec![vec![2.0]]).unwrap(), 8);
        assert_eq!(two.evaluate(&vs, 0, 1), 0.25);
        let big = irg_probability(Kernel::new(vec![vec![50.0]]).unwrap(), 8);
        assert_eq!(big.evaluate(&vs, 3, 2), 1.0);
    }

    #[test]
    fn girg_formula_examples() {
        let g = girg_probability(1.0, 1.0, 1).unwrap();
        assert_eq!(g.value(&[0.0], 1.0, &[0.5], 1.0), 1.0);
        assert_eq!(g.value(&[0.3], 1e-9, &[0.3], 1e-9), 1.0);
        let tiny = g.value(&[0.0], 1e-12, &[0.5], 1e-12);
        assert!(tiny < 1e-20);
    }

    #[test]
    fn torus_wraps() {
        assert!((torus_distance(&[0.05, 0.5], &[0.95, 0.45]) - 0.1).abs() < 1e-12);
        assert_eq!(torus_distance(&[0.0], &[0.5]), 0.5);
    }

    #[test]
    fn girg_against_scalar_recomputation() {
        let n = 30;
        let vs = TypedVertexVector::spatial(n, 2, &WeightLaw::Pareto { exponent: 2.5, scale: 1.0 }, 17);
        let f = girg_probability(1.3, 0.7, n).unwrap();
        for v in 0..n {
            for w in 0..n {
                if v == w {
                    continue;
                }
                let (VertexType::Spatial { position: x, weight: a }, VertexType::Spatial { position: y, weight: b }) =
                    (&vs.types[v], &vs.types[w])
                else {
                    panic!()
                };
                let mut dist: f64 = 0.0;
                for k in 0..2 {
                    let d = (x[k] - y[k]).abs();
                    dist = dist.max(if d > 0.5 { 1.0 - d } else { d });
                }
                let expect = (dist.powf(-1.3 * 2.0) * (a * b / (n as f64 * 0.7)).powf(1.3)).min(1.0);
                assert!((f.evaluate(&vs, v, w) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn summed_and_forgetful() {
        let p = ArcProbabilities::from_ordered(2, vec![0.2, 0.5]).unwrap();
        assert!((p.summed().values()[0] - 0.7).abs() < 1e-15);
        assert!((p.forgetful().values()[0] - 0.6).abs() < 1e-15);
        assert!(p.to_symmetric().is_err());
        assert_eq!(p.max(), 0.5);
        let big = ArcProbabilities::from_ordered(2, vec![0.6, 0.5]).unwrap();
        assert!(matches!(
            big.summed().check_probabilities(),
            Err(Error::SummedProbabilityTooLarge { v: 1, w: 2, .. })
        ));
    }
}
