use serde::{Deserialize, Serialize};

use super::mass::{EdgeMassFn, PairDomain};
use super::probability::Kernel;
use super::vertices::{check_pmf, TypedVertexVector};
use crate::error::{Error, Result};
use crate::graph::PairIndex;

/// Parameters of the cell-cell interaction model.
///
/// Types are `0..tau`, out-channels `0..l`, in-channels `0..r`. `p[i][j]` is
/// the channel pmf, `I[k][i]` marks that type `k` can send on channel `i`,
/// `J[k][j]` that type `k` can receive on channel `j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CciParameters {
    pub tau: usize,
    pub q: Vec<f64>,
    pub l: usize,
    pub r: usize,
    pub p: Vec<Vec<f64>>,
    #[serde(rename = "I")]
    pub i: Vec<Vec<u8>>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<u8>>,
    pub alpha: f64,
}

fn check_indicator(name: &str, m: &[Vec<u8>], rows: usize, cols: usize) -> Result<()> {
    if m.len() != rows || m.iter().any(|row| row.len() != cols) {
        return Err(Error::InvalidSpec(format!("{name} must be {rows}x{cols}")));
    }
    if m.iter().flatten().any(|&x| x > 1) {
        return Err(Error::InvalidSpec(format!("{name} entries must be 0 or 1")));
    }
    Ok(())
}

impl CciParameters {
    pub fn validate(&self) -> Result<()> {
        if self.tau == 0 || self.l == 0 || self.r == 0 {
            return Err(Error::InvalidSpec("tau, l and r must be positive".into()));
        }
        if self.q.len() != self.tau {
            return Err(Error::InvalidSpec(format!("q must have {} entries", self.tau)));
        }
        check_pmf("q", &self.q, 1e-9)?;
        if self.p.len() != self.l || self.p.iter().any(|row| row.len() != self.r) {
            return Err(Error::InvalidSpec(format!("p must be {}x{}", self.l, self.r)));
        }
        check_pmf("p", &self.p.concat(), 1e-9)?;
        check_indicator("I", &self.i, self.tau, self.l)?;
        check_indicator("J", &self.j, self.tau, self.r)?;
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::InvalidSpec("alpha must be positive".into()));
        }
        if let Some(i) = self.lambda().iter().position(|&x| !(x > 0.0)) {
            return Err(Error::InvalidSpec(format!("lambda_{} = 0: no type with positive mass sends on out-channel {}", i + 1, i + 1)));
        }
        if let Some(j) = self.varrho().iter().position(|&x| !(x > 0.0)) {
            return Err(Error::InvalidSpec(format!("varrho_{} = 0: no type with positive mass receives on in-channel {}", j + 1, j + 1)));
        }
        Ok(())
    }

    /// `lambda_i = sum_k q_k I(k, i)`.
    pub fn lambda(&self) -> Vec<f64> {
        (0..self.l)
            .map(|i| (0..self.tau).map(|k| self.q[k] * f64::from(self.i[k][i])).sum())
            .collect()
    }

    /// `varrho_j = sum_k q_k J(k, j)`.
    pub fn varrho(&self) -> Vec<f64> {
        (0..self.r)
            .map(|j| (0..self.tau).map(|k| self.q[k] * f64::from(self.j[k][j])).sum())
            .collect()
    }

    pub fn q_min(&self) -> f64 {
        self.q.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `floor(alpha n)`.
    pub fn arcs_for(&self, n: usize) -> usize {
        (self.alpha * n as f64).floor() as usize
    }

    /// Channel counts `(L, R)` on a realization.
    pub fn channel_counts(&self, vertices: &TypedVertexVector) -> (Vec<usize>, Vec<usize>) {
        let counts = vertices.type_counts(self.tau);
        let l = (0..self.l)
            .map(|i| (0..self.tau).map(|k| counts[k] * usize::from(self.i[k][i])).sum())
            .collect();
        let r = (0..self.r)
            .map(|j| (0..self.tau).map(|k| counts[k] * usize::from(self.j[k][j])).sum())
            .collect();
        (l, r)
    }

    /// `M[t][s]`, the unnormalized mass of one arc from a type-`t` vertex to a
    /// type-`s` vertex. Fails if some channel count is zero.
    pub fn type_mass(&self, lc: &[usize], rc: &[usize]) -> Result<Vec<Vec<f64>>> {
        if let Some(i) = lc.iter().position(|&x| x == 0) {
            return Err(Error::DegenerateRealization(format!("L_{} = 0", i + 1)));
        }
        if let Some(j) = rc.iter().position(|&x| x == 0) {
            return Err(Error::DegenerateRealization(format!("R_{} = 0", j + 1)));
        }
        let mut m = vec![vec![0.0; self.tau]; self.tau];
        for (t, row) in m.iter_mut().enumerate() {
            for (s, cell) in row.iter_mut().enumerate() {
                let mut acc = 0.0;
                for i in 0..self.l {
                    if self.i[t][i] == 0 {
                        continue;
                    }
                    for j in 0..self.r {
                        if self.j[s][j] == 1 {
                            acc += self.p[i][j] / (lc[i] as f64 * rc[j] as f64);
                        }
                    }
                }
                *cell = acc;
            }
        }
        Ok(m)
    }

    /// Largest value of the mass formula over all ordered vertex pairs of the
    /// realization, self-pairs included and without renormalization.
    pub fn raw_mass_max(&self, vertices: &TypedVertexVector) -> Result<f64> {
        let (lc, rc) = self.channel_counts(vertices);
        let m = self.type_mass(&lc, &rc)?;
        let counts = vertices.type_counts(self.tau);
        let mut best: f64 = 0.0;
        for t in (0..self.tau).filter(|&t| counts[t] > 0) {
            for s in (0..self.tau).filter(|&s| counts[s] > 0) {
                best = best.max(m[t][s]);
            }
        }
        Ok(best)
    }

    /// Whether every `L_i` and `R_j` is at least `q↓ n / 2`.
    pub fn counts_concentrated(&self, vertices: &TypedVertexVector) -> bool {
        let (lc, rc) = self.channel_counts(vertices);
        let floor = self.q_min() * vertices.n() as f64 / 2.0;
        lc.iter().chain(&rc).all(|&c| c as f64 >= floor)
    }

    /// Chebyshev bound on the probability that some channel count falls below
    /// `q↓ n / 2`, with an `l r` union factor.
    pub fn chebyshev_bound(&self, n: usize) -> f64 {
        let q = self.q_min();
        (self.l * self.r) as f64 * 4.0 * (1.0 - q) / (n as f64 * q)
    }

    /// `alpha / (lambda↓ varrho↓)`.
    pub fn kernel_bound(&self) -> f64 {
        let lmin = self.lambda().into_iter().fold(f64::INFINITY, f64::min);
        let rmin = self.varrho().into_iter().fold(f64::INFINITY, f64::min);
        self.alpha / (lmin * rmin)
    }
}

/// The CCI arc mass on a realization. Self-pairs are dropped; with
/// `renormalize` the remaining mass is scaled back to 1, otherwise it is kept
/// as a defective mass function.
pub fn cci_mass(params: &CciParameters, vertices: &TypedVertexVector, renormalize: bool) -> Result<EdgeMassFn> {
    params.validate()?;
    let n = vertices.n();
    let (lc, rc) = params.channel_counts(vertices);
    let m = params.type_mass(&lc, &rc)?;
    let types: Vec<usize> = (0..n)
        .map(|v| {
            vertices
                .discrete_type(v)
                .filter(|&t| t < params.tau)
                .ok_or_else(|| Error::InvalidSpec(format!("vertex {} has no type in 1..={}", v + 1, params.tau)))
        })
        .collect::<Result<_>>()?;
    let idx = PairIndex::new(n);
    let weights: Vec<f64> = (0..idx.ordered_len())
        .map(|k| {
            let (v, w) = idx.arc(k);
            m[types[v]][types[w]]
        })
        .collect();
    if renormalize {
        EdgeMassFn::normalized(n, PairDomain::Ordered, weights)
    } else {
        EdgeMassFn::defective(n, PairDomain::Ordered, weights)
    }
}

/// The limiting kernel `kappa(t, s) = alpha sum_ij p_ij I(t,i) J(s,j) / (lambda_i varrho_j)`.
pub fn cci_kernel(params: &CciParameters) -> Result<Kernel> {
    params.validate()?;
    let lam = params.lambda();
    let rho = params.varrho();
    let tau = params.tau;
    let mut k = vec![vec![0.0; tau]; tau];
    for (t, row) in k.iter_mut().enumerate() {
        for (s, cell) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..params.l {
                for j in 0..params.r {
                    acc += params.p[i][j] * f64::from(params.i[t][i] * params.j[s][j]) / (lam[i] * rho[j]);
                }
            }
            *cell = params.alpha * acc;
        }
    }
    Kernel::new(k)
}
