use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::split;

/// Runs `f(k, seed_k)` for `k in 0..count` with `seed_k = split(base, k)`.
/// Work is spread over the rayon pool; results come back in index order.
pub fn run_replicates<T, F>(base_seed: u64, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, u64) -> T + Sync + Send,
{
    (0..count)
        .into_par_iter()
        .map(|k| f(k, split(base_seed, k as u64)))
        .collect()
}

/// A named rate or slack schedule evaluated at `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Schedule {
    Log,
    Sqrt,
    Constant { c: f64 },
    Power { a: f64 },
}

impl Schedule {
    pub fn eval(&self, n: usize) -> Result<f64> {
        let x = n as f64;
        let v = match *self {
            Schedule::Log => x.ln(),
            Schedule::Sqrt => x.sqrt(),
            Schedule::Constant { c } => c,
            Schedule::Power { a } => x.powf(a),
        };
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidSpec(format!("schedule {self:?} gives {v} at n={n}")));
        }
        Ok(v)
    }

    pub fn describe(&self) -> String {
        match *self {
            Schedule::Log => "log n".into(),
            Schedule::Sqrt => "sqrt n".into(),
            Schedule::Constant { c } => format!("{c}"),
            Schedule::Power { a } => format!("n^{a}"),
        }
    }
}

/// Sample mean and standard error of the mean.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub se: f64,
    pub count: usize,
}

pub fn mean_se<I: IntoIterator<Item = f64>>(values: I) -> MeanEstimate {
    // Welford
    let (mut count, mut mean, mut m2) = (0usize, 0.0, 0.0);
    for x in values {
        count += 1;
        let d = x - mean;
        mean += d / count as f64;
        m2 += d * (x - mean);
    }
    let se = if count > 1 {
        (m2 / (count - 1) as f64 / count as f64).sqrt()
    } else {
        0.0
    };
    MeanEstimate { mean, se, count }
}

/// A frequency with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Proportion {
    pub hits: usize,
    pub count: usize,
    pub p: f64,
    pub se: f64,
}

impl Proportion {
    pub fn new(hits: usize, count: usize) -> Self {
        let p = if count == 0 { 0.0 } else { hits as f64 / count as f64 };
        let se = if count == 0 { 0.0 } else { (p * (1.0 - p) / count as f64).sqrt() };
        Proportion { hits, count, p, se }
    }

    pub fn from_flags<I: IntoIterator<Item = bool>>(flags: I) -> Self {
        let (mut hits, mut count) = (0, 0);
        for f in flags {
            count += 1;
            hits += usize::from(f);
        }
        Self::new(hits, count)
    }

    /// Wald interval at 95% with continuity correction, clipped to `[0, 1]`.
    pub fn wald_ci(&self) -> (f64, f64) {
        let half = 1.959_963_984_540_054 * self.se + 0.5 / self.count.max(1) as f64;
        ((self.p - half).max(0.0), (self.p + half).min(1.0))
    }
}
