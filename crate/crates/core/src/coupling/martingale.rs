use serde::Serialize;

use crate::error::{Error, Result};

/// The transformed error process `M_0, .., M_m` with its coefficients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MartingaleTrace {
    pub mu_up: f64,
    /// `a_1, .., a_m`.
    pub a: Vec<f64>,
    /// `b_1, .., b_m`.
    pub b: Vec<f64>,
    /// `M_0, .., M_m`.
    pub m_values: Vec<f64>,
}

fn coefficients(m: usize, mu_up: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(mu_up > 0.0 && mu_up <= 1.0) {
        return Err(Error::Precondition(format!("mu↑={mu_up} outside (0, 1]")));
    }
    let f = 1.0 / mu_up;
    if m as f64 >= f {
        return Err(Error::Precondition(format!("m={m} must be below 1/mu↑={f}")));
    }
    let a: Vec<f64> = (1..=m).map(|i| i as f64 / (f - i as f64)).collect();
    let b: Vec<f64> = (1..=m).map(|i| 1.0 - 2.0 / (f - i as f64)).collect();
    if let Some(i) = b.iter().position(|&x| x <= 0.0) {
        return Err(Error::Precondition(format!(
            "b_{} = {} is not positive; need 1/mu↑ - m > 2",
            i + 1,
            b[i]
        )));
    }
    Ok((a, b))
}

fn check_path(psi: &[usize]) -> Result<usize> {
    match psi.first() {
        Some(0) => Ok(psi.len() - 1),
        _ => Err(Error::Precondition("Ψ path must start at Ψ_0 = 0".into())),
    }
}

/// `M_s = (Ψ_s − Σ_{i≤s} a_i Π_{i<j≤s} b_j) / Π_{i≤s} b_i`, each term
/// evaluated from the formula.
pub fn martingale_transform(psi: &[usize], mu_up: f64) -> Result<MartingaleTrace> {
    let m = check_path(psi)?;
    let (a, b) = coefficients(m, mu_up)?;
    let m_values = (0..=m)
        .map(|s| {
            let drift: f64 = (1..=s).map(|i| a[i - 1] * b[i..s].iter().product::<f64>()).sum();
            let scale: f64 = b[..s].iter().product();
            (psi[s] as f64 - drift) / scale
        })
        .collect();
    Ok(MartingaleTrace { mu_up, a, b, m_values })
}

/// The same sequence by the recursions `C_s = b_s C_{s−1} + a_s`,
/// `P_s = b_s P_{s−1}`, `M_s = (Ψ_s − C_s) / P_s`.
pub fn martingale_recursive(psi: &[usize], mu_up: f64) -> Result<Vec<f64>> {
    let m = check_path(psi)?;
    let (a, b) = coefficients(m, mu_up)?;
    let mut out = Vec::with_capacity(m + 1);
    let (mut c, mut p) = (0.0, 1.0);
    out.push(psi[0] as f64);
    for s in 1..=m {
        c = b[s - 1] * c + a[s - 1];
        p *= b[s - 1];
        out.push((psi[s] as f64 - c) / p);
    }
    Ok(out)
}

impl MartingaleTrace {
    /// Largest gap between the stored values and the recursive recomputation.
    pub fn recompute_error(&self, psi: &[usize]) -> Result<f64> {
        let r = martingale_recursive(psi, self.mu_up)?;
        Ok(r.iter().zip(&self.m_values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
    }
}

/// `Σ_{s=1}^m s/(f−s) · Π_{r=s+1}^m (1 − 2/(f−r))`.
pub fn growth_bound(m: usize, f: f64) -> Result<f64> {
    if !(f > m as f64) {
        return Err(Error::Precondition(format!("growth bound needs f > m, got f={f}, m={m}")));
    }
    Ok((1..=m)
        .map(|s| {
            let head = s as f64 / (f - s as f64);
            let tail: f64 = (s + 1..=m).map(|r| 1.0 - 2.0 / (f - r as f64)).product();
            head * tail
        })
        .sum())
}
