use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::exact::GraphDistribution;

/// Pearson goodness of fit of observed codes against an exact law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    /// Observations on codes the law gives probability zero.
    pub impossible: usize,
}

/// Bins with expected count below 5 are pooled into one bin. Any
/// observation on a zero-probability code forces `p_value = 0`.
pub fn chi_square(observed: &[usize], law: &GraphDistribution) -> Result<ChiSquare> {
    let pmf = law.pmf();
    if observed.len() != pmf.len() {
        return Err(Error::Mismatch(format!("{} observed bins vs {} states", observed.len(), pmf.len())));
    }
    let total: usize = observed.iter().sum();
    let t = total as f64;
    let mut impossible = 0;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut pooled_o, mut pooled_e) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(pmf) {
        if p == 0.0 {
            impossible += o;
            continue;
        }
        let e = p * t;
        if e < 5.0 {
            pooled_o += o as f64;
            pooled_e += e;
        } else {
            bins.push((o as f64, e));
        }
    }
    if pooled_e > 0.0 {
        bins.push((pooled_o, pooled_e));
    }
    let statistic: f64 = bins.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let df = bins.len().saturating_sub(1);
    let p_value = if impossible > 0 {
        0.0
    } else if df == 0 {
        1.0
    } else {
        ChiSquared::new(df as f64)
            .map_err(|e| Error::Precondition(e.to_string()))?
            .sf(statistic)
    };
    Ok(ChiSquare {
        statistic,
        df,
        p_value,
        impossible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DistributionKind;

    #[test]
    fn perfect_fit_and_impossible_codes() {
        let law = GraphDistribution::new(2, DistributionKind::Graph, vec![0.5, 0.5]).unwrap();
        let c = chi_square(&[500, 500], &law).unwrap();
        assert_eq!((c.statistic, c.df, c.p_value), (0.0, 1, 1.0));
        let point = GraphDistribution::new(2, DistributionKind::Graph, vec![1.0, 0.0]).unwrap();
        let c = chi_square(&[9, 1], &point).unwrap();
        assert_eq!((c.impossible, c.p_value), (1, 0.0));
    }

    #[test]
    fn known_quantile() {
        // one degree of freedom: P(X > 3.841459) = 0.05
        let law = GraphDistribution::new(2, DistributionKind::Graph, vec![0.5, 0.5]).unwrap();
        let c = chi_square(&[531, 469], &law).unwrap();
        assert!((c.statistic - 3.844).abs() < 1e-12);
        assert!((c.p_value - 0.04993).abs() < 1e-4, "{}", c.p_value);
    }
}
