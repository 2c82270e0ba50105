use serde::Serialize;

use super::distribution::{DistributionKind, GraphDistribution};
use crate::error::{Error, Result};
use crate::graph::{forgetful_code, lift_event, pair_count, to_hex_code, DigraphEvent, EventSpec};
use crate::numeric::{self, NeumaierSum};

/// Pushes a digraph distribution through the forgetful map: each graph gets
/// the total mass of its preimage.
pub fn phi_pushforward(d: &GraphDistribution) -> Result<GraphDistribution> {
    if d.kind() != DistributionKind::Digraph {
        return Err(Error::Mismatch("phi_pushforward needs a digraph distribution".into()));
    }
    let pairs = pair_count(d.n());
    let mut acc = vec![NeumaierSum::new(); 1usize << pairs];
    for (code, &p) in d.pmf().iter().enumerate() {
        if p != 0.0 {
            acc[forgetful_code(code as u64, pairs) as usize].add(p);
        }
    }
    Ok(GraphDistribution::new(d.n(), DistributionKind::Graph, acc.iter().map(NeumaierSum::value).collect())?
        .with_conditioning(d.conditioned_on_seed()))
}

/// `½ Σ |a − b|`.
pub fn tv_distance(a: &GraphDistribution, b: &GraphDistribution) -> Result<f64> {
    a.same_space(b)?;
    Ok(0.5 * numeric::sum(a.pmf().iter().zip(b.pmf()).map(|(x, y)| (x - y).abs())))
}

/// The events `Q⁺ = {a > b}` and `Q⁻ = {a < b}` and the gap `|P_a(Q⁺) − P_b(Q⁺)|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessEvents {
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
    pub gap: f64,
}

impl WitnessEvents {
    pub fn plus_hex(&self) -> Vec<String> {
        self.plus.iter().map(|&c| to_hex_code(&[c])).collect()
    }
}

pub fn witness_events(a: &GraphDistribution, b: &GraphDistribution) -> Result<WitnessEvents> {
    a.same_space(b)?;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (k, (x, y)) in a.pmf().iter().zip(b.pmf()).enumerate() {
        if x > y {
            plus.push(k as u64);
        } else if x < y {
            minus.push(k as u64);
        }
    }
    let pa = numeric::sum(plus.iter().map(|&k| a.prob(k)));
    let pb = numeric::sum(plus.iter().map(|&k| b.prob(k)));
    Ok(WitnessEvents {
        plus,
        minus,
        gap: (pa - pb).abs(),
    })
}

/// Probability of a graph event. On a digraph distribution the event is
/// lifted through the forgetful map.
pub fn event_probability(dist: &GraphDistribution, q: &EventSpec) -> Result<f64> {
    match dist.kind() {
        DistributionKind::Graph => {
            let mut s = NeumaierSum::new();
            for (code, &p) in dist.pmf().iter().enumerate() {
                if p != 0.0 && q.holds(&dist.graph(code as u64)?) {
                    s.add(p);
                }
            }
            Ok(s.value())
        }
        DistributionKind::Digraph => digraph_event_probability(dist, &lift_event(q)),
    }
}

pub fn digraph_event_probability(dist: &GraphDistribution, q: &DigraphEvent) -> Result<f64> {
    if dist.kind() != DistributionKind::Digraph {
        return Err(Error::Mismatch("digraph event on a graph distribution".into()));
    }
    let mut s = NeumaierSum::new();
    for (code, &p) in dist.pmf().iter().enumerate() {
        if p != 0.0 && q.holds(&dist.digraph(code as u64)?) {
            s.add(p);
        }
    }
    Ok(s.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gil2(p: f64) -> GraphDistribution {
        GraphDistribution::new(2, DistributionKind::Graph, vec![1.0 - p, p]).unwrap()
    }

    #[test]
    fn pushforward_point_mass() {
        let d = GraphDistribution::point_mass(4, DistributionKind::Digraph, 0).unwrap();
        let g = phi_pushforward(&d).unwrap();
        assert_eq!(g.prob(0), 1.0);
    }

    #[test]
    fn pushforward_two_vertices() {
        let d = GraphDistribution::new(2, DistributionKind::Digraph, vec![0.25; 4]).unwrap();
        let g = phi_pushforward(&d).unwrap();
        assert_eq!(g.pmf(), &[0.25, 0.75]);
        assert!(phi_pushforward(&g).is_err());
    }

    #[test]
    fn tv_examples() {
        assert_eq!(tv_distance(&gil2(0.3), &gil2(0.3)).unwrap(), 0.0);
        assert_eq!(tv_distance(&gil2(0.0), &gil2(1.0)).unwrap(), 1.0);
        assert_eq!(tv_distance(&gil2(0.75), &gil2(0.5)).unwrap(), 0.25);
        let d = GraphDistribution::point_mass(2, DistributionKind::Digraph, 0).unwrap();
        assert!(tv_distance(&gil2(0.5), &d).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = witness_events(&gil2(0.4), &gil2(0.4)).unwrap();
        assert!(w.plus.is_empty() && w.minus.is_empty() && w.gap == 0.0);
        let w = witness_events(&gil2(0.75), &gil2(0.5)).unwrap();
        assert_eq!(w.plus, vec![1]);
        assert_eq!(w.minus, vec![0]);
        assert_eq!(w.gap, 0.25);
    }

    #[test]
    fn event_examples() {
        let p: f64 = 0.5;
        let g3: Vec<f64> = (0..8u32).map(|c| p.powi(c.count_ones() as i32) * (1.0 - p).powi(3 - c.count_ones() as i32)).collect();
        let g3 = GraphDistribution::new(3, DistributionKind::Graph, g3).unwrap();
        assert_eq!(event_probability(&g3, &EventSpec::always()).unwrap(), 1.0);
        assert!((event_probability(&g3, &EventSpec::nonempty()).unwrap() - 0.875).abs() < 1e-15);
    }
}
