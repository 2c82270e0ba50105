use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::pairs::pair_count;
use super::simple::{forgetful_map, Digraph, Graph};
use crate::error::{Error, Result};

/// Declared monotonicity of an event. Tags are asserted by the author of the
/// event, not inferred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    None,
}

type GraphPredicate = Arc<dyn Fn(&Graph) -> bool + Send + Sync>;
type DigraphPredicate = Arc<dyn Fn(&Digraph) -> bool + Send + Sync>;

/// A decidable graph property with a declared monotonicity.
#[derive(Clone)]
pub struct EventSpec {
    name: String,
    monotonicity: Monotonicity,
    predicate: GraphPredicate,
}

impl fmt::Debug for EventSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EventSpec")
            .field("name", &self.name)
            .field("monotonicity", &self.monotonicity)
            .finish()
    }
}

fn has_triangle(g: &Graph) -> bool {
    let n = g.n();
    (0..n).any(|a| {
        (a + 1..n).any(|b| g.has_edge(a, b) && (b + 1..n).any(|c| g.has_edge(a, c) && g.has_edge(b, c)))
    })
}

fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if !seen[w] && g.has_edge(v, w) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn parse_bound(s: &str, prefix: &str) -> Option<usize> {
    s.strip_prefix(prefix)?.trim().parse().ok()
}

impl EventSpec {
    pub fn new<F>(name: impl Into<String>, monotonicity: Monotonicity, predicate: F) -> Self
    where
        F: Fn(&Graph) -> bool + Send + Sync + 'static,
    {
        EventSpec {
            name: name.into(),
            monotonicity,
            predicate: Arc::new(predicate),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn holds(&self, g: &Graph) -> bool {
        (self.predicate)(g)
    }

    pub fn always() -> Self {
        Self::new("always", Monotonicity::Increasing, |_| true)
    }

    pub fn nonempty() -> Self {
        Self::new("nonempty", Monotonicity::Increasing, |g| g.edge_count() >= 1)
    }

    pub fn empty() -> Self {
        Self::new("empty", Monotonicity::Decreasing, |g| g.edge_count() == 0)
    }

    pub fn edges_at_least(k: usize) -> Self {
        Self::new(format!("edges>={k}"), Monotonicity::Increasing, move |g| g.edge_count() >= k)
    }

    pub fn edges_at_most(k: usize) -> Self {
        Self::new(format!("edges<={k}"), Monotonicity::Decreasing, move |g| g.edge_count() <= k)
    }

    pub fn triangle() -> Self {
        Self::new("triangle", Monotonicity::Increasing, has_triangle)
    }

    pub fn triangle_free() -> Self {
        Self::new("triangle-free", Monotonicity::Decreasing, |g| !has_triangle(g))
    }

    pub fn connected() -> Self {
        Self::new("connected", Monotonicity::Increasing, is_connected)
    }

    pub fn max_degree_at_least(k: usize) -> Self {
        Self::new(format!("max-degree>={k}"), Monotonicity::Increasing, move |g| {
            g.degrees().into_iter().any(|d| d >= k)
        })
    }

    pub fn has_isolated() -> Self {
        Self::new("has-isolated", Monotonicity::Decreasing, |g| {
            g.degrees().into_iter().any(|d| d == 0)
        })
    }

    pub fn even_edges() -> Self {
        Self::new("even-edges", Monotonicity::None, |g| g.edge_count() % 2 == 0)
    }

    /// The eight events used by the exact transfer checks.
    pub fn builtins() -> Vec<EventSpec> {
        vec![
            Self::always(),
            Self::nonempty(),
            Self::edges_at_least(2),
            Self::triangle(),
            Self::connected(),
            Self::max_degree_at_least(2),
            Self::triangle_free(),
            Self::even_edges(),
        ]
    }

    /// Parses an event name such as `triangle`, `edges>=3` or `max-degree>=2`.
    pub fn parse(name: &str) -> Result<Self> {
        let s = name.trim();
        let ev = match s {
            "always" => Self::always(),
            "nonempty" => Self::nonempty(),
            "empty" => Self::empty(),
            "triangle" => Self::triangle(),
            "triangle-free" => Self::triangle_free(),
            "connected" => Self::connected(),
            "has-isolated" => Self::has_isolated(),
            "even-edges" => Self::even_edges(),
            _ => {
                if let Some(k) = parse_bound(s, "edges>=") {
                    Self::edges_at_least(k)
                } else if let Some(k) = parse_bound(s, "edges<=") {
                    Self::edges_at_most(k)
                } else if let Some(k) = parse_bound(s, "max-degree>=") {
                    Self::max_degree_at_least(k)
                } else {
                    return Err(Error::Parse(format!("unknown event {s:?}")));
                }
            }
        };
        Ok(ev)
    }

    /// Samples random subset pairs `G1 ⊆ G2` on `n` vertices and returns the
    /// first pair that contradicts the declared tag, if any.
    pub fn falsify_tag<R: Rng>(&self, n: usize, trials: usize, rng: &mut R) -> Option<(Graph, Graph)> {
        let pairs = pair_count(n);
        for _ in 0..trials {
            let (small, large) = random_nested_pair(n, pairs, rng);
            let (a, b) = (self.holds(&small), self.holds(&large));
            let bad = match self.monotonicity {
                Monotonicity::Increasing => a && !b,
                Monotonicity::Decreasing => b && !a,
                Monotonicity::None => false,
            };
            if bad {
                return Some((small, large));
            }
        }
        None
    }
}

fn random_nested_pair<R: Rng>(n: usize, pairs: usize, rng: &mut R) -> (Graph, Graph) {
    let p_large: f64 = rng.random();
    let keep: f64 = rng.random();
    let mut large = Graph::empty(n);
    let mut small = Graph::empty(n);
    for k in 0..pairs {
        if rng.random::<f64>() < p_large {
            large.insert_pair(k);
            if rng.random::<f64>() < keep {
                small.insert_pair(k);
            }
        }
    }
    (small, large)
}

/// A graph event evaluated on digraphs through the forgetful map.
#[derive(Clone)]
pub struct DigraphEvent {
    name: String,
    monotonicity: Monotonicity,
    predicate: DigraphPredicate,
}

impl fmt::Debug for DigraphEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DigraphEvent")
            .field("name", &self.name)
            .field("monotonicity", &self.monotonicity)
            .finish()
    }
}

impl DigraphEvent {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn holds(&self, d: &Digraph) -> bool {
        (self.predicate)(d)
    }
}

/// The preimage event: holds on `d` iff `q` holds on the forgetful image of `d`.
/// Monotone events stay monotone in the same direction.
pub fn lift_event(q: &EventSpec) -> DigraphEvent {
    let inner = q.predicate.clone();
    DigraphEvent {
        name: format!("lift({})", q.name),
        monotonicity: q.monotonicity,
        predicate: Arc::new(move |d| inner(&forgetful_map(d))),
    }
}
