use super::pairs::pair_count;
use super::simple::{Digraph, Graph};
use crate::error::{Error, Result};

/// Default cap for exhaustive graph enumeration (`2^15` graphs at n=6).
pub const GRAPH_N_MAX: usize = 6;
/// Default cap for exhaustive digraph enumeration (`4^10` digraphs at n=5).
pub const DIGRAPH_N_MAX: usize = 5;

/// Exhaustive enumeration with configurable size caps.
#[derive(Clone, Copy, Debug)]
pub struct Enumerator {
    pub graph_n_max: usize,
    pub digraph_n_max: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            graph_n_max: GRAPH_N_MAX,
            digraph_n_max: DIGRAPH_N_MAX,
        }
    }
}

impl Enumerator {
    fn check(n: usize, max: usize, what: &'static str, log2_states: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Precondition("enumeration needs n >= 1".into()));
        }
        // single-word codes are a hard limit regardless of configuration
        if n > max || log2_states > 32 {
            return Err(Error::TooLarge {
                what,
                n,
                max,
                states: format!("2^{log2_states}"),
            });
        }
        Ok(())
    }

    /// All `2^C(n,2)` graphs in canonical code order.
    pub fn graphs(&self, n: usize) -> Result<impl Iterator<Item = Graph>> {
        let bits = pair_count(n);
        Self::check(n, self.graph_n_max, "graphs", bits)?;
        Ok((0..1u64 << bits).map(move |c| Graph::from_code(n, c).expect("code in range")))
    }

    /// All `4^C(n,2)` digraphs in canonical code order.
    pub fn digraphs(&self, n: usize) -> Result<impl Iterator<Item = Digraph>> {
        let bits = 2 * pair_count(n);
        Self::check(n, self.digraph_n_max, "digraphs", bits)?;
        Ok((0..1u64 << bits).map(move |c| Digraph::from_code(n, c).expect("code in range")))
    }

    /// Number of graph codes at `n`, after the cap check.
    pub fn graph_states(&self, n: usize) -> Result<usize> {
        let bits = pair_count(n);
        Self::check(n, self.graph_n_max, "graphs", bits)?;
        Ok(1usize << bits)
    }

    pub fn digraph_states(&self, n: usize) -> Result<usize> {
        let bits = 2 * pair_count(n);
        Self::check(n, self.digraph_n_max, "digraphs", bits)?;
        Ok(1usize << bits)
    }
}

pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    Enumerator::default().graphs(n)
}

pub fn enumerate_digraphs(n: usize) -> Result<impl Iterator<Item = Digraph>> {
    Enumerator::default().digraphs(n)
}
