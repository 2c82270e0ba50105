use super::pairs::{pair_count, PairIndex};
use crate::error::{Error, Result};

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

fn check_vertex(n: usize, v: usize, w: usize) -> Result<()> {
    if v >= n || w >= n {
        return Err(Error::InvalidGraph(format!(
            "pair ({}, {}) out of range for n={n}",
            v + 1,
            w + 1
        )));
    }
    if v == w {
        return Err(Error::InvalidGraph(format!("self-loop at vertex {}", v + 1)));
    }
    Ok(())
}

fn from_words_checked(bits: usize, words: Vec<u64>) -> Result<Vec<u64>> {
    let need = words_for(bits);
    let mut out = words;
    while out.len() > need {
        if out.pop() != Some(0) {
            return Err(Error::InvalidGraph("code has bits beyond the pair range".into()));
        }
    }
    out.resize(need, 0);
    if bits % 64 != 0 {
        if let Some(last) = out.last() {
            if last >> (bits % 64) != 0 {
                return Err(Error::InvalidGraph("code has bits beyond the pair range".into()));
            }
        }
    }
    Ok(out)
}

#[inline]
fn get(words: &[u64], k: usize) -> bool {
    words[k / 64] >> (k % 64) & 1 == 1
}

#[inline]
fn set(words: &mut [u64], k: usize, on: bool) -> bool {
    let mask = 1u64 << (k % 64);
    let was = words[k / 64] & mask != 0;
    if on {
        words[k / 64] |= mask;
    } else {
        words[k / 64] &= !mask;
    }
    was
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(64 * i + b)
            }
        })
    })
}

/// A labeled simple graph on `{0, .., n-1}`, stored as a bitmask over
/// [`PairIndex`] unordered indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    words: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            words: vec![0; words_for(pair_count(n))],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for k in 0..pair_count(n) {
            set(&mut g.words, k, true);
        }
        g
    }

    /// Builds a graph from 0-based vertex pairs. Duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(v, w) in edges {
            check_vertex(n, v, w)?;
            g.insert_edge(v, w);
        }
        Ok(g)
    }

    /// Decodes a canonical bitmask that fits in one word.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        Self::from_words(n, vec![code])
    }

    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        Ok(Graph {
            n,
            words: from_words_checked(pair_count(n), words)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The canonical code, when the bitmask fits in 64 bits.
    pub fn code(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        v != w && v < self.n && w < self.n && get(&self.words, PairIndex::unordered(self.n, v, w))
    }

    pub fn has_pair(&self, k: usize) -> bool {
        get(&self.words, k)
    }

    /// Inserts `{v, w}`; returns whether it was already present.
    pub fn insert_edge(&mut self, v: usize, w: usize) -> bool {
        let k = PairIndex::unordered(self.n, v, w);
        set(&mut self.words, k, true)
    }

    pub fn insert_pair(&mut self, k: usize) -> bool {
        set(&mut self.words, k, true)
    }

    pub fn remove_pair(&mut self, k: usize) -> bool {
        set(&mut self.words, k, false)
    }

    /// Removes `{v, w}`; returns whether it was present.
    pub fn remove_edge(&mut self, v: usize, w: usize) -> bool {
        let k = PairIndex::unordered(self.n, v, w);
        set(&mut self.words, k, false)
    }

    pub fn edge_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Occupied pair indices in increasing order.
    pub fn pair_indices(&self) -> impl Iterator<Item = usize> + '_ {
        ones(&self.words)
    }

    /// Edges as 0-based `(min, max)` pairs in canonical order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let idx = PairIndex::new(self.n);
        self.pair_indices().map(|k| idx.pair(k)).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (v, w) in self.edges() {
            deg[v] += 1;
            deg[w] += 1;
        }
        deg
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `(E ∪ add) \ remove`, requiring `add ∩ E = ∅` and `remove ⊆ E`.
    pub fn perturb(&self, add: &[(usize, usize)], remove: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone();
        for &(v, w) in add {
            check_vertex(self.n, v, w)?;
            if self.has_edge(v, w) {
                return Err(Error::Precondition(format!(
                    "cannot add {{{}, {}}}: edge already present",
                    v + 1,
                    w + 1
                )));
            }
            g.insert_edge(v, w);
        }
        for &(v, w) in remove {
            check_vertex(self.n, v, w)?;
            if !self.has_edge(v, w) {
                return Err(Error::Precondition(format!(
                    "cannot remove {{{}, {}}}: edge absent",
                    v + 1,
                    w + 1
                )));
            }
            g.remove_edge(v, w);
        }
        Ok(g)
    }

    /// Number of digraphs the forgetful map sends to this graph, `3^|E|`.
    /// `None` only if the count overflows `u128` (more than 80 edges).
    pub fn forgetful_preimage_size(&self) -> Option<u128> {
        3u128.checked_pow(self.edge_count() as u32)
    }
}

/// A labeled simple digraph on `{0, .., n-1}`.
///
/// Stored as a bitmask over ordered [`PairIndex`] indices, which makes the
/// canonical code the base-4 word with one digit per unordered pair
/// (0 none, 1 `min→max`, 2 `max→min`, 3 both).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    words: Vec<u64>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            words: vec![0; words_for(2 * pair_count(n))],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut d = Digraph::empty(n);
        for k in 0..2 * pair_count(n) {
            set(&mut d.words, k, true);
        }
        d
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Digraph::empty(n);
        for &(v, w) in arcs {
            check_vertex(n, v, w)?;
            d.insert_arc(v, w);
        }
        Ok(d)
    }

    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        Self::from_words(n, vec![code])
    }

    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        Ok(Digraph {
            n,
            words: from_words_checked(2 * pair_count(n), words)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn code(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn has_arc(&self, v: usize, w: usize) -> bool {
        v != w && v < self.n && w < self.n && get(&self.words, PairIndex::ordered(self.n, v, w))
    }

    pub fn insert_arc(&mut self, v: usize, w: usize) -> bool {
        let k = PairIndex::ordered(self.n, v, w);
        set(&mut self.words, k, true)
    }

    pub fn insert_ordered(&mut self, k: usize) -> bool {
        set(&mut self.words, k, true)
    }

    pub fn has_ordered(&self, k: usize) -> bool {
        get(&self.words, k)
    }

    pub fn remove_ordered(&mut self, k: usize) -> bool {
        set(&mut self.words, k, false)
    }

    pub fn remove_arc(&mut self, v: usize, w: usize) -> bool {
        let k = PairIndex::ordered(self.n, v, w);
        set(&mut self.words, k, false)
    }

    pub fn arc_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ordered_indices(&self) -> impl Iterator<Item = usize> + '_ {
        ones(&self.words)
    }

    /// Arcs as 0-based `(tail, head)` pairs in canonical order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let idx = PairIndex::new(self.n);
        self.ordered_indices().map(|k| idx.arc(k)).collect()
    }

    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

/// The forgetful map: `{v, w}` is an edge iff `(v, w)` or `(w, v)` is an arc.
pub fn forgetful_map(d: &Digraph) -> Graph {
    let mut g = Graph::empty(d.n);
    for k in d.ordered_indices() {
        g.insert_pair(k / 2);
    }
    g
}

/// Forgetful map on single-word codes with `pairs` unordered pairs (`pairs <= 32`).
#[inline]
pub fn forgetful_code(code: u64, pairs: usize) -> u64 {
    debug_assert!(pairs <= 32);
    let folded = (code | (code >> 1)) & 0x5555_5555_5555_5555;
    // compact every other bit
    let mut x = folded;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x & if pairs >= 64 { u64::MAX } else { (1u64 << pairs) - 1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_based(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
    }

    #[test]
    fn forgetful_map_examples() {
        let d = Digraph::from_arcs(3, &one_based(&[(1, 2), (2, 1), (3, 1)])).unwrap();
        assert_eq!(forgetful_map(&d).edges(), one_based(&[(1, 2), (1, 3)]));

        let d = Digraph::empty(4);
        assert_eq!(forgetful_map(&d).edge_count(), 0);

        let d = Digraph::from_arcs(2, &one_based(&[(2, 1)])).unwrap();
        assert_eq!(forgetful_map(&d).edges(), vec![(0, 1)]);
    }

    #[test]
    fn code_fold_matches_structural_map() {
        for code in 0..4096u64 {
            let d = Digraph::from_code(4, code).unwrap();
            assert_eq!(forgetful_map(&d).code().unwrap(), forgetful_code(code, 6));
        }
    }

    #[test]
    fn rejects_self_loops_and_out_of_range() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Digraph::from_arcs(2, &[(0, 0)]).is_err());
        assert!(Graph::from_code(3, 1 << 3).is_err());
        assert!(Graph::from_code(3, 0b111).is_ok());
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn preimage_sizes() {
        assert_eq!(Graph::empty(5).forgetful_preimage_size(), Some(1));
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.forgetful_preimage_size(), Some(9));
        assert_eq!(Graph::complete(4).forgetful_preimage_size(), Some(729));
    }

    #[test]
    fn preimage_size_matches_brute_force() {
        // brute force: count digraphs on n=3 and n=4 mapping to a fixed graph
        let target = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let hits = (0..64u64)
            .filter(|&c| forgetful_map(&Digraph::from_code(3, c).unwrap()) == target)
            .count();
        assert_eq!(hits, 9);
        let k4 = Graph::complete(4);
        let hits = (0..4096u64)
            .filter(|&c| forgetful_map(&Digraph::from_code(4, c).unwrap()) == k4)
            .count();
        assert_eq!(hits, 729);
    }

    #[test]
    fn perturb_examples() {
        let g = Graph::empty(3);
        let h = g.perturb(&[(0, 1)], &[]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1)]);

        let k3 = Graph::complete(3);
        let path = k3.perturb(&[], &[(0, 1)]).unwrap();
        assert_eq!(path.edges(), vec![(0, 2), (1, 2)]);

        assert_eq!(k3.perturb(&[], &[]).unwrap(), k3);
        assert!(k3.perturb(&[(0, 1)], &[]).is_err());
        assert!(g.perturb(&[], &[(0, 1)]).is_err());
    }
}
