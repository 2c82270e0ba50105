/// Largest vertex count accepted from external input. A digraph on this many
/// vertices takes about 12 MB.
pub const MAX_VERTICES: usize = 10_000;

/// Number of unordered pairs `C(n, 2)`.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Bijection between vertex pairs and contiguous indices.
///
/// Unordered pairs `{v, w}` with `v < w` are numbered lexicographically by
/// `(v, w)`. Ordered pairs get index `2 * pair + dir`, where `dir = 0` for the
/// arc `(min, max)` and `dir = 1` for `(max, min)`. Vertices are 0-based here;
/// the JSON layer shifts to 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIndex {
    n: usize,
    pairs: Vec<(u32, u32)>,
}

impl PairIndex {
    pub fn new(n: usize) -> Self {
        let mut pairs = Vec::with_capacity(pair_count(n));
        for v in 0..n {
            for w in v + 1..n {
                pairs.push((v as u32, w as u32));
            }
        }
        PairIndex { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unordered_len(&self) -> usize {
        self.pairs.len()
    }

    pub fn ordered_len(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Index of `{v, w}`; `v != w`, both `< n`.
    #[inline]
    pub fn unordered(n: usize, v: usize, w: usize) -> usize {
        debug_assert!(v != w && v < n && w < n);
        let (a, b) = if v < w { (v, w) } else { (w, v) };
        a * (2 * n - a - 1) / 2 + (b - a - 1)
    }

    /// Index of the arc `(v, w)`.
    #[inline]
    pub fn ordered(n: usize, v: usize, w: usize) -> usize {
        2 * Self::unordered(n, v, w) + usize::from(v > w)
    }

    /// `(min, max)` endpoints of unordered pair `k`.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        let (a, b) = self.pairs[k];
        (a as usize, b as usize)
    }

    /// Tail and head of ordered pair `k`.
    pub fn arc(&self, k: usize) -> (usize, usize) {
        let (a, b) = self.pair(k / 2);
        if k % 2 == 0 {
            (a, b)
        } else {
            (b, a)
        }
    }
}
