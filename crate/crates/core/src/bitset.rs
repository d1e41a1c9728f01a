//! Dense per-color adjacency rows used by the detectors.

/// Bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    len: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl VertexSet {
    pub fn empty(len: usize) -> Self {
        VertexSet { len, words: vec![0; words_for(len)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for v in 0..len {
            s.insert(v);
        }
        s
    }

    pub fn from_iter_in(len: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(len);
        for v in items {
            s.insert(v);
        }
        s
    }

    pub fn len_universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.len && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn intersect_with(&mut self, row: &[u64]) {
        for (w, r) in self.words.iter_mut().zip(row) {
            *w &= r;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_ones(&self.words)
    }
}

pub(crate) fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Adjacency of a single color class of a colored complete graph.
#[derive(Clone, Debug)]
pub struct ColorGraph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl ColorGraph {
    pub(crate) fn new(n: usize) -> Self {
        let stride = words_for(n);
        ColorGraph { n, stride, rows: vec![0; stride * n] }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
        self.rows[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.stride + u / 64] &= !(1 << (u % 64));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    /// Row of `v` as a single word; only meaningful when `n <= 64`.
    #[inline]
    pub(crate) fn word(&self, v: usize) -> u64 {
        self.rows[v * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.row(v))
    }

    /// Number of vertices adjacent to both `a` and `b` and lying in `mask`.
    #[inline]
    pub fn common_in(&self, a: usize, b: usize, mask: &[u64]) -> usize {
        self.row(a).iter().zip(self.row(b)).zip(mask).map(|((x, y), m)| (x & y & m).count_ones() as usize).sum()
    }
}
