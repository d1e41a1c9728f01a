//! Edge-colorings of complete graphs and the substitution algebra
//! (restriction, join, blow-up) used to compose them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bitset::ColorGraph;
use crate::error::{invalid, Result};

/// A color id. Colors are 1-based; `0` never appears in a finished coloring.
pub type Color = u8;

/// Largest palette a coloring may declare.
pub const MAX_COLORS: usize = Color::MAX as usize;

/// Position of the pair `u < v` in the flat upper-triangular array.
#[inline]
pub(crate) fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

#[inline]
pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A complete graph on `n` vertices with every edge colored from `1..=k`.
///
/// Colors live in a flat upper-triangular array: the edge `{u, v}` with
/// `u < v` is stored at row `u`, column `v - u - 1`, rows laid end to end.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "EdgeList", try_from = "EdgeList")]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    colors: Vec<Color>,
}

impl EdgeColoring {
    /// `K_n` with every edge in `color`.
    pub fn monochromatic(n: usize, k: usize, color: Color) -> Result<Self> {
        check_palette(k)?;
        if n > 1 && (color == 0 || color as usize > k) {
            return invalid(format!("color {color} outside 1..={k}"));
        }
        Ok(EdgeColoring { n, k, colors: vec![color; pair_count(n)] })
    }

    /// Builds a coloring by evaluating `f(u, v)` for every `u < v`.
    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(usize, usize) -> Color) -> Result<Self> {
        let mut colors = Vec::with_capacity(pair_count(n));
        for u in 0..n {
            for v in u + 1..n {
                colors.push(f(u, v));
            }
        }
        Self::from_upper_triangle(n, k, colors)
    }

    /// Takes ownership of an upper-triangular color array in row order.
    pub fn from_upper_triangle(n: usize, k: usize, colors: Vec<Color>) -> Result<Self> {
        check_palette(k)?;
        if colors.len() != pair_count(n) {
            return invalid(format!("expected {} edge colors for n = {n}, got {}", pair_count(n), colors.len()));
        }
        if let Some(&bad) = colors.iter().find(|&&c| c == 0 || c as usize > k) {
            return invalid(format!("color {bad} outside 1..={k}"));
        }
        Ok(EdgeColoring { n, k, colors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared palette size; may exceed the number of colors actually used.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of the edge `{u, v}`. Panics if `u == v` or either is out of range.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u != v, "no self-pairs");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        assert!(b < self.n, "vertex {b} out of range for n = {}", self.n);
        self.colors[pair_index(self.n, a, b)]
    }

    /// The raw upper-triangular color array.
    pub fn edge_colors(&self) -> &[Color] {
        &self.colors
    }

    /// All edges as `(u, v, color)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v, self.colors[pair_index(n, u, v)])))
    }

    /// Exact set of colors appearing on at least one edge.
    pub fn colors_used(&self) -> BTreeSet<Color> {
        let mut seen = [false; 256];
        for &c in &self.colors {
            seen[c as usize] = true;
        }
        (1..=255u8).filter(|&c| seen[c as usize]).collect()
    }

    /// Same edges, different declared palette. Fails if `k` is smaller than a used color.
    pub fn with_palette(&self, k: usize) -> Result<Self> {
        Self::from_upper_triangle(self.n, k, self.colors.clone())
    }

    /// Applies `map` to every edge color.
    pub fn recolor(&self, k: usize, map: impl Fn(Color) -> Color) -> Result<Self> {
        Self::from_upper_triangle(self.n, k, self.colors.iter().map(|&c| map(c)).collect())
    }

    /// Induced coloring on `vertices`, relabeled `0..|S|` in ascending original order.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return invalid("restrict to an empty vertex set");
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.last().filter(|&&v| v >= self.n) {
            return invalid(format!("vertex {v} out of range for n = {}", self.n));
        }
        Self::from_fn(sorted.len(), self.k, |i, j| self.color(sorted[i], sorted[j]))
    }

    /// Disjoint union of `a` and `b` with every cross edge colored `fresh`.
    pub fn join(a: &EdgeColoring, b: &EdgeColoring, fresh: Color) -> Result<Self> {
        if fresh == 0 {
            return invalid("color ids are 1-based");
        }
        if a.colors_used().contains(&fresh) || b.colors_used().contains(&fresh) {
            return invalid(format!("join color {fresh} is already used by an operand"));
        }
        let k = a.k.max(b.k).max(fresh as usize);
        let split = a.n;
        Self::from_fn(a.n + b.n, k, |u, v| match (u < split, v < split) {
            (true, true) => a.color(u, v),
            (false, false) => b.color(u - split, v - split),
            _ => fresh,
        })
    }

    /// Blow-up: replaces vertex `i` of `quotient` by a copy of `parts[i]`;
    /// edges between blocks `i` and `j` take `quotient.color(i, j)`.
    ///
    /// With `strict`, the quotient's colors must be disjoint from every color
    /// used inside the parts.
    pub fn substitute(quotient: &EdgeColoring, parts: &[EdgeColoring], strict: bool) -> Result<Self> {
        if parts.len() != quotient.n {
            return invalid(format!("quotient has {} vertices but {} parts were given", quotient.n, parts.len()));
        }
        if parts.iter().any(|p| p.n == 0) {
            return invalid("substituted parts must be nonempty");
        }
        if strict {
            let outer = quotient.colors_used();
            for (i, p) in parts.iter().enumerate() {
                if let Some(c) = p.colors_used().intersection(&outer).next() {
                    return invalid(format!("part {i} uses quotient color {c}"));
                }
            }
        }
        let mut block = Vec::new();
        let mut local = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            for j in 0..p.n {
                block.push(i);
                local.push(j);
            }
        }
        let k = parts.iter().map(|p| p.k).max().unwrap_or(0).max(quotient.k);
        Self::from_fn(block.len(), k, |u, v| {
            if block[u] == block[v] {
                parts[block[u]].color(local[u], local[v])
            } else {
                quotient.color(block[u], block[v])
            }
        })
    }

    /// Deterministic SHA-256 digest of the labeled coloring, as lowercase hex.
    ///
    /// Byte layout (stable): `b"gallai-coloring/v1"`, `n` as u64 LE, `k` as
    /// u64 LE, then one byte per edge in upper-triangular row order.
    pub fn canonical_digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"gallai-coloring/v1");
        h.update((self.n as u64).to_le_bytes());
        h.update((self.k as u64).to_le_bytes());
        h.update(&self.colors);
        hex::encode(h.finalize())
    }

    /// Adjacency bitsets of color class `color`.
    pub fn color_graph(&self, color: Color) -> ColorGraph {
        let mut g = ColorGraph::new(self.n);
        for (u, v, c) in self.edges() {
            if c == color {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// One [`ColorGraph`] per color `1..=k`, indexed by `color - 1`.
    pub fn color_graphs(&self) -> Vec<ColorGraph> {
        let mut gs: Vec<ColorGraph> = (0..self.k).map(|_| ColorGraph::new(self.n)).collect();
        for (u, v, c) in self.edges() {
            gs[c as usize - 1].add_edge(u, v);
        }
        gs
    }
}

fn check_palette(k: usize) -> Result<()> {
    if k > MAX_COLORS {
        return invalid(format!("palette of {k} colors exceeds {MAX_COLORS}"));
    }
    Ok(())
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring(n={}, k={}, [", self.n, self.k)?;
        for u in 0..self.n.saturating_sub(1) {
            if u > 0 {
                write!(f, " |")?;
            }
            for v in u + 1..self.n {
                write!(f, " {}", self.color(u, v))?;
            }
        }
        write!(f, " ])")
    }
}

/// JSON interchange shape: explicit `[u, v, color]` triples.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<[usize; 3]>,
}

impl From<EdgeColoring> for EdgeList {
    fn from(c: EdgeColoring) -> Self {
        EdgeList { n: c.n, k: c.k, edges: c.edges().map(|(u, v, col)| [u, v, col as usize]).collect() }
    }
}

impl TryFrom<EdgeList> for EdgeColoring {
    type Error = crate::Error;

    fn try_from(list: EdgeList) -> Result<Self> {
        let n = list.n;
        let mut colors = vec![0u8; pair_count(n)];
        for [u, v, c] in list.edges {
            if u == v || u >= n || v >= n {
                return invalid(format!("bad edge ({u}, {v}) for n = {n}"));
            }
            if c == 0 || c > MAX_COLORS {
                return invalid(format!("bad color {c} on edge ({u}, {v})"));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let slot = &mut colors[pair_index(n, a, b)];
            if *slot != 0 {
                return invalid(format!("edge ({a}, {b}) listed twice"));
            }
            *slot = c as Color;
        }
        if let Some(i) = colors.iter().position(|&c| c == 0) {
            let (u, v) = pair_at(n, i);
            return invalid(format!("edge ({u}, {v}) has no color"));
        }
        EdgeColoring::from_upper_triangle(n, list.k, colors)
    }
}

/// Inverse of [`pair_index`].
pub(crate) fn pair_at(n: usize, mut i: usize) -> (usize, usize) {
    let mut u = 0;
    while i >= n - u - 1 {
        i -= n - u - 1;
        u += 1;
    }
    (u, u + 1 + i)
}
