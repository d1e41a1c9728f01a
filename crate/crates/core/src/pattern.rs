//! Forbidden target patterns and detection certificates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::error::{invalid, Error, Result};

/// Largest explicit pattern accepted.
pub const MAX_EXPLICIT_ORDER: usize = 8;
/// Largest order of any pattern (pattern adjacency is held in `u32` masks).
pub const MAX_PATTERN_ORDER: usize = 32;

/// A pattern to look for as a monochromatic (not necessarily induced) subgraph.
///
/// Vertex numbering: a wheel's rim is `0..rim` in cycle order and the hub is
/// vertex `rim`; paths and cycles are numbered along the path or cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternSpec {
    Wheel { rim: usize },
    Path { order: usize },
    Cycle { order: usize },
    Clique { order: usize },
    Explicit { order: usize, edges: Vec<(usize, usize)> },
}

impl PatternSpec {
    pub const W4: PatternSpec = PatternSpec::Wheel { rim: 4 };
    pub const P3: PatternSpec = PatternSpec::Path { order: 3 };
    pub const C4: PatternSpec = PatternSpec::Cycle { order: 4 };
    pub const K3: PatternSpec = PatternSpec::Clique { order: 3 };

    pub fn wheel(rim: usize) -> Result<Self> {
        Self::Wheel { rim }.validated()
    }

    pub fn path(order: usize) -> Result<Self> {
        Self::Path { order }.validated()
    }

    pub fn cycle(order: usize) -> Result<Self> {
        Self::Cycle { order }.validated()
    }

    pub fn clique(order: usize) -> Result<Self> {
        Self::Clique { order }.validated()
    }

    /// An explicit pattern; must be connected with 2..=8 vertices.
    pub fn explicit(order: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::Explicit { order, edges }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let order = self.order();
        match self {
            PatternSpec::Wheel { rim } if *rim < 3 => return invalid("a wheel needs at least 3 rim vertices"),
            PatternSpec::Path { order } if *order < 2 => return invalid("a path needs at least 2 vertices"),
            PatternSpec::Cycle { order } if *order < 3 => return invalid("a cycle needs at least 3 vertices"),
            PatternSpec::Clique { order } if *order < 2 => return invalid("a clique needs at least 2 vertices"),
            PatternSpec::Explicit { order, edges } => {
                if !(2..=MAX_EXPLICIT_ORDER).contains(order) {
                    return invalid(format!("explicit patterns need 2..={MAX_EXPLICIT_ORDER} vertices"));
                }
                for &(u, v) in edges {
                    if u == v || u >= *order || v >= *order {
                        return invalid(format!("bad pattern edge ({u}, {v})"));
                    }
                }
            }
            _ => {}
        }
        if order > MAX_PATTERN_ORDER {
            return invalid(format!("pattern order {order} exceeds {MAX_PATTERN_ORDER}"));
        }
        if !self.graph_unchecked().is_connected() {
            return invalid("pattern must be connected");
        }
        Ok(())
    }

    /// Number of pattern vertices.
    pub fn order(&self) -> usize {
        match self {
            PatternSpec::Wheel { rim } => rim + 1,
            PatternSpec::Path { order }
            | PatternSpec::Cycle { order }
            | PatternSpec::Clique { order }
            | PatternSpec::Explicit { order, .. } => *order,
        }
    }

    pub fn graph(&self) -> Result<PatternGraph> {
        self.validate()?;
        Ok(self.graph_unchecked())
    }

    fn graph_unchecked(&self) -> PatternGraph {
        let order = self.order().min(MAX_PATTERN_ORDER);
        let mut g = PatternGraph { order, adj: vec![0; order] };
        match self {
            PatternSpec::Wheel { rim } => {
                for i in 0..*rim {
                    g.add(i, (i + 1) % rim);
                    g.add(i, *rim);
                }
            }
            PatternSpec::Path { order } => {
                for i in 1..*order {
                    g.add(i - 1, i);
                }
            }
            PatternSpec::Cycle { order } => {
                for i in 0..*order {
                    g.add(i, (i + 1) % order);
                }
            }
            PatternSpec::Clique { order } => {
                for i in 0..*order {
                    for j in i + 1..*order {
                        g.add(i, j);
                    }
                }
            }
            PatternSpec::Explicit { edges, .. } => {
                for &(u, v) in edges {
                    if u < order && v < order && u != v {
                        g.add(u, v);
                    }
                }
            }
        }
        g
    }

    /// Parses the explicit-pattern text format: first non-comment line is the
    /// vertex count, each further line is an edge `u v`.
    pub fn parse_explicit(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty pattern".into() })?;
        let order =
            first.parse().map_err(|_| Error::Parse { line, msg: format!("expected vertex count, got {first:?}") })?;
        let mut edges = Vec::new();
        for (line, l) in lines {
            let nums: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse { line, msg: format!("bad vertex {t:?}") }))
                .collect::<Result<_>>()?;
            match nums[..] {
                [u, v] => edges.push((u, v)),
                _ => return Err(Error::Parse { line, msg: "expected `u v`".into() }),
            }
        }
        Self::explicit(order, edges)
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::Wheel { rim } => write!(f, "W{rim}"),
            PatternSpec::Path { order } => write!(f, "P{order}"),
            PatternSpec::Cycle { order } => write!(f, "C{order}"),
            PatternSpec::Clique { order } => write!(f, "K{order}"),
            PatternSpec::Explicit { order, edges } => write!(f, "explicit({order}, {} edges)", edges.len()),
        }
    }
}

/// Parses `w4`, `p3`, `c4`, `k3`, `kt:N`, `wheel:M`, `path:N`, `cycle:N`.
/// Explicit patterns come from a file; see [`PatternSpec::parse_explicit`].
impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let num = |t: &str| -> Result<usize> {
            t.parse().map_err(|_| Error::InvalidArgument(format!("bad pattern size {t:?}")))
        };
        match s.as_str() {
            "w4" => Ok(Self::W4),
            "p3" => Ok(Self::P3),
            "c4" => Ok(Self::C4),
            "k3" => Ok(Self::K3),
            _ => match s.split_once(':') {
                Some(("kt", t)) => Self::clique(num(t)?),
                Some(("wheel", t)) => Self::wheel(num(t)?),
                Some(("path", t)) => Self::path(num(t)?),
                Some(("cycle", t)) => Self::cycle(num(t)?),
                _ => invalid(format!("unknown pattern {s:?}")),
            },
        }
    }
}

/// Simple graph on at most 32 vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    order: usize,
    adj: Vec<u32>,
}

impl PatternGraph {
    fn add(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors_mask(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in u + 1..self.order {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn is_connected(&self) -> bool {
        if self.order == 0 {
            return false;
        }
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen.count_ones() as usize == self.order
    }

    /// Representatives of the orbits of directed edges `(p, q)` under the
    /// automorphism group. Falls back to every directed edge above 8 vertices.
    pub fn directed_edge_orbit_reps(&self) -> Vec<(usize, usize)> {
        let mut directed: Vec<(usize, usize)> = Vec::new();
        for (u, v) in self.edges() {
            directed.push((u, v));
            directed.push((v, u));
        }
        if self.order > MAX_EXPLICIT_ORDER {
            return directed;
        }
        let autos = self.automorphisms();
        let mut reps = Vec::new();
        let mut covered = std::collections::HashSet::new();
        for &(p, q) in &directed {
            if covered.contains(&(p, q)) {
                continue;
            }
            reps.push((p, q));
            for a in &autos {
                covered.insert((a[p], a[q]));
            }
        }
        reps
    }

    fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(self.order);
        self.extend_auto(&mut perm, 0, &mut out);
        out
    }

    fn extend_auto(&self, perm: &mut Vec<usize>, used: u32, out: &mut Vec<Vec<usize>>) {
        let i = perm.len();
        if i == self.order {
            out.push(perm.clone());
            return;
        }
        for img in 0..self.order {
            if used >> img & 1 == 1 || self.degree(img) != self.degree(i) {
                continue;
            }
            if (0..i).all(|j| self.adjacent(i, j) == self.adjacent(img, perm[j])) {
                perm.push(img);
                self.extend_auto(perm, used | 1 << img, out);
                perm.pop();
            }
        }
    }
}

/// A certificate: pattern vertex `i` sits on host vertex `vertices[i]`.
///
/// `color` is the common color of every mapped edge; `None` marks a rainbow
/// triangle certificate (pattern `K3`, three distinct colors).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub pattern: PatternSpec,
    pub color: Option<Color>,
    pub vertices: Vec<usize>,
}

impl Embedding {
    /// Re-checks the certificate against `c`.
    pub fn validate(&self, c: &EdgeColoring) -> bool {
        let Ok(g) = self.pattern.graph() else {
            return false;
        };
        if self.vertices.len() != g.order() || self.vertices.iter().any(|&v| v >= c.n()) {
            return false;
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.vertices.len() {
            return false;
        }
        let colors: Vec<Color> = g.edges().iter().map(|&(p, q)| c.color(self.vertices[p], self.vertices[q])).collect();
        match self.color {
            Some(col) => colors.iter().all(|&x| x == col),
            None => {
                self.pattern == PatternSpec::K3
                    && colors[0] != colors[1]
                    && colors[1] != colors[2]
                    && colors[0] != colors[2]
            }
        }
    }
}
