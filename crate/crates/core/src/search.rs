//! Backtracking search for colorings of `K_n` that avoid monochromatic
//! patterns (and optionally rainbow triangles).
//!
//! Edges are assigned in a fixed order (vertex by vertex by default, see
//! [`EdgeOrder`]). After every assignment only the patterns through the new
//! edge are checked, and every later edge loses the colors that would now
//! complete a pattern; a branch ends when some edge has no color left.
//!
//! Runs are split into restarts with doubling node budgets; restart 0 tries
//! colors in ascending order, later restarts use a seeded per-edge color
//! order. The first few edges are enumerated up front and the
//! resulting branches are searched in order (optionally on several threads)
//! with a merge rule that makes the outcome independent of thread count.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::ColorGraph;
use crate::coloring::{pair_count, Color, EdgeColoring};
use crate::detect::{find_mono, find_rainbow_triangle};
use crate::error::{invalid, Result};
use crate::kernel;
use crate::matcher::{find_embedding, Plan};
use crate::pattern::PatternSpec;

/// Node budget of the first restart; each later restart doubles it.
pub const RESTART_BASE_BUDGET: u64 = 1 << 14;
/// Number of leading edges enumerated before branching.
pub const SPLIT_DEPTH: usize = 6;
/// Largest `n` the search supports.
pub const MAX_SEARCH_ORDER: usize = 64;
/// Largest palette the search supports.
pub const MAX_SEARCH_COLORS: usize = 64;

/// Which colors a forbidden pattern applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Every,
    Color(Color),
}

impl Scope {
    fn covers(self, c: Color) -> bool {
        match self {
            Scope::Every => true,
            Scope::Color(x) => x == c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Forbidden {
    pub pattern: PatternSpec,
    pub scope: Scope,
}

/// Symmetry breaking applied during the search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    None,
    /// Edge `(0,1)` gets color 1 and a new color may only appear once every
    /// smaller color has appeared.
    #[default]
    ColorSwap,
    /// `ColorSwap` plus: the colors on vertex 0's edges are non-decreasing.
    VertexOrder,
}

impl Symmetry {
    /// Color renaming is only applied when no constraint singles out a
    /// color; the vertex rule always applies.
    fn renames_colors(self, task: &SearchTask) -> bool {
        self != Symmetry::None && task.forbidden.iter().all(|f| f.scope == Scope::Every)
    }
}

/// Order in which the search assigns edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeOrder {
    /// Vertex by vertex: `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ..`.
    /// Each prefix of whole vertices is a complete coloring of a smaller
    /// `K_m`, so conflicts among early vertices surface early.
    #[default]
    Colex,
    /// Row by row: `(0,1), (0,2), .., (0,n-1), (1,2), ..`.
    Lex,
}

impl EdgeOrder {
    pub fn edges(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            EdgeOrder::Colex => (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect(),
            EdgeOrder::Lex => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        }
    }
}

/// A coloring-existence problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTask {
    pub n: usize,
    pub k: usize,
    pub forbidden: Vec<Forbidden>,
    #[serde(default)]
    pub forbid_rainbow_triangle: bool,
    #[serde(default)]
    pub symmetry: Symmetry,
    #[serde(default)]
    pub edge_order: EdgeOrder,
    pub node_limit: u64,
    #[serde(default)]
    pub seed: u64,
}

impl SearchTask {
    /// Avoid `pattern` in every one of `k` colors.
    pub fn avoid_everywhere(n: usize, k: usize, pattern: PatternSpec, node_limit: u64) -> Self {
        SearchTask {
            n,
            k,
            forbidden: vec![Forbidden { pattern, scope: Scope::Every }],
            forbid_rainbow_triangle: false,
            symmetry: Symmetry::ColorSwap,
            edge_order: EdgeOrder::Colex,
            node_limit,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_SEARCH_ORDER {
            return invalid(format!("search order must be in 1..={MAX_SEARCH_ORDER}, got {}", self.n));
        }
        if self.k == 0 || self.k > MAX_SEARCH_COLORS {
            return invalid(format!("search palette must be in 1..={MAX_SEARCH_COLORS}"));
        }
        if self.node_limit == 0 {
            return invalid("node limit must be at least 1");
        }
        for f in &self.forbidden {
            f.pattern.validate()?;
            if let Scope::Color(c) = f.scope {
                if c == 0 || c as usize > self.k {
                    return invalid(format!("scope color {c} outside 1..={}", self.k));
                }
            }
        }
        Ok(())
    }

    /// `true` iff `c` satisfies every constraint of the task.
    pub fn accepts(&self, c: &EdgeColoring) -> bool {
        if c.n() != self.n || c.colors_used().iter().any(|&x| x as usize > self.k) {
            return false;
        }
        if self.forbid_rainbow_triangle && find_rainbow_triangle(c).is_some() {
            return false;
        }
        self.forbidden.iter().all(|f| match f.scope {
            Scope::Every => (1..=self.k as Color).all(|col| find_mono(c, &f.pattern, Some(col)).is_none()),
            Scope::Color(col) => col as usize > c.k() || find_mono(c, &f.pattern, Some(col)).is_none(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchStatus {
    Witness { coloring: EdgeColoring },
    Exhausted,
    LimitReached { nodes: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Edge-color assignments tried.
    pub nodes: u64,
    /// Assignments rejected by the conflict check.
    pub prunes: u64,
    pub restarts: u32,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    #[serde(flatten)]
    pub status: SearchStatus,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&EdgeColoring> {
        match &self.status {
            SearchStatus::Witness { coloring } => Some(coloring),
            _ => None,
        }
    }
}

/// How one forbidden pattern is checked through a freshly colored edge.
#[derive(Clone, Debug)]
enum Check {
    Wheel4,
    Triangle,
    Square,
    Cherry,
    /// One plan per orbit of directed pattern edges, each starting with that edge.
    Generic(Vec<Plan>),
}

#[derive(Clone, Debug)]
struct CompiledPattern {
    scope: Scope,
    check: Check,
}

/// The task's constraints in the form the kernel consumes.
#[derive(Clone, Debug)]
pub struct Constraints {
    patterns: Vec<CompiledPattern>,
    rainbow: bool,
}

impl Constraints {
    pub fn new(forbidden: &[Forbidden], forbid_rainbow_triangle: bool) -> Result<Self> {
        let patterns = forbidden
            .iter()
            .map(|f| {
                let check = match f.pattern {
                    PatternSpec::Wheel { rim: 4 } => Check::Wheel4,
                    PatternSpec::Clique { order: 3 } => Check::Triangle,
                    PatternSpec::Cycle { order: 4 } => Check::Square,
                    PatternSpec::Path { order: 3 } => Check::Cherry,
                    _ => {
                        let g = f.pattern.graph()?;
                        Check::Generic(
                            g.directed_edge_orbit_reps().into_iter().map(|(p, q)| Plan::new(&g, &[p, q])).collect(),
                        )
                    }
                };
                Ok(CompiledPattern { scope: f.scope, check })
            })
            .collect::<Result<_>>()?;
        Ok(Constraints { patterns, rainbow: forbid_rainbow_triangle })
    }

    pub fn from_task(task: &SearchTask) -> Result<Self> {
        Self::new(&task.forbidden, task.forbid_rainbow_triangle)
    }

    /// Same constraints, but every pattern goes through the generic matcher.
    #[doc(hidden)]
    pub fn without_kernels(mut self, forbidden: &[Forbidden]) -> Result<Self> {
        for (p, f) in self.patterns.iter_mut().zip(forbidden) {
            let g = f.pattern.graph()?;
            p.check =
                Check::Generic(g.directed_edge_orbit_reps().into_iter().map(|(a, b)| Plan::new(&g, &[a, b])).collect());
        }
        Ok(self)
    }
}

/// A partially colored `K_n` (`n <= 64`); color `0` marks an unassigned edge.
#[derive(Clone, Debug)]
pub struct PartialColoring {
    n: usize,
    colors: Vec<Color>,
    classes: Vec<ColorGraph>,
}

impl PartialColoring {
    /// Panics if `n > 64`.
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= MAX_SEARCH_ORDER, "partial colorings support at most {MAX_SEARCH_ORDER} vertices");
        PartialColoring { n, colors: vec![0; n * n], classes: (0..k).map(|_| ColorGraph::new(n)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Color {
        self.colors[u * self.n + v]
    }

    /// Colors `{u, v}` with `c` (1-based) or clears it with `0`.
    pub fn set(&mut self, u: usize, v: usize, c: Color) {
        let old = self.get(u, v);
        if old != 0 {
            self.classes[old as usize - 1].remove_edge(u, v);
        }
        self.colors[u * self.n + v] = c;
        self.colors[v * self.n + u] = c;
        if c != 0 {
            self.classes[c as usize - 1].add_edge(u, v);
        }
    }

    pub fn class(&self, c: Color) -> &ColorGraph {
        &self.classes[c as usize - 1]
    }

    /// `true` iff the colored edge `{u, v}` completes a forbidden
    /// monochromatic pattern or a rainbow triangle using assigned edges only.
    pub fn incremental_conflict(&self, constraints: &Constraints, u: usize, v: usize) -> bool {
        let c = self.get(u, v);
        c != 0 && ((constraints.rainbow && self.rainbow_through(u, v)) || self.pattern_through(constraints, u, v, c))
    }

    fn rainbow_through(&self, u: usize, v: usize) -> bool {
        let c = self.get(u, v);
        (0..self.n).any(|w| {
            if w == u || w == v {
                return false;
            }
            let (a, b) = (self.get(u, w), self.get(v, w));
            a != 0 && b != 0 && a != c && b != c && a != b
        })
    }

    /// Forbidden patterns in color `c` through `{u, v}`, which must be present in class `c`.
    fn pattern_through(&self, constraints: &Constraints, u: usize, v: usize, c: Color) -> bool {
        let class = self.class(c);
        constraints.patterns.iter().filter(|p| p.scope.covers(c)).any(|p| match &p.check {
            Check::Wheel4 => kernel::w4_through(class, u, v),
            Check::Triangle => kernel::k3_through(class, u, v),
            Check::Square => kernel::c4_through(class, u, v),
            Check::Cherry => kernel::p3_through(class, u, v),
            Check::Generic(seeds) => seeds.iter().any(|plan| find_embedding(class, plan, &[u, v], None).is_some()),
        })
    }

    /// Would coloring the unassigned edge `{u, v}` with `c` complete a forbidden pattern?
    fn pattern_if(&mut self, constraints: &Constraints, u: usize, v: usize, c: Color) -> bool {
        self.classes[c as usize - 1].add_edge(u, v);
        let hit = self.pattern_through(constraints, u, v, c);
        self.classes[c as usize - 1].remove_edge(u, v);
        hit
    }

    /// The coloring, if every edge is assigned.
    pub fn to_coloring(&self, k: usize) -> Option<EdgeColoring> {
        let mut out = Vec::with_capacity(pair_count(self.n));
        for u in 0..self.n {
            for v in u + 1..self.n {
                match self.get(u, v) {
                    0 => return None,
                    c => out.push(c),
                }
            }
        }
        EdgeColoring::from_upper_triangle(self.n, k, out).ok()
    }
}

/// Search with a single worker.
pub fn search_witness(task: &SearchTask) -> Result<SearchOutcome> {
    search_witness_parallel(task, 1)
}

/// Search with `threads` workers. The outcome and `stats.nodes` do not
/// depend on `threads`.
pub fn search_witness_parallel(task: &SearchTask, threads: usize) -> Result<SearchOutcome> {
    task.validate()?;
    let started = Instant::now();
    let constraints = Constraints::from_task(task)?;
    let edges = task.edge_order.edges(task.n);
    let mut slot = vec![usize::MAX; task.n * task.n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        slot[u * task.n + v] = i;
        slot[v * task.n + u] = i;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| crate::Error::InvalidArgument(format!("thread pool: {e}")))?;

    let mut stats = SearchStats::default();
    let mut restart = 0u32;
    let status = loop {
        let remaining = task.node_limit - stats.nodes;
        let budget = RESTART_BASE_BUDGET.saturating_mul(1u64 << restart.min(40)).min(remaining);
        let order = ValueOrder::new(task, edges.len(), restart);
        let run = Run {
            task,
            constraints: &constraints,
            edges: &edges,
            slot: &slot,
            order: &order,
            rename_colors: task.symmetry.renames_colors(task),
        };
        let result = run.execute(budget, threads.max(1), &pool);
        stats.nodes += result.nodes;
        stats.prunes += result.prunes;
        stats.restarts = restart + 1;
        match result.end {
            End::Witness(coloring) => {
                assert!(task.accepts(&coloring), "search kernel produced a coloring that fails re-validation");
                break SearchStatus::Witness { coloring };
            }
            End::Exhausted => break SearchStatus::Exhausted,
            End::Budget if stats.nodes >= task.node_limit => break SearchStatus::LimitReached { nodes: stats.nodes },
            End::Budget => restart += 1,
        }
    };
    stats.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(SearchOutcome { status, stats })
}

/// Result of [`verify_unavoidable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Unavoidability {
    /// Every `k`-coloring of `K_n` contains a monochromatic copy.
    Confirmed,
    CounterexampleFound {
        coloring: EdgeColoring,
    },
    /// The symmetry-reduced space could not be covered within `cap` nodes.
    TooLarge,
}

/// Decides whether every `k`-coloring of `K_n` has a monochromatic `pattern`,
/// exploring at most `cap` search nodes.
pub fn verify_unavoidable(n: usize, k: usize, pattern: &PatternSpec, cap: u64) -> Result<Unavoidability> {
    let task = SearchTask::avoid_everywhere(n, k, pattern.clone(), cap);
    Ok(match search_witness(&task)?.status {
        SearchStatus::Witness { coloring } => Unavoidability::CounterexampleFound { coloring },
        SearchStatus::Exhausted => Unavoidability::Confirmed,
        SearchStatus::LimitReached { .. } => Unavoidability::TooLarge,
    })
}

/// Per-edge order in which colors are tried during one restart.
struct ValueOrder {
    k: usize,
    /// `None`: ascending. Otherwise `k` entries per edge.
    perms: Option<Vec<Color>>,
}

impl ValueOrder {
    fn new(task: &SearchTask, edges: usize, restart: u32) -> Self {
        if restart == 0 {
            return ValueOrder { k: task.k, perms: None };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(task.seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut perms = Vec::with_capacity(edges * task.k);
        let mut p: Vec<Color> = (1..=task.k as Color).collect();
        for _ in 0..edges {
            p.shuffle(&mut rng);
            perms.extend_from_slice(&p);
        }
        ValueOrder { k: task.k, perms: Some(perms) }
    }

    #[inline]
    fn get(&self, edge: usize, i: usize) -> Color {
        match &self.perms {
            None => (i + 1) as Color,
            Some(p) => p[edge * self.k + i],
        }
    }
}

enum End {
    Witness(EdgeColoring),
    Exhausted,
    Budget,
}

struct RunResult {
    end: End,
    nodes: u64,
    prunes: u64,
}

struct Run<'a> {
    task: &'a SearchTask,
    constraints: &'a Constraints,
    edges: &'a [(usize, usize)],
    /// Position of pair `u * n + v` in `edges`.
    slot: &'a [usize],
    order: &'a ValueOrder,
    rename_colors: bool,
}

/// Mutable state of one depth-first walk.
///
/// Besides the partial coloring, each unassigned edge carries a mask of
/// colors already known to complete a forbidden pattern (forward checking);
/// a branch dies as soon as some edge has every color banned.
struct Walker<'a> {
    run: &'a Run<'a>,
    state: PartialColoring,
    /// `max_used[d]` is the largest color among the first `d` edges.
    max_used: Vec<Color>,
    banned: Vec<u64>,
    trail: Vec<(usize, u64)>,
    all_colors: u64,
    nodes: u64,
    prunes: u64,
    budget: u64,
}

enum Step {
    Found,
    Done,
    OutOfBudget,
}

impl Run<'_> {
    fn execute(&self, budget: u64, threads: usize, pool: &rayon::ThreadPool) -> RunResult {
        let split = SPLIT_DEPTH.min(self.edges.len());
        let mut walker = Walker::new(self, u64::MAX);
        let mut prefixes: Vec<Vec<Color>> = Vec::new();
        walker.enumerate_prefixes(0, split, &mut Vec::new(), &mut prefixes);
        let mut nodes = walker.nodes;
        let mut prunes = walker.prunes;
        if nodes > budget {
            return RunResult { end: End::Budget, nodes: budget, prunes };
        }
        let chunk = threads.max(1);
        for group in prefixes.chunks(chunk) {
            let remaining = budget - nodes;
            let results: Vec<BranchResult> = if group.len() == 1 {
                vec![self.branch(&group[0], split, remaining)]
            } else {
                pool.install(|| group.par_iter().map(|p| self.branch(p, split, remaining)).collect())
            };
            // merge in branch order, exactly as one sequential walk would
            for r in results {
                let remaining = budget - nodes;
                if r.nodes > remaining || matches!(r.step, Step::OutOfBudget) {
                    return RunResult { end: End::Budget, nodes: budget, prunes: prunes + r.prunes };
                }
                nodes += r.nodes;
                prunes += r.prunes;
                if let Some(c) = r.found {
                    return RunResult { end: End::Witness(c), nodes, prunes };
                }
            }
        }
        RunResult { end: End::Exhausted, nodes, prunes }
    }

    fn branch(&self, prefix: &[Color], split: usize, budget: u64) -> BranchResult {
        let mut w = Walker::new(self, u64::MAX);
        for (d, &c) in prefix.iter().enumerate() {
            let placed = w.try_color(d, c);
            debug_assert!(placed, "prefixes are conflict-free");
        }
        w.nodes = 0;
        w.prunes = 0;
        w.budget = budget;
        let step = w.descend(split);
        let found = matches!(step, Step::Found).then(|| w.state.to_coloring(self.task.k)).flatten();
        BranchResult { step, nodes: w.nodes, prunes: w.prunes, found }
    }
}

struct BranchResult {
    step: Step,
    nodes: u64,
    prunes: u64,
    found: Option<EdgeColoring>,
}

impl<'a> Walker<'a> {
    fn new(run: &'a Run<'a>, budget: u64) -> Self {
        let k = run.task.k;
        Walker {
            run,
            state: PartialColoring::new(run.task.n, k),
            max_used: vec![0; run.edges.len() + 1],
            banned: vec![0; run.edges.len()],
            trail: Vec::new(),
            all_colors: if k == 64 { u64::MAX } else { (1u64 << k) - 1 },
            nodes: 0,
            prunes: 0,
            budget,
        }
    }

    /// Colors to try on edge `depth`, in order.
    fn candidates(&self, depth: usize) -> ([Color; MAX_SEARCH_COLORS], usize) {
        let k = self.run.task.k;
        let mut out = [0; MAX_SEARCH_COLORS];
        for (i, slot) in out[..k].iter_mut().enumerate() {
            *slot = self.run.order.get(depth, i);
        }
        (out, k)
    }

    fn allowed(&self, depth: usize, c: Color) -> bool {
        if self.banned[depth] >> (c - 1) & 1 == 1 {
            return false;
        }
        if self.run.rename_colors && c > self.max_used[depth] + 1 {
            return false;
        }
        if self.run.task.symmetry == Symmetry::VertexOrder {
            let (u, v) = self.run.edges[depth];
            if u == 0 && v >= 2 && c < self.state.get(0, v - 1) {
                return false;
            }
        }
        true
    }

    /// Tries color `c` on edge `depth`; `true` if it was placed and every
    /// later edge still has a usable color. On `false` the state is restored.
    fn try_color(&mut self, depth: usize, c: Color) -> bool {
        self.nodes += 1;
        let (u, v) = self.run.edges[depth];
        self.state.set(u, v, c);
        self.max_used[depth + 1] = self.max_used[depth].max(c);
        let mark = self.trail.len();
        if self.state.incremental_conflict(self.run.constraints, u, v) || !self.forward_check(depth, c) {
            self.prunes += 1;
            self.undo(depth, mark);
            return false;
        }
        true
    }

    fn undo(&mut self, depth: usize, mark: usize) {
        for (f, old) in self.trail.drain(mark..).rev() {
            self.banned[f] = old;
        }
        let (u, v) = self.run.edges[depth];
        self.state.set(u, v, 0);
    }

    fn ban(&mut self, f: usize, mask: u64) -> bool {
        let old = self.banned[f];
        if old | mask != old {
            self.trail.push((f, old));
            self.banned[f] = old | mask;
        }
        self.banned[f] & self.all_colors != self.all_colors
    }

    /// Bans color `c` on later edges that would now complete a pattern, and
    /// (with rainbow triangles forbidden) colors that would make one.
    fn forward_check(&mut self, depth: usize, c: Color) -> bool {
        let bit = 1u64 << (c - 1);
        let edges = self.run.edges;
        for (f, &(a, b)) in edges.iter().enumerate().skip(depth + 1) {
            if self.banned[f] & bit != 0 {
                continue;
            }
            if self.state.pattern_if(self.run.constraints, a, b, c) && !self.ban(f, bit) {
                return false;
            }
        }
        if self.run.constraints.rainbow {
            let (u, v) = edges[depth];
            let n = self.state.n();
            for w in (0..n).filter(|&w| w != u && w != v) {
                for (near, far) in [(u, v), (v, u)] {
                    // edge {near, w} is open, {far, w} colored c2 != c
                    let c2 = self.state.get(far, w);
                    if self.state.get(near, w) != 0 || c2 == 0 || c2 == c {
                        continue;
                    }
                    let keep = bit | 1u64 << (c2 - 1);
                    let f = self.run.slot[near * n + w];
                    if !self.ban(f, self.all_colors & !keep) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn enumerate_prefixes(&mut self, depth: usize, split: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if depth == split {
            out.push(cur.clone());
            return;
        }
        let (colors, len) = self.candidates(depth);
        for &c in &colors[..len] {
            if !self.allowed(depth, c) {
                continue;
            }
            let mark = self.trail.len();
            if !self.try_color(depth, c) {
                continue;
            }
            cur.push(c);
            self.enumerate_prefixes(depth + 1, split, cur, out);
            cur.pop();
            self.undo(depth, mark);
        }
    }

    fn descend(&mut self, depth: usize) -> Step {
        if depth == self.run.edges.len() {
            return Step::Found;
        }
        let (colors, len) = self.candidates(depth);
        for &c in &colors[..len] {
            if !self.allowed(depth, c) {
                continue;
            }
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            let mark = self.trail.len();
            if !self.try_color(depth, c) {
                continue;
            }
            match self.descend(depth + 1) {
                Step::Done => self.undo(depth, mark),
                other => return other,
            }
        }
        Step::Done
    }
}
