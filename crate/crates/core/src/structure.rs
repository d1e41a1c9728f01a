//! Gallai partitions, reduced graphs, apex peeling, and checks on the
//! colors that connect a vertex set to the rest of the graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::coloring::{Color, EdgeColoring};
use crate::detect::{find_mono, find_rainbow_triangle, has_mono_p3_in_color};
use crate::error::{invalid, precondition, Error, Result};
use crate::pattern::PatternSpec;

/// Largest order for which the exhaustive partition fallback runs.
pub const EXHAUSTIVE_PARTITION_LIMIT: usize = 10;

/// Parts `V_1..V_p` (sorted by decreasing size, ties by least vertex), the
/// colors used between parts, and the reduced coloring on `p` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiPartition {
    pub parts: Vec<Vec<usize>>,
    pub cross_colors: Vec<Color>,
    pub reduced: EdgeColoring,
}

impl GallaiPartition {
    pub fn p(&self) -> usize {
        self.parts.len()
    }

    /// Builds the partition record for `parts` from `c`, normalizing part
    /// order. Cross colors of non-monochromatic pairs are taken from one edge;
    /// run [`verify_gallai_partition`] to check the result.
    pub fn from_parts(c: &EdgeColoring, parts: Vec<Vec<usize>>) -> Result<Self> {
        let parts = normalize_parts(c.n(), parts)?;
        let p = parts.len();
        let reduced = EdgeColoring::from_fn(p, c.k(), |i, j| c.color(parts[i][0], parts[j][0]))?;
        let cross_colors = reduced.colors_used().into_iter().collect();
        Ok(GallaiPartition { parts, cross_colors, reduced })
    }

    /// Part index of every vertex.
    pub fn owner(&self, n: usize) -> Vec<usize> {
        let mut owner = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                owner[v] = i;
            }
        }
        owner
    }
}

fn normalize_parts(n: usize, parts: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(parts.len());
    for mut part in parts {
        if part.is_empty() {
            return invalid("partition has an empty part");
        }
        part.sort_unstable();
        for &v in &part {
            if v >= n {
                return invalid(format!("vertex {v} out of range for n = {n}"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return invalid(format!("vertex {v} appears in two parts"));
            }
        }
        out.push(part);
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return invalid(format!("vertex {v} is not covered"));
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    Ok(out)
}

/// Outcome of [`verify_gallai_partition`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

/// Checks that every pair of parts is joined in one color, that at most two
/// colors appear between parts, that `p >= 2`, and that the reduced coloring
/// records the cross colors.
pub fn verify_gallai_partition(c: &EdgeColoring, partition: &GallaiPartition) -> Result<PartitionReport> {
    let parts = &partition.parts;
    normalize_parts(c.n(), parts.clone())?;
    let mut violations = Vec::new();
    if parts.len() < 2 {
        violations.push(format!("partition has {} part(s); at least 2 required", parts.len()));
    }
    if partition.reduced.n() != parts.len() {
        violations.push(format!("reduced graph has {} vertices for {} parts", partition.reduced.n(), parts.len()));
    }
    let mut cross = BTreeSet::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let first = c.color(parts[i][0], parts[j][0]);
            let mono = parts[i].iter().all(|&u| parts[j].iter().all(|&v| c.color(u, v) == first));
            if !mono {
                violations.push(format!("parts {i} and {j} are not joined in a single color"));
                continue;
            }
            cross.insert(first);
            if partition.reduced.n() == parts.len() && partition.reduced.color(i, j) != first {
                violations.push(format!("reduced edge ({i}, {j}) is not the cross color {first}"));
            }
        }
    }
    if cross.len() > 2 {
        violations.push(format!("{} colors used between parts: {:?}", cross.len(), cross));
    }
    let declared: BTreeSet<Color> = partition.cross_colors.iter().copied().collect();
    if violations.is_empty() && declared != cross {
        violations.push(format!("declared cross colors {declared:?} differ from observed {cross:?}"));
    }
    Ok(PartitionReport { valid: violations.is_empty(), violations })
}

/// A Gallai partition of `c`. All singletons when `c` uses at most two colors;
/// otherwise the first color pair (in ascending order) whose coarsened
/// component structure yields a valid partition.
pub fn find_gallai_partition(c: &EdgeColoring) -> Result<GallaiPartition> {
    if c.n() < 2 {
        return invalid("a Gallai partition needs at least 2 vertices");
    }
    if let Some(t) = find_rainbow_triangle(c) {
        return precondition(format!("rainbow triangle on {:?}", t.vertices));
    }
    let used: Vec<Color> = c.colors_used().into_iter().collect();
    if used.len() <= 2 {
        return GallaiPartition::from_parts(c, (0..c.n()).map(|v| vec![v]).collect());
    }
    for (i, &a) in used.iter().enumerate() {
        for &b in &used[i + 1..] {
            let parts = coarsened_components(c, a, b);
            if parts.len() < 2 {
                continue;
            }
            let candidate = GallaiPartition::from_parts(c, parts)?;
            if verify_gallai_partition(c, &candidate)?.valid {
                return Ok(candidate);
            }
        }
    }
    if c.n() <= EXHAUSTIVE_PARTITION_LIMIT {
        if let Some(p) = exhaustive_partition(c)? {
            return Ok(p);
        }
    }
    Err(Error::PreconditionFailed("no Gallai partition found".into()))
}

/// Components of the graph of edges colored outside `{a, b}`, then merged
/// until every pair of parts is monochromatic.
fn coarsened_components(c: &EdgeColoring, a: Color, b: Color) -> Vec<Vec<usize>> {
    let n = c.n();
    let mut uf = UnionFind::new(n);
    for (u, v, col) in c.edges() {
        if col != a && col != b {
            uf.union(u, v);
        }
    }
    loop {
        let parts = uf.groups();
        if parts.len() < 2 {
            return parts;
        }
        let clash = (0..parts.len()).find_map(|i| {
            (i + 1..parts.len()).find_map(|j| {
                let first = c.color(parts[i][0], parts[j][0]);
                let mono = parts[i].iter().all(|&u| parts[j].iter().all(|&v| c.color(u, v) == first));
                (!mono).then_some((parts[i][0], parts[j][0]))
            })
        });
        match clash {
            Some((u, v)) => uf.union(u, v),
            None => return parts,
        }
    }
}

fn exhaustive_partition(c: &EdgeColoring) -> Result<Option<GallaiPartition>> {
    let n = c.n();
    // restricted growth strings enumerate set partitions
    let mut label = vec![0usize; n];
    loop {
        let p = label.iter().max().map_or(0, |m| m + 1);
        if p >= 2 {
            let mut parts = vec![Vec::new(); p];
            for (v, &l) in label.iter().enumerate() {
                parts[l].push(v);
            }
            let candidate = GallaiPartition::from_parts(c, parts)?;
            if verify_gallai_partition(c, &candidate)?.valid {
                return Ok(Some(candidate));
            }
        }
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(None);
            }
            let limit = label[..i].iter().max().copied().unwrap_or(0) + 1;
            if label[i] < limit {
                label[i] += 1;
                for l in &mut label[i + 1..] {
                    *l = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|g| !g.is_empty()).collect()
    }
}

/// The reduced coloring of a verified partition.
pub fn reduced_graph(c: &EdgeColoring, partition: &GallaiPartition) -> Result<EdgeColoring> {
    let report = verify_gallai_partition(c, partition)?;
    if !report.valid {
        return invalid(format!("partition fails verification: {}", report.violations.join("; ")));
    }
    let parts = &partition.parts;
    EdgeColoring::from_fn(parts.len(), c.k(), |i, j| c.color(parts[i][0], parts[j][0]))
}

/// Peeled vertices `x_1..x_m` with the color each sends to everything after
/// it, and the vertices left over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexSequence {
    pub entries: Vec<(usize, Color)>,
    pub remainder: Vec<usize>,
}

/// Color joining `v` to every other vertex of `set`, if unique. `set` must
/// contain `v` and at least one more vertex.
fn apex_color(c: &EdgeColoring, set: &[usize], v: usize) -> Option<Color> {
    let mut others = set.iter().copied().filter(|&u| u != v);
    let first = c.color(v, others.next()?);
    others.all(|u| c.color(v, u) == first).then_some(first)
}

/// Greedy maximal apex sequence: repeatedly peel the least vertex that is
/// monochromatic-complete to the rest, until none qualifies or one remains.
pub fn peel_apex_sequence(c: &EdgeColoring) -> ApexSequence {
    let mut remaining: Vec<usize> = (0..c.n()).collect();
    let mut entries = Vec::new();
    while remaining.len() >= 2 {
        let hit = remaining.iter().find_map(|&v| apex_color(c, &remaining, v).map(|col| (v, col)));
        match hit {
            Some((v, col)) => {
                entries.push((v, col));
                remaining.retain(|&u| u != v);
            }
            None => break,
        }
    }
    ApexSequence { entries, remainder: remaining }
}

/// Re-checks both apex-sequence invariants against `c`.
pub fn validate_apex_sequence(c: &EdgeColoring, s: &ApexSequence) -> Result<()> {
    let n = c.n();
    let mut seen = vec![false; n];
    for &v in s.entries.iter().map(|(v, _)| v).chain(&s.remainder) {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return invalid(format!("vertex {v} is out of range or repeated"));
        }
    }
    if seen.iter().any(|&x| !x) {
        return invalid("sequence and remainder do not cover the vertex set");
    }
    let mut rest: Vec<usize> = (0..n).collect();
    for &(x, col) in &s.entries {
        if apex_color(c, &rest, x) != Some(col) {
            return invalid(format!("vertex {x} is not {col}-complete to the unpeeled vertices"));
        }
        rest.retain(|&u| u != x);
    }
    if s.remainder.len() >= 2 {
        if let Some(&v) = s.remainder.iter().find(|&&v| apex_color(c, &s.remainder, v).is_some()) {
            return invalid(format!("sequence is not maximal: {v} could still be peeled"));
        }
    }
    Ok(())
}

/// Whenever two peeled vertices `x_i`, `x_j` (`i < j`) share a color, either
/// `A = V \ {x_1..x_j}` has no path on three vertices in that color, or `c`
/// already has a monochromatic `W_4` in that color.
pub fn check_apex_color_distinctness(c: &EdgeColoring, s: &ApexSequence) -> Result<bool> {
    validate_apex_sequence(c, s)?;
    for j in 0..s.entries.len() {
        let color = s.entries[j].1;
        if !s.entries[..j].iter().any(|&(_, col)| col == color) {
            continue;
        }
        let peeled: VertexSet = VertexSet::from_iter_in(c.n(), s.entries[..=j].iter().map(|&(v, _)| v));
        let a: Vec<usize> = (0..c.n()).filter(|&v| !peeled.contains(v)).collect();
        let p3_in_a = !a.is_empty() && has_mono_p3_in_color(&c.restrict(&a)?, color);
        if p3_in_a && find_mono(c, &PatternSpec::W4, Some(color)).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vertices outside `v1` split by how they meet `v1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossProfile {
    /// Blue-complete to `v1`.
    pub blue: Vec<usize>,
    /// Red-complete to `v1`.
    pub red: Vec<usize>,
    pub other: Vec<usize>,
}

/// Classifies every vertex outside `v1` as blue-complete, red-complete, or
/// neither with respect to `v1`.
pub fn cross_color_profile(c: &EdgeColoring, v1: &[usize], red: Color, blue: Color) -> Result<CrossProfile> {
    if v1.is_empty() {
        return invalid("V1 must be nonempty");
    }
    if let Some(&v) = v1.iter().find(|&&v| v >= c.n()) {
        return invalid(format!("vertex {v} out of range for n = {}", c.n()));
    }
    let inside = VertexSet::from_iter_in(c.n(), v1.iter().copied());
    let mut out = CrossProfile::default();
    for v in (0..c.n()).filter(|&v| !inside.contains(v)) {
        let complete_in = |col: Color| v1.iter().all(|&u| c.color(u, v) == col);
        if complete_in(blue) {
            out.blue.push(v);
        } else if complete_in(red) {
            out.red.push(v);
        } else {
            out.other.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::pentagon_coloring;

    fn doubled_pentagon() -> EdgeColoring {
        let p = pentagon_coloring();
        EdgeColoring::join(&p, &p, 3).unwrap()
    }

    #[test]
    fn verify_examples() {
        let j = doubled_pentagon();
        let halves = GallaiPartition::from_parts(&j, vec![(0..5).collect(), (5..10).collect()]).unwrap();
        assert!(verify_gallai_partition(&j, &halves).unwrap().valid);
        assert_eq!(halves.cross_colors, vec![3]);

        let p = pentagon_coloring();
        let singles = GallaiPartition::from_parts(&p, (0..5).map(|v| vec![v]).collect()).unwrap();
        assert!(verify_gallai_partition(&p, &singles).unwrap().valid);
        assert_eq!(singles.cross_colors, vec![1, 2]);

        let rainbow = EdgeColoring::from_upper_triangle(3, 3, vec![1, 2, 3]).unwrap();
        let parts = GallaiPartition::from_parts(&rainbow, vec![vec![0], vec![1], vec![2]]).unwrap();
        let report = verify_gallai_partition(&rainbow, &parts).unwrap();
        assert!(!report.valid);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn verify_rejects_malformed() {
        let p = pentagon_coloring();
        assert!(GallaiPartition::from_parts(&p, vec![vec![0, 1], vec![1, 2, 3, 4]]).is_err());
        assert!(GallaiPartition::from_parts(&p, vec![vec![0, 1], vec![2, 3]]).is_err());
        let mut ok = GallaiPartition::from_parts(&p, (0..5).map(|v| vec![v]).collect()).unwrap();
        ok.parts[0].push(9);
        assert!(verify_gallai_partition(&p, &ok).is_err());
    }

    #[test]
    fn find_on_join_splits_the_halves() {
        let j = doubled_pentagon();
        let part = find_gallai_partition(&j).unwrap();
        assert_eq!(part.parts, vec![(0..5).collect::<Vec<_>>(), (5..10).collect()]);
        assert_eq!(part.cross_colors, vec![3]);
        let r = reduced_graph(&j, &part).unwrap();
        assert_eq!(r.n(), 2);
        assert_eq!(r.color(0, 1), 3);
    }

    #[test]
    fn two_colored_gives_singletons() {
        let p = pentagon_coloring();
        let part = find_gallai_partition(&p).unwrap();
        assert_eq!(part.p(), 5);
        assert_eq!(reduced_graph(&p, &part).unwrap(), p);
    }

    #[test]
    fn find_errors() {
        let rainbow = EdgeColoring::from_upper_triangle(3, 3, vec![1, 2, 3]).unwrap();
        assert!(matches!(find_gallai_partition(&rainbow), Err(Error::PreconditionFailed(_))));
        let k1 = EdgeColoring::monochromatic(1, 1, 1).unwrap();
        assert!(matches!(find_gallai_partition(&k1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn exhaustive_fallback_agrees() {
        let j = doubled_pentagon();
        let p = exhaustive_partition(&j).unwrap().unwrap();
        assert!(verify_gallai_partition(&j, &p).unwrap().valid);
    }

    #[test]
    fn peel_examples() {
        let p = pentagon_coloring();
        let s = peel_apex_sequence(&p);
        assert!(s.entries.is_empty());
        assert_eq!(s.remainder, vec![0, 1, 2, 3, 4]);

        let k1 = EdgeColoring::monochromatic(1, 2, 1).unwrap();
        let cone = EdgeColoring::join(&k1, &p, 3).unwrap();
        let s = peel_apex_sequence(&cone);
        assert_eq!(s.entries, vec![(0, 3)]);
        assert_eq!(s.remainder, vec![1, 2, 3, 4, 5]);

        let mono = EdgeColoring::monochromatic(6, 1, 1).unwrap();
        let s = peel_apex_sequence(&mono);
        assert_eq!(s.entries.len(), 5);
        assert_eq!(s.remainder, vec![5]);
        validate_apex_sequence(&mono, &s).unwrap();
    }

    #[test]
    fn apex_distinctness() {
        let mono = EdgeColoring::monochromatic(6, 1, 1).unwrap();
        let s = peel_apex_sequence(&mono);
        assert!(check_apex_color_distinctness(&mono, &s).unwrap());

        let p = pentagon_coloring();
        let k1 = EdgeColoring::monochromatic(1, 2, 1).unwrap();
        let cone = EdgeColoring::join(&k1, &p, 3).unwrap();
        assert!(check_apex_color_distinctness(&cone, &peel_apex_sequence(&cone)).unwrap());

        let forged = ApexSequence { entries: vec![(1, 3)], remainder: vec![0, 2, 3, 4, 5] };
        assert!(check_apex_color_distinctness(&cone, &forged).is_err());
    }

    #[test]
    fn profile_examples() {
        let j = doubled_pentagon();
        let v1: Vec<usize> = (0..5).collect();
        let prof = cross_color_profile(&j, &v1, 1, 3).unwrap();
        assert_eq!(prof.blue, (5..10).collect::<Vec<_>>());
        assert!(prof.red.is_empty() && prof.other.is_empty());

        let p = pentagon_coloring();
        let prof = cross_color_profile(&p, &[0], 1, 2).unwrap();
        assert_eq!(prof.red, vec![1, 4]);
        assert_eq!(prof.blue, vec![2, 3]);
        assert!(cross_color_profile(&p, &[], 1, 2).is_err());
    }
}
