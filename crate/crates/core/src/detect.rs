//! Rainbow-triangle and monochromatic-pattern detection.
//!
//! Every search walks vertices in ascending order and returns the first hit,
//! so certificates are reproducible. Colors are scanned in ascending order
//! when no color is given.

use crate::bitset::{ColorGraph, VertexSet};
use crate::coloring::{Color, EdgeColoring};
use crate::error::{invalid, precondition, Result};
use crate::matcher::{find_embedding, Plan};
use crate::pattern::{Embedding, PatternSpec};

/// First triangle `u < v < w` whose three edges carry three distinct colors.
/// `None` exactly when `c` is a Gallai coloring.
pub fn find_rainbow_triangle(c: &EdgeColoring) -> Option<Embedding> {
    let n = c.n();
    for u in 0..n {
        for v in u + 1..n {
            let a = c.color(u, v);
            for w in v + 1..n {
                let b = c.color(u, w);
                if b != a {
                    let d = c.color(v, w);
                    if d != a && d != b {
                        return Some(Embedding { pattern: PatternSpec::K3, color: None, vertices: vec![u, v, w] });
                    }
                }
            }
        }
    }
    None
}

/// `true` iff `c` has no rainbow triangle.
pub fn is_gallai(c: &EdgeColoring) -> bool {
    find_rainbow_triangle(c).is_none()
}

/// Finds a monochromatic copy of `pattern` in `color`, or in any color when
/// `color` is `None`. Exact: `None` means no copy exists.
///
/// Panics if `pattern` fails [`PatternSpec::validate`].
pub fn find_mono(c: &EdgeColoring, pattern: &PatternSpec, color: Option<Color>) -> Option<Embedding> {
    pattern.validate().expect("invalid pattern");
    if pattern.order() > c.n() {
        return None;
    }
    let colors: Vec<Color> = match color {
        Some(col) if col == 0 || col as usize > c.k() => return None,
        Some(col) => vec![col],
        None => c.colors_used().into_iter().collect(),
    };
    colors.into_iter().find_map(|col| {
        find_in_color_graph(&c.color_graph(col), pattern).map(|vertices| Embedding {
            pattern: pattern.clone(),
            color: Some(col),
            vertices,
        })
    })
}

/// Pattern search inside one color class; host images indexed by pattern vertex.
pub fn find_in_color_graph(g: &ColorGraph, pattern: &PatternSpec) -> Option<Vec<usize>> {
    match pattern {
        PatternSpec::Path { order: 3 } => find_p3(g),
        PatternSpec::Cycle { order: 4 } => find_c4(g),
        PatternSpec::Wheel { rim: 4 } => find_w4(g),
        _ => {
            let pg = pattern.graph().expect("invalid pattern");
            find_embedding(g, &Plan::new(&pg, &[]), &[], None)
        }
    }
}

fn find_p3(g: &ColorGraph) -> Option<Vec<usize>> {
    (0..g.n()).find_map(|center| {
        let mut it = g.neighbors(center);
        match (it.next(), it.next()) {
            (Some(a), Some(b)) => Some(vec![a, center, b]),
            _ => None,
        }
    })
}

/// Rim `a, c, b, d`: the pair `a < b` has common neighbors `c < d` in `mask`.
fn c4_through_pairs(g: &ColorGraph, mask: &VertexSet) -> Option<[usize; 4]> {
    let members: Vec<usize> = mask.iter().collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if g.common_in(a, b, mask.words()) >= 2 {
                let mut common =
                    g.row(a).iter().zip(g.row(b)).zip(mask.words()).map(|((x, y), m)| x & y & m).collect::<Vec<u64>>();
                let mut next = || {
                    let wi = common.iter().position(|&w| w != 0)?;
                    let bit = common[wi].trailing_zeros() as usize;
                    common[wi] &= common[wi] - 1;
                    Some(wi * 64 + bit)
                };
                let c = next()?;
                let d = next()?;
                return Some([a, c, b, d]);
            }
        }
    }
    None
}

fn find_c4(g: &ColorGraph) -> Option<Vec<usize>> {
    c4_through_pairs(g, &VertexSet::full(g.n())).map(|r| r.to_vec())
}

/// For each hub, look for a 4-cycle inside its neighborhood.
fn find_w4(g: &ColorGraph) -> Option<Vec<usize>> {
    for hub in 0..g.n() {
        if g.degree(hub) < 4 {
            continue;
        }
        let mut nbhd = VertexSet::empty(g.n());
        for v in g.neighbors(hub) {
            nbhd.insert(v);
        }
        if let Some([a, c, b, d]) = c4_through_pairs(g, &nbhd) {
            return Some(vec![a, c, b, d, hub]);
        }
    }
    None
}

/// `true` iff some vertex has at least two incident edges of color `i`.
pub fn has_mono_p3_in_color(c: &EdgeColoring, i: Color) -> bool {
    let n = c.n();
    let mut deg = vec![0u8; n];
    for (u, v, col) in c.edges() {
        if col == i {
            deg[u] += 1;
            deg[v] += 1;
            if deg[u] >= 2 || deg[v] >= 2 {
                return true;
            }
        }
    }
    false
}

/// The single color on every `A × B` edge, if there is one.
pub fn mono_complete_between(c: &EdgeColoring, a: &[usize], b: &[usize]) -> Result<Option<Color>> {
    if a.is_empty() || b.is_empty() {
        return invalid("both vertex sets must be nonempty");
    }
    if let Some(&v) = a.iter().chain(b).find(|&&v| v >= c.n()) {
        return invalid(format!("vertex {v} out of range for n = {}", c.n()));
    }
    let in_a = VertexSet::from_iter_in(c.n(), a.iter().copied());
    if let Some(&v) = b.iter().find(|&&v| in_a.contains(v)) {
        return invalid(format!("vertex {v} lies in both sets"));
    }
    let first = c.color(a[0], b[0]);
    let uniform = a.iter().all(|&u| b.iter().all(|&v| c.color(u, v) == first));
    Ok(uniform.then_some(first))
}

/// If `{x, y}` is `i`-complete to `A = V \ {x, y}` and `A` holds an
/// `i`-colored path `v1 v2 v3`, returns the wheel with rim `v1, x, v3, y`
/// and hub `v2`.
pub fn wheel_from_mono_pair(c: &EdgeColoring, x: usize, y: usize, i: Color) -> Result<Option<Embedding>> {
    let n = c.n();
    if x == y || x >= n || y >= n {
        return invalid(format!("need two distinct vertices below {n}, got {x} and {y}"));
    }
    let rest: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
    if let Some(&v) = rest.iter().find(|&&v| c.color(x, v) != i || c.color(y, v) != i) {
        return precondition(format!("{{{x}, {y}}} is not {i}-complete to the rest (vertex {v})"));
    }
    for &v1 in &rest {
        for &v2 in &rest {
            if v2 == v1 || c.color(v1, v2) != i {
                continue;
            }
            if let Some(&v3) = rest.iter().find(|&&v3| v3 > v1 && v3 != v2 && c.color(v2, v3) == i) {
                return Ok(Some(Embedding {
                    pattern: PatternSpec::W4,
                    color: Some(i),
                    vertices: vec![v1, x, v3, y, v2],
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::pentagon_coloring;

    fn triangle(a: Color, b: Color, d: Color) -> EdgeColoring {
        EdgeColoring::from_upper_triangle(3, 3, vec![a, b, d]).unwrap()
    }

    #[test]
    fn rainbow_triangle_examples() {
        let e = find_rainbow_triangle(&triangle(1, 2, 3)).unwrap();
        assert_eq!(e.vertices, vec![0, 1, 2]);
        assert!(e.validate(&triangle(1, 2, 3)));
        assert!(find_rainbow_triangle(&triangle(1, 2, 2)).is_none());
        let p = pentagon_coloring();
        let j = EdgeColoring::join(&p, &p, 3).unwrap();
        assert!(find_rainbow_triangle(&j).is_none());
    }

    #[test]
    fn mono_wheel_needs_five_vertices() {
        let k5 = EdgeColoring::monochromatic(5, 1, 1).unwrap();
        let e = find_mono(&k5, &PatternSpec::W4, None).unwrap();
        assert!(e.validate(&k5));
        assert_eq!(e.color, Some(1));
        let k4 = EdgeColoring::monochromatic(4, 1, 1).unwrap();
        assert!(find_mono(&k4, &PatternSpec::W4, None).is_none());
        assert!(find_mono(&k5, &PatternSpec::W4, Some(2)).is_none());
    }

    #[test]
    fn pentagon_and_its_join() {
        let p = pentagon_coloring();
        assert!(find_mono(&p, &PatternSpec::K3, None).is_none());
        let j = EdgeColoring::join(&p, &p, 3).unwrap();
        assert!(find_mono(&j, &PatternSpec::W4, Some(3)).is_none());
        assert!(find_mono(&j, &PatternSpec::W4, None).is_none());
        // the color-3 class is K_{5,5}, which is full of 4-cycles
        assert!(find_mono(&j, &PatternSpec::C4, Some(3)).is_some());
    }

    #[test]
    fn p3_star() {
        // (0,1)=2, (0,2)=2, (1,2)=1
        let c = EdgeColoring::from_upper_triangle(3, 2, vec![2, 2, 1]).unwrap();
        assert!(has_mono_p3_in_color(&c, 2));
        assert!(!has_mono_p3_in_color(&c, 1));
        let k2 = EdgeColoring::monochromatic(2, 1, 1).unwrap();
        assert!(!has_mono_p3_in_color(&k2, 1));
    }

    #[test]
    fn complete_between() {
        let p = pentagon_coloring();
        let j = EdgeColoring::join(&p, &p, 3).unwrap();
        let a: Vec<usize> = (0..5).collect();
        let b: Vec<usize> = (5..10).collect();
        assert_eq!(mono_complete_between(&j, &a, &b).unwrap(), Some(3));
        assert_eq!(mono_complete_between(&p, &[0], &[1, 2]).unwrap(), None);
        assert_eq!(mono_complete_between(&p, &[3], &[1]).unwrap(), Some(p.color(1, 3)));
        assert!(mono_complete_between(&p, &[0, 1], &[1]).is_err());
        assert!(mono_complete_between(&p, &[], &[1]).is_err());
    }

    #[test]
    fn wheel_from_pair_examples() {
        let k5 = EdgeColoring::monochromatic(5, 1, 1).unwrap();
        let e = wheel_from_mono_pair(&k5, 3, 4, 1).unwrap().unwrap();
        assert_eq!(e.vertices, vec![0, 3, 2, 4, 1]);
        assert!(e.validate(&k5));

        // A = {0,1,2,3} with color-1 edges forming the matching 01, 23.
        let c = EdgeColoring::from_fn(6, 2, |u, v| if v >= 4 || (u, v) == (0, 1) || (u, v) == (2, 3) { 1 } else { 2 })
            .unwrap();
        assert_eq!(wheel_from_mono_pair(&c, 4, 5, 1).unwrap(), None);
        assert!(matches!(wheel_from_mono_pair(&c, 0, 5, 1), Err(crate::Error::PreconditionFailed(_))));
    }
}
