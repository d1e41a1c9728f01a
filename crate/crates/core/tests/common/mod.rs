//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use gallai::{Color, EdgeColoring, PatternSpec};

/// Edge lists written out by hand for the four core patterns; other
/// patterns fall back to the library's graph.
pub fn pattern_edges(p: &PatternSpec) -> (usize, Vec<(usize, usize)>) {
    match p {
        PatternSpec::Path { order: 3 } => (3, vec![(0, 1), (1, 2)]),
        PatternSpec::Clique { order: 3 } => (3, vec![(0, 1), (1, 2), (0, 2)]),
        PatternSpec::Cycle { order: 4 } => (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
        PatternSpec::Wheel { rim: 4 } => (5, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)]),
        other => {
            let g = other.graph().unwrap();
            (g.order(), g.edges())
        }
    }
}

/// Tries every injective placement of the pattern's vertices.
pub fn naive_contains(c: &EdgeColoring, p: &PatternSpec, color: Color) -> bool {
    let (h, edges) = pattern_edges(p);
    if h > c.n() {
        return false;
    }
    let mut map = vec![usize::MAX; h];
    let mut used = vec![false; c.n()];
    fn rec(
        i: usize,
        map: &mut [usize],
        used: &mut [bool],
        c: &EdgeColoring,
        edges: &[(usize, usize)],
        col: Color,
    ) -> bool {
        if i == map.len() {
            return true;
        }
        for x in 0..c.n() {
            if used[x] {
                continue;
            }
            // every pattern edge back to an already placed vertex must carry `col`
            let fits = edges.iter().all(|&(a, b)| {
                let other = if a == i && b < i {
                    b
                } else if b == i && a < i {
                    a
                } else {
                    return true;
                };
                c.color(x, map[other]) == col
            });
            if !fits {
                continue;
            }
            map[i] = x;
            used[x] = true;
            let hit = rec(i + 1, map, used, c, edges, col);
            used[x] = false;
            if hit {
                return true;
            }
        }
        false
    }
    rec(0, &mut map, &mut used, c, &edges, color)
}

pub fn naive_rainbow(c: &EdgeColoring) -> bool {
    let n = c.n();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            (b + 1..n).any(|d| {
                let (x, y, z) = (c.color(a, b), c.color(a, d), c.color(b, d));
                x != y && y != z && x != z
            })
        })
    })
}

/// Whether some 2-coloring of `K_n` has no monochromatic triangle, by
/// enumerating all `2^C(n,2)` colorings.
pub fn k3_free_two_coloring_exists(n: usize) -> bool {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let triangles: Vec<[usize; 3]> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |d| (a, b, d))))
        .map(|(a, b, d)| [index(a, b), index(a, d), index(b, d)])
        .collect();
    (0u64..1 << pairs.len()).any(|mask| {
        triangles.iter().all(|t| {
            let bits = t.map(|e| mask >> e & 1);
            !(bits[0] == bits[1] && bits[1] == bits[2])
        })
    })
}

pub fn random_coloring(rng: &mut impl rand::Rng, n: usize, k: usize) -> EdgeColoring {
    EdgeColoring::from_fn(n, k, |_, _| rng.gen_range(1..=k) as Color).unwrap()
}
