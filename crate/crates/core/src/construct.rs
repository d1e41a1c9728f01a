//! Extremal colorings: the size schedule, the pentagon, the recursive
//! lower-bound witnesses, and a seeded random Gallai-coloring generator.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::detect::find_mono;
use crate::error::{invalid, precondition, Error, Result};
use crate::pattern::PatternSpec;

/// Order of the extremal 2-coloring for `W_4`: one less than `R_2(W_4) = 15`.
pub const W4_COEFFICIENT: u64 = 14;

/// Canonical text of the pinned 2-coloring of `K_14` with no monochromatic
/// `W_4`, as found by the default search task.
pub const BASE14_TEXT: &str = include_str!("../data/base14.grc");

/// Digest of [`base14`].
pub const BASE14_DIGEST: &str = "943a777c9257dc82d41ac93e0c1cfdccbabec5815963757e640089ddb58978b7";

/// The pinned `W_4`-free 2-coloring of `K_14`.
pub fn base14() -> EdgeColoring {
    crate::format::parse_text(BASE14_TEXT).expect("pinned base parses")
}

/// Vertex counts of the lower-bound colorings, `f(s)`, for a base of order
/// `coefficient`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub coefficient: u64,
}

impl Schedule {
    pub fn new(coefficient: u64) -> Self {
        Schedule { coefficient }
    }

    pub fn value(&self, s: u32) -> Result<u64> {
        f_value(s, self.coefficient)
    }

    /// The implied Gallai-Ramsey lower bound `f(s) + 1`.
    pub fn lower_bound(&self, s: u32) -> Result<u64> {
        self.value(s).map(|f| f + 1)
    }
}

/// `f(s) = c * 5^((s-2)/2)` for even `s`, `2c * 5^((s-3)/2)` for odd `s >= 3`.
/// `f(1) = 4` exists only for the `W_4` coefficient 14.
pub fn f_value(s: u32, coefficient: u64) -> Result<u64> {
    if coefficient == 0 {
        return invalid("schedule coefficient must be positive");
    }
    let overflow = || Error::InvalidArgument(format!("f({s}) overflows u64"));
    match s {
        0 => invalid("schedule starts at s = 1"),
        1 if coefficient == W4_COEFFICIENT => Ok(4),
        1 => Err(Error::Unsupported(format!("f(1) is only defined for coefficient {W4_COEFFICIENT}"))),
        _ if s.is_multiple_of(2) => {
            5u64.checked_pow((s - 2) / 2).and_then(|p| p.checked_mul(coefficient)).ok_or_else(overflow)
        }
        _ => 5u64
            .checked_pow((s - 3) / 2)
            .and_then(|p| p.checked_mul(coefficient))
            .and_then(|x| x.checked_mul(2))
            .ok_or_else(overflow),
    }
}

/// `K_5` with color 1 on the cycle 0-1-2-3-4-0 and color 2 on its complement.
pub fn pentagon_coloring() -> EdgeColoring {
    EdgeColoring::from_fn(5, 2, |u, v| if matches!(v - u, 1 | 4) { 1 } else { 2 }).expect("pentagon is well formed")
}

/// How a lower-bound witness was assembled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum ConstructionTrace {
    /// The user-supplied 2-colored base, identified by its digest.
    Base { digest: String, colors: Vec<Color>, size: usize },
    /// Two copies joined by a fresh color.
    Join { color: Color, left: Box<ConstructionTrace>, right: Box<ConstructionTrace>, size: usize },
    /// Each quotient vertex replaced by a child. `color_map` records how the
    /// pentagon's colors 1 and 2 were renamed.
    Blowup { quotient: EdgeColoring, color_map: Vec<(Color, Color)>, children: Vec<ConstructionTrace>, size: usize },
}

impl ConstructionTrace {
    pub fn size(&self) -> usize {
        match self {
            ConstructionTrace::Base { size, .. }
            | ConstructionTrace::Join { size, .. }
            | ConstructionTrace::Blowup { size, .. } => *size,
        }
    }

    /// Colors used by the coloring this trace describes.
    pub fn colors(&self) -> BTreeSet<Color> {
        match self {
            ConstructionTrace::Base { colors, .. } => colors.iter().copied().collect(),
            ConstructionTrace::Join { color, left, right, .. } => {
                let mut s = left.colors();
                s.extend(right.colors());
                s.insert(*color);
                s
            }
            ConstructionTrace::Blowup { quotient, children, .. } => {
                let mut s = quotient.colors_used();
                for ch in children {
                    s.extend(ch.colors());
                }
                s
            }
        }
    }

    /// Checks size arithmetic, join-color freshness and the two-color quotient rule.
    pub fn validate(&self) -> Result<()> {
        match self {
            ConstructionTrace::Base { .. } => Ok(()),
            ConstructionTrace::Join { color, left, right, size } => {
                left.validate()?;
                right.validate()?;
                if *size != left.size() + right.size() {
                    return invalid(format!("join size {size} != {} + {}", left.size(), right.size()));
                }
                if left.colors().contains(color) || right.colors().contains(color) {
                    return invalid(format!("join color {color} is not fresh"));
                }
                Ok(())
            }
            ConstructionTrace::Blowup { quotient, children, size, .. } => {
                for ch in children {
                    ch.validate()?;
                }
                if children.len() != quotient.n() {
                    return invalid("blow-up child count differs from quotient order");
                }
                if *size != children.iter().map(|c| c.size()).sum::<usize>() {
                    return invalid("blow-up size is not the sum of its children");
                }
                if quotient.colors_used().len() > 2 {
                    return invalid("blow-up quotient uses more than two colors");
                }
                Ok(())
            }
        }
    }

    /// Rebuilds the coloring from `base`, which must match the recorded digest.
    pub fn replay(&self, base: &EdgeColoring) -> Result<EdgeColoring> {
        match self {
            ConstructionTrace::Base { digest, .. } => {
                if base.canonical_digest() != *digest {
                    return invalid("base digest does not match the trace");
                }
                Ok(base.clone())
            }
            ConstructionTrace::Join { color, left, right, .. } => {
                EdgeColoring::join(&left.replay(base)?, &right.replay(base)?, *color)
            }
            ConstructionTrace::Blowup { quotient, children, .. } => {
                let parts = children.iter().map(|c| c.replay(base)).collect::<Result<Vec<_>>>()?;
                EdgeColoring::substitute(quotient, &parts, true)
            }
        }
    }
}

/// Builds the `k`-colored witness on `f(k)` vertices from a 2-colored `base`
/// with no monochromatic wheel on `rim` rim vertices.
///
/// Even `k >= 4`: the pentagon in colors `{k-1, k}` blown up by five copies of
/// the `k-2` witness. Odd `k >= 3`: two copies of the `k-1` witness joined in
/// color `k`.
pub fn build_lower_bound_witness(
    k: usize,
    base: &EdgeColoring,
    rim: usize,
) -> Result<(EdgeColoring, ConstructionTrace)> {
    if k < 2 {
        return invalid("the recursive construction starts at k = 2");
    }
    if k > crate::coloring::MAX_COLORS {
        return invalid(format!("k = {k} exceeds the palette limit"));
    }
    validate_base(base, rim)?;
    let base = base.with_palette(2)?;
    Ok(build(k, &base))
}

/// Checks that `base` is a 2-coloring without a monochromatic `W_rim`.
pub fn validate_base(base: &EdgeColoring, rim: usize) -> Result<()> {
    let wheel = PatternSpec::wheel(rim)?;
    if base.n() == 0 {
        return invalid("base must have at least one vertex");
    }
    if base.colors_used().iter().any(|&c| c > 2) {
        return precondition("base must use only colors 1 and 2");
    }
    if let Some(e) = find_mono(base, &wheel, None) {
        return precondition(format!(
            "base contains a monochromatic {wheel} in color {} on vertices {:?}",
            e.color.unwrap_or(0),
            e.vertices
        ));
    }
    Ok(())
}

fn build(k: usize, base: &EdgeColoring) -> (EdgeColoring, ConstructionTrace) {
    if k == 2 {
        let trace = ConstructionTrace::Base {
            digest: base.canonical_digest(),
            colors: base.colors_used().into_iter().collect(),
            size: base.n(),
        };
        return (base.clone(), trace);
    }
    if k % 2 == 1 {
        let (inner, t) = build(k - 1, base);
        let color = k as Color;
        let joined = EdgeColoring::join(&inner, &inner, color).expect("join color is fresh");
        let trace = ConstructionTrace::Join { color, left: Box::new(t.clone()), right: Box::new(t), size: joined.n() };
        (joined, trace)
    } else {
        let (inner, t) = build(k - 2, base);
        let (lo, hi) = ((k - 1) as Color, k as Color);
        let quotient = pentagon_coloring().recolor(k, |c| if c == 1 { lo } else { hi }).expect("palette fits");
        let parts = vec![inner; 5];
        let blown = EdgeColoring::substitute(&quotient, &parts, true).expect("quotient colors are fresh");
        let trace = ConstructionTrace::Blowup {
            quotient,
            color_map: vec![(1, lo), (2, hi)],
            children: vec![t; 5],
            size: blown.n(),
        };
        (blown, trace)
    }
}

/// A Gallai coloring on `n` vertices with colors from `1..=k`, deterministic
/// in `seed`.
///
/// Built by recursive substitution: each level picks `p` in `2..=5`, a random
/// quotient on two random colors and near-equal part sizes.
pub fn random_gallai(n: usize, k: usize, seed: u64) -> Result<EdgeColoring> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if k == 0 || k > crate::coloring::MAX_COLORS {
        return invalid(format!("k = {k} outside 1..={}", crate::coloring::MAX_COLORS));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(gallai_rec(n, k, &mut rng))
}

fn gallai_rec(n: usize, k: usize, rng: &mut ChaCha8Rng) -> EdgeColoring {
    if n == 1 {
        return EdgeColoring::monochromatic(1, k, 1).expect("K1");
    }
    let p = rng.gen_range(2..=5).min(n);
    let a = rng.gen_range(1..=k) as Color;
    let b = rng.gen_range(1..=k) as Color;
    let quotient =
        EdgeColoring::from_fn(p, k, |_, _| if rng.gen_bool(0.5) { a } else { b }).expect("quotient colors in range");
    let parts: Vec<EdgeColoring> = (0..p)
        .map(|i| n / p + usize::from(i < n % p))
        .collect::<Vec<_>>()
        .into_iter()
        .map(|size| gallai_rec(size, k, rng))
        .collect();
    EdgeColoring::substitute(&quotient, &parts, false).expect("sizes match")
}
