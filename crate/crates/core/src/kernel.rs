//! Single-word checks for "does edge `ab` lie in a copy of the pattern",
//! used by the search when `n <= 64`. Each assumes `ab` is already present.

use crate::bitset::ColorGraph;

#[inline]
fn bit(v: usize) -> u64 {
    1 << v
}

#[inline]
fn ones(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(b)
        }
    })
}

pub(crate) fn p3_through(g: &ColorGraph, a: usize, b: usize) -> bool {
    g.word(a).count_ones() >= 2 || g.word(b).count_ones() >= 2
}

pub(crate) fn k3_through(g: &ColorGraph, a: usize, b: usize) -> bool {
    g.word(a) & g.word(b) != 0
}

/// A 4-cycle `a b x y`: `x ~ b`, `y ~ a`, `x ~ y`.
pub(crate) fn c4_through(g: &ColorGraph, a: usize, b: usize) -> bool {
    let ys = g.word(a) & !bit(b);
    ones(g.word(b) & !bit(a)).any(|x| g.word(x) & ys != 0)
}

/// `hub`-centered wheel with `rim` on the rim: a 4-cycle inside `N(hub)`
/// passing through `rim`.
fn w4_hub_rim(g: &ColorGraph, hub: usize, rim: usize) -> bool {
    let nh = g.word(hub);
    let s = nh & g.word(rim);
    if s.count_ones() < 2 {
        return false;
    }
    let far = nh & !bit(rim);
    let mut rest = s;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let nx = g.word(x) & far;
        if nx == 0 {
            continue;
        }
        if ones(rest).any(|y| g.word(y) & nx != 0) {
            return true;
        }
    }
    false
}

pub(crate) fn w4_through(g: &ColorGraph, a: usize, b: usize) -> bool {
    if w4_hub_rim(g, a, b) || w4_hub_rim(g, b, a) {
        return true;
    }
    // ab on the rim: hub h, rim a b x y
    let (na, nb) = (g.word(a), g.word(b));
    ones(na & nb).any(|h| {
        let nh = g.word(h);
        let ys = na & nh & !bit(b);
        ys != 0 && ones(nb & nh & !bit(a)).any(|x| g.word(x) & ys != 0)
    })
}
