//! Backtracking subgraph matcher for small patterns over one color class.

use crate::bitset::{iter_ones, words_for, ColorGraph};
use crate::pattern::PatternGraph;

/// Order in which pattern vertices get host images.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub order: Vec<usize>,
    /// For each position, the pattern vertices placed earlier and adjacent to it.
    back: Vec<Vec<usize>>,
}

impl Plan {
    /// `prefix` is placed first; the rest greedily by most placed neighbors,
    /// then highest degree, then lowest index.
    pub fn new(g: &PatternGraph, prefix: &[usize]) -> Plan {
        let mut order: Vec<usize> = prefix.to_vec();
        let mut placed: u32 = prefix.iter().fold(0, |m, &v| m | 1 << v);
        while order.len() < g.order() {
            let next = (0..g.order())
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    let links = (g.neighbors_mask(v) & placed).count_ones();
                    (links, g.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            order.push(next);
            placed |= 1 << next;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| order[..i].iter().copied().filter(|&u| g.adjacent(u, v)).collect())
            .collect();
        Plan { order, back }
    }
}

/// Finds the first embedding of the planned pattern in `host`, in
/// lexicographic order of host images along the plan.
///
/// `fixed` gives host images for the first `fixed.len()` plan positions.
/// When `allowed` is set, every image must lie in that vertex mask.
/// Returns host images indexed by pattern vertex.
pub(crate) fn find_embedding(
    host: &ColorGraph,
    plan: &Plan,
    fixed: &[usize],
    allowed: Option<&[u64]>,
) -> Option<Vec<usize>> {
    let k = plan.order.len();
    if k > host.n() || fixed.len() > k {
        return None;
    }
    let stride = words_for(host.n());
    let mut full = vec![0u64; stride];
    for v in 0..host.n() {
        full[v / 64] |= 1 << (v % 64);
    }
    if let Some(mask) = allowed {
        for (w, m) in full.iter_mut().zip(mask) {
            *w &= m;
        }
    }
    let mut image = vec![usize::MAX; k.max(plan.order.iter().copied().max().map_or(0, |m| m + 1))];
    for (pos, &h) in fixed.iter().enumerate() {
        let p = plan.order[pos];
        if h >= host.n() || full[h / 64] >> (h % 64) & 1 == 0 {
            return None;
        }
        if plan.order[..pos].iter().any(|&q| image[q] == h) {
            return None;
        }
        if plan.back[pos].iter().any(|&q| !host.has_edge(image[q], h)) {
            return None;
        }
        image[p] = h;
    }
    let mut search = Search { host, plan, full: &full, stride, scratch: vec![0; stride * (k + 1)], image };
    if search.extend(fixed.len()) {
        Some(search.image)
    } else {
        None
    }
}

struct Search<'a> {
    host: &'a ColorGraph,
    plan: &'a Plan,
    full: &'a [u64],
    stride: usize,
    scratch: Vec<u64>,
    image: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.plan.order.len() {
            return true;
        }
        let s = self.stride;
        {
            let (_, rest) = self.scratch.split_at_mut(pos * s);
            let cand = &mut rest[..s];
            cand.copy_from_slice(self.full);
            for &q in &self.plan.back[pos] {
                for (w, r) in cand.iter_mut().zip(self.host.row(self.image[q])) {
                    *w &= r;
                }
            }
            for &q in &self.plan.order[..pos] {
                let h = self.image[q];
                cand[h / 64] &= !(1 << (h % 64));
            }
        }
        let p = self.plan.order[pos];
        let cands: Vec<usize> = iter_ones(&self.scratch[pos * s..(pos + 1) * s]).collect();
        for h in cands {
            self.image[p] = h;
            if self.extend(pos + 1) {
                return true;
            }
        }
        self.image[p] = usize::MAX;
        false
    }
}
