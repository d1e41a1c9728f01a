mod common;

use common::{naive_contains, naive_rainbow, random_coloring};
use gallai::format::{parse_text, render_text, ColoringDocument, Format, Provenance};
use gallai::structure::validate_apex_sequence;
use gallai::{
    find_gallai_partition, find_mono, find_rainbow_triangle, has_mono_p3_in_color, is_gallai, peel_apex_sequence,
    random_gallai, verify_gallai_partition, wheel_from_mono_pair, Color, EdgeColoring, Error, PatternSpec,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_patterns() -> Vec<PatternSpec> {
    vec![
        PatternSpec::P3,
        PatternSpec::K3,
        PatternSpec::C4,
        PatternSpec::W4,
        PatternSpec::clique(4).unwrap(),
        PatternSpec::path(4).unwrap(),
        PatternSpec::cycle(5).unwrap(),
        PatternSpec::wheel(3).unwrap(),
        PatternSpec::wheel(5).unwrap(),
        // triangle with a pendant edge
        PatternSpec::explicit(4, vec![(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap(),
    ]
}

#[test]
fn core_patterns_match_hand_written_edges() {
    for p in [PatternSpec::P3, PatternSpec::K3, PatternSpec::C4, PatternSpec::W4] {
        let g = p.graph().unwrap();
        let (h, edges) = common::pattern_edges(&p);
        assert_eq!(g.order(), h);
        assert_eq!(g.edges().len(), edges.len(), "{p}");
        assert!(edges.iter().all(|&(a, b)| g.adjacent(a, b)), "{p}");
    }
}

#[test]
fn find_mono_matches_naive_for_every_pattern_kind() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let patterns = all_patterns();
    for _ in 0..300 {
        let n = rng.gen_range(1..=9);
        let k = rng.gen_range(1..=3);
        // skew toward color 1 so dense patterns actually occur
        let bias = rng.gen_range(0.2..0.95);
        let c = EdgeColoring::from_fn(n, k, |_, _| if rng.gen_bool(bias) { 1 } else { rng.gen_range(1..=k) as Color })
            .unwrap();
        for p in &patterns {
            for col in 1..=k as Color {
                let got = find_mono(&c, p, Some(col));
                assert_eq!(got.is_some(), naive_contains(&c, p, col), "{p} color {col} in {c:?}");
                if let Some(e) = got {
                    assert!(e.validate(&c));
                    assert_eq!(e.color, Some(col));
                }
            }
            let any = find_mono(&c, p, None);
            assert_eq!(any.is_some(), (1..=k as Color).any(|col| naive_contains(&c, p, col)));
            // the any-color scan reports the smallest color that has a copy
            if let Some(e) = any {
                let first = (1..=k as Color).find(|&col| naive_contains(&c, p, col));
                assert_eq!(e.color, first);
            }
        }
        assert_eq!(find_rainbow_triangle(&c).is_some(), naive_rainbow(&c));
    }
}

#[test]
fn planted_pair_with_p3_gives_wheel() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut found = 0;
    for _ in 0..1000 {
        let m = rng.gen_range(1..=9);
        let k = rng.gen_range(1..=3);
        let a = random_coloring(&mut rng, m, k);
        let i = rng.gen_range(1..=k) as Color;
        let xy = rng.gen_range(1..=k) as Color;
        // vertices m and m+1 are the planted pair
        let c = EdgeColoring::from_fn(m + 2, k, |u, v| match (u >= m, v >= m) {
            (false, false) => a.color(u, v),
            (true, true) => xy,
            _ => i,
        })
        .unwrap();
        let e = wheel_from_mono_pair(&c, m, m + 1, i).unwrap();
        if has_mono_p3_in_color(&a, i) {
            let e = e.expect("pair plus P3 gives a wheel");
            assert!(e.validate(&c));
            assert_eq!(e.color, Some(i));
            assert!(find_mono(&c, &PatternSpec::W4, Some(i)).is_some());
            found += 1;
        } else {
            assert!(e.is_none());
        }
    }
    assert!(found > 100, "too few instances exercised the positive case: {found}");
}

#[test]
fn wheel_from_mono_pair_checks_its_precondition() {
    let p = gallai::pentagon_coloring();
    assert!(matches!(wheel_from_mono_pair(&p, 0, 1, 1), Err(Error::PreconditionFailed(_))));
    assert!(wheel_from_mono_pair(&p, 0, 0, 1).is_err());
    assert!(wheel_from_mono_pair(&p, 0, 9, 1).is_err());
}

#[test]
fn peeling_is_maximal() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for seed in 0..200 {
        let n = rng.gen_range(1..=30);
        let k = rng.gen_range(1..=5);
        let c = random_gallai(n, k, seed).unwrap();
        let s = peel_apex_sequence(&c);
        validate_apex_sequence(&c, &s).unwrap();
        assert_eq!(s.entries.len() + s.remainder.len(), n);
        let r = &s.remainder;
        if r.len() >= 2 {
            for &v in r {
                let mut cols = r.iter().filter(|&&u| u != v).map(|&u| c.color(u, v));
                let first = cols.next().unwrap();
                assert!(!cols.all(|x| x == first), "vertex {v} could still be peeled");
            }
        }
    }
}

#[test]
fn partitions_verify_on_random_gallai() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for seed in 0..300 {
        let n = rng.gen_range(2..=40);
        let k = rng.gen_range(1..=6);
        let c = random_gallai(n, k, 1000 + seed).unwrap();
        let p = find_gallai_partition(&c).unwrap();
        assert!(p.p() >= 2);
        let report = verify_gallai_partition(&c, &p).unwrap();
        assert!(report.valid, "{:?}", report.violations);
        assert!(p.reduced.colors_used().len() <= 2);
    }
}

#[test]
fn broken_partitions_are_reported() {
    let p = gallai::pentagon_coloring();
    let joined = EdgeColoring::join(&p, &p, 3).unwrap();
    let mut part = find_gallai_partition(&joined).unwrap();
    assert!(verify_gallai_partition(&joined, &part).unwrap().valid);
    // move one vertex across: the blocks are no longer joined monochromatically
    part.parts = vec![(0..6).collect(), (6..10).collect()];
    assert!(!verify_gallai_partition(&joined, &part).unwrap().valid);
}

fn coloring_strategy(max_n: usize, max_k: usize) -> impl Strategy<Value = EdgeColoring> {
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        proptest::collection::vec(1..=k as Color, n * (n - 1) / 2)
            .prop_map(move |colors| EdgeColoring::from_upper_triangle(n, k, colors).unwrap())
    })
}

fn gallai_strategy() -> impl Strategy<Value = EdgeColoring> {
    (1usize..=25, 1usize..=5, any::<u64>()).prop_map(|(n, k, seed)| random_gallai(n, k, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn documents_round_trip(c in coloring_strategy(9, 6), seed in any::<u64>(), tag in 0u8..3) {
        let doc = match tag {
            0 => ColoringDocument::new(c.clone()),
            1 => ColoringDocument::with_provenance(c.clone(), Provenance::Random { n: c.n(), k: c.k(), seed }),
            _ => ColoringDocument { coloring: c.clone(), provenance: None, digest: Some(c.canonical_digest()) },
        };
        prop_assert_eq!(ColoringDocument::parse(&doc.render(Format::Json)).unwrap(), doc.clone());
        let text = doc.render(Format::Grc);
        prop_assert_eq!(parse_text(&text).unwrap(), c.clone());
        prop_assert_eq!(render_text(&parse_text(&text).unwrap()), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn join_and_substitute_sizes(a in coloring_strategy(6, 3), b in coloring_strategy(6, 3)) {
        let j = EdgeColoring::join(&a, &b, 4).unwrap();
        prop_assert_eq!(j.n(), a.n() + b.n());
        prop_assert_eq!(j.restrict(&(0..a.n()).collect::<Vec<_>>()).unwrap().edge_colors().to_vec(), a.edge_colors().to_vec());
        prop_assert_eq!(j.restrict(&(a.n()..j.n()).collect::<Vec<_>>()).unwrap().edge_colors().to_vec(), b.edge_colors().to_vec());
        prop_assert!(j.colors_used().contains(&4) || a.n() == 0 || b.n() == 0);
    }

    #[test]
    fn substitute_restricts_back_to_its_parts(
        q in coloring_strategy(5, 3),
        parts in proptest::collection::vec(coloring_strategy(4, 4), 5),
    ) {
        let parts = &parts[..q.n()];
        let s = EdgeColoring::substitute(&q, parts, false).unwrap();
        prop_assert_eq!(s.n(), parts.iter().map(EdgeColoring::n).sum::<usize>());
        let mut start = 0;
        let mut reps = Vec::new();
        for p in parts {
            let block: Vec<usize> = (start..start + p.n()).collect();
            prop_assert_eq!(s.restrict(&block).unwrap().edge_colors().to_vec(), p.edge_colors().to_vec());
            reps.push(start);
            start += p.n();
        }
        prop_assert_eq!(s.restrict(&reps).unwrap().edge_colors().to_vec(), q.edge_colors().to_vec());
    }

    #[test]
    fn substitution_preserves_gallai(q in gallai_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = q.restrict(&(0..q.n().min(6)).collect::<Vec<_>>()).unwrap();
        let parts: Vec<EdgeColoring> =
            (0..q.n()).map(|_| random_gallai(rng.gen_range(1..=5), 5, rng.gen()).unwrap()).collect();
        let s = EdgeColoring::substitute(&q, &parts, false).unwrap();
        prop_assert!(is_gallai(&s));
        prop_assert!(!naive_rainbow(&s));
    }

    #[test]
    fn random_gallai_is_gallai_and_deterministic(n in 1usize..=60, k in 1usize..=8, seed in any::<u64>()) {
        let c = random_gallai(n, k, seed).unwrap();
        prop_assert_eq!(c.n(), n);
        prop_assert!(c.colors_used().iter().all(|&x| x as usize <= k));
        prop_assert!(find_rainbow_triangle(&c).is_none());
        prop_assert_eq!(random_gallai(n, k, seed).unwrap(), c);
    }

    #[test]
    fn digests_separate_colorings(c in coloring_strategy(8, 3)) {
        prop_assume!(c.n() >= 2);
        let flipped = c.recolor(c.k().max(2), |x| if x == 1 { 2 } else { 1 }).unwrap();
        prop_assert_ne!(flipped.canonical_digest(), c.canonical_digest());
    }
}
