//! Property tests: every decision procedure against its brute-force oracle and
//! the order axioms on randomly generated inputs.

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uposet_core::convex::{self, Point};
use uposet_core::generic::{self, GenericOrder, SurrealOrder};
use uposet_core::grammar::{self, GTree};
use uposet_core::hfset::HfSet;
use uposet_core::intervals;
use uposet_core::paths::{self, OrientedPath};
use uposet_core::periodic::{self, PeriodicSet};
use uposet_core::poset::{is_embedding, random_poset};
use uposet_core::rational::Rational;
use uposet_core::vectors;
use uposet_core::words::{self, AntichainSet, WordOrder};

fn antichain(seed: u64, max_len: usize) -> AntichainSet {
    words::random_antichain(&mut ChaCha8Rng::seed_from_u64(seed), max_len, 6)
}

fn path(dirs: &[bool]) -> OrientedPath {
    OrientedPath::from_dirs(dirs.iter().map(|&f| if f { 1 } else { -1 }).collect()).unwrap()
}

fn tree_strategy() -> impl Strategy<Value = GTree> {
    let leaf = prop_oneof![Just(GTree::Zero), Just(GTree::One)];
    // Trees with at most 5 nodes keep the bounded search small; the suite covers 7 nodes exhaustively.
    leaf.prop_recursive(2, 5, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| GTree::node(a, b)))
        .prop_filter("at most 5 nodes", |t| t.size() <= 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_order_axioms(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (antichain(s1, 4), antichain(s2, 4), antichain(s3, 4));
        prop_assert!(words::set_leq(&a, &a));
        if words::set_leq(&a, &b) && words::set_leq(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if words::set_leq(&a, &b) && words::set_leq(&b, &c) {
            prop_assert!(words::set_leq(&a, &c));
        }
    }

    #[test]
    fn psi_embeds_random_posets(n in 1usize..8, seed in any::<u64>(), density in 0.0f64..1.0) {
        let p = random_poset(n, seed, density);
        let images = words::psi_embed(&p);
        prop_assert!(is_embedding(&p, &images, &WordOrder).unwrap().ok);
        for (k, image) in images.iter().enumerate() {
            prop_assert!(image.max_len() <= k + 1);
        }
    }

    #[test]
    fn images_transport_the_word_order(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (antichain(s1, 5), antichain(s2, 5));
        let expected = words::set_leq(&a, &b);
        let (ia, ib) = (intervals::embed_words(&a), intervals::embed_words(&b));
        prop_assert_eq!(intervals::interval_leq(&ia, &ib), expected);
        prop_assert_eq!(grammar::derives(&grammar::embed_words(&b), &grammar::embed_words(&a)), expected);
        prop_assert_eq!(vectors::tv_leq(&vectors::embed_words(&a), &vectors::embed_words(&b)), expected);
        if !ia.is_empty() && !ib.is_empty() {
            let (ha, hb) = (convex::embed_intervals(&ia).unwrap(), convex::embed_intervals(&ib).unwrap());
            prop_assert_eq!(convex::convex_leq(&ha, &hb), expected);
        }
        // The periodic image preserves the order; it does not reflect it.
        if expected {
            prop_assert!(periodic::subset(&periodic::embed_words(&a), &periodic::embed_words(&b)));
        }
    }

    #[test]
    fn hull_containment_matches_pointwise_test(
        pts_a in prop::collection::vec((-40i64..40, 1i64..9, -40i64..40, 1i64..9), 1..8),
        pts_b in prop::collection::vec((-40i64..40, 1i64..9, -40i64..40, 1i64..9), 1..8),
        huge in any::<bool>(),
    ) {
        // A large shared factor pushes the scaled coordinates past machine integers.
        let factor = if huge { BigInt::from(1u64 << 40) * BigInt::from(1u64 << 40) } else { BigInt::from(1) };
        let point = |&(xn, xd, yn, yd): &(i64, i64, i64, i64)| {
            Point::new(
                Rational::new(BigInt::from(xn), BigInt::from(xd) * &factor),
                Rational::new(BigInt::from(yn), BigInt::from(yd) * &factor),
            )
        };
        let a = convex::convex_hull(&pts_a.iter().map(point).collect::<Vec<_>>()).unwrap();
        let b = convex::convex_hull(&pts_b.iter().map(point).collect::<Vec<_>>()).unwrap();
        let pointwise = a.vertices().iter().all(|p| b.contains_point(p));
        prop_assert_eq!(convex::contains(&a, &b), pointwise);
        prop_assert!(convex::contains(&a, &a));
    }

    #[test]
    fn densify_lands_strictly_between(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = intervals::random_interval_set(&mut rng, 32, 4);
        if let Some(a) = intervals::random_strictly_below(&mut rng, &b) {
            let m = intervals::densify(&a, &b).unwrap();
            prop_assert!(intervals::interval_leq(&a, &m) && intervals::interval_leq(&m, &b));
            prop_assert!(m != a && m != b);
        }
    }

    #[test]
    fn derives_agrees_with_rewriting_search(a in tree_strategy(), b in tree_strategy()) {
        prop_assert_eq!(grammar::derives(&a, &b), grammar::rewrite_oracle(&a, &b, 12));
    }

    #[test]
    fn hom_decider_agrees_with_backtracking(
        p in prop::collection::vec(any::<bool>(), 0..12),
        q in prop::collection::vec(any::<bool>(), 0..12),
    ) {
        let (p, q) = (path(&p), path(&q));
        let found = paths::hom_exists(&p, &q);
        prop_assert_eq!(found.is_some(), paths::hom_oracle(&p, &q));
        if let Some(phi) = found {
            prop_assert!(paths::is_homomorphism(&p, &q, &phi));
        }
        prop_assert_eq!(paths::count_homs(&p, &q, None) > 0, paths::hom_oracle(&p, &q));
    }

    #[test]
    fn periodic_restriction_and_union(bits in prop::collection::vec(any::<bool>(), 8), other in prop::collection::vec(any::<bool>(), 4)) {
        let s = PeriodicSet::from_signature(bits).unwrap();
        let t = PeriodicSet::from_signature(other).unwrap();
        for i in [1, 2, 4, 8].into_iter().filter(|&i| i <= s.period()) {
            let r = periodic::restrict(&s, i).unwrap();
            prop_assert!(periodic::subset(&r, &s));
            prop_assert!(r.period() <= i);
        }
        let u = periodic::union(&s, &t);
        prop_assert!(periodic::subset(&s, &u) && periodic::subset(&t, &u));
        let doubled: Vec<bool> = s.signature().iter().chain(s.signature()).copied().collect();
        prop_assert_eq!(PeriodicSet::from_signature(doubled).unwrap(), s);
    }

    #[test]
    fn generic_online_embedding(n in 1usize..6, seed in any::<u64>(), density in 0.0f64..1.0) {
        let p = random_poset(n, seed, density);
        let images = generic::embed_poset_online(&p);
        prop_assert!(is_embedding(&p, &images, &GenericOrder).unwrap().ok);
        let mut sorted = images.clone();
        let mut order = SurrealOrder::new();
        order.sort(&mut sorted);
        for w in sorted.windows(2) {
            prop_assert!(order.leq(w[0], w[1]));
            prop_assert!(!order.same_value(w[0], w[1]));
        }
        for &a in &images {
            for &b in &images {
                if generic::lt_in(a, b) {
                    prop_assert!(generic::leq_surreal(a, b));
                }
            }
        }
    }

    #[test]
    fn hfset_text_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_hfset(&mut rng, 3);
        let back: HfSet = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
        let back: HfSet = s.to_unicode().parse().unwrap();
        prop_assert_eq!(back, s);
    }
}

fn random_hfset(rng: &mut ChaCha8Rng, depth: u32) -> HfSet {
    use rand::Rng;
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.5) { HfSet::atom() } else { HfSet::empty() };
    }
    let k = rng.gen_range(0..4);
    HfSet::set((0..k).map(|_| random_hfset(rng, depth - 1)).collect::<Vec<_>>())
}

#[test]
fn periodic_image_collapses_a_split_word() {
    let eps = AntichainSet::parse(&[""]).unwrap();
    let split = AntichainSet::parse(&["0", "1"]).unwrap();
    assert!(words::set_leq(&split, &eps));
    assert!(!words::set_leq(&eps, &split));
    assert_eq!(periodic::embed_words(&eps), periodic::embed_words(&split));
}
