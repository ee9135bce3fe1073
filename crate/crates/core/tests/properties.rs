mod common;

use proptest::prelude::*;

use common::Q;
use otx_core::analysis::{self, IColor};
use otx_core::catalog::{self, GammaId};
use otx_core::iet::{self, IetSpec};
use otx_core::markov;
use otx_core::rational::{frac, int};
use otx_core::{forces_pair, sharkovsky_cmp, Pattern, RotPair};

fn cyclic_pattern(max_q: usize) -> impl Strategy<Value = Pattern> {
    (2..=max_q)
        .prop_flat_map(|q| Just((2..=q).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|rest| {
            let q = rest.len() + 1;
            let mut order = vec![1];
            order.extend(rest);
            let mut images = vec![0; q];
            for k in 0..q {
                images[order[k] - 1] = order[(k + 1) % q];
            }
            Pattern::new(images).unwrap()
        })
}

fn gamma_id() -> impl Strategy<Value = GammaId> {
    (2usize..=40)
        .prop_flat_map(|q| (Just(q), 1..=q / 2))
        .prop_filter("coprime", |(q, p)| num_integer::gcd(*p, *q) == 1)
        .prop_flat_map(|(q, p)| (Just(q), Just(p), 0..=q - 2 * p))
        .prop_map(|(q, p, r)| GammaId::new(p, q, r).unwrap())
}

fn iet_spec() -> impl Strategy<Value = IetSpec> {
    (1usize..=8)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(1i128..=20, n),
                Just((1..=n as i64).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(w, perm, flips)| {
            let total: i128 = w.iter().sum();
            let lengths = w.iter().map(|&x| Q::new(x, total)).collect();
            let signed = perm
                .iter()
                .zip(&flips)
                .map(|(&v, &f)| if f { -v } else { v })
                .collect();
            IetSpec::new(lengths, signed).unwrap()
        })
}

fn rot_pair() -> impl Strategy<Value = RotPair> {
    (2u64..=30).prop_flat_map(|q| (1..=q / 2).prop_map(move |p| RotPair::new(p, q).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn invariants_match_oracles(p in cyclic_pattern(14)) {
        prop_assert_eq!(p.modality(), common::turns(p.images()));
        let rot = p.over_rotation_pair();
        prop_assert_eq!((rot.p as usize, rot.q as usize), common::sign_switch_pair(p.images()));
        prop_assert_eq!(p.p_linear_map().fixed_points, common::fixed_points(p.images()));
        prop_assert_eq!(analysis::is_green_pattern(&p), common::is_green(p.images()));
        prop_assert_eq!(Pattern::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn islands_alternate_and_end_black(p in cyclic_pattern(14)) {
        prop_assume!(p.is_convergent());
        let isl = analysis::island_decomposition(&p).unwrap();
        for side in [&isl.left, &isl.right] {
            prop_assert!(side.windows(2).all(|w| w[0].icolor != w[1].icolor && w[0].end + 1 == w[1].start));
        }
        prop_assert_eq!(isl.left[0].icolor, IColor::IBlack);
        prop_assert_eq!(isl.right.last().unwrap().icolor, IColor::IBlack);
        let covered: usize = isl.left.iter().chain(&isl.right).map(|i| i.end - i.start + 1).sum();
        prop_assert_eq!(covered, p.period());
    }

    #[test]
    fn special_set_pieces_are_ordered_and_disjoint(p in cyclic_pattern(14)) {
        prop_assume!(p.is_convergent());
        let s = analysis::special_set(&p).unwrap();
        prop_assert!(!s.pieces.is_empty());
        for w in s.pieces.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
            prop_assert!(w[0].hi < w[1].lo || !(w[0].hi_closed && w[1].lo_closed));
        }
        // the fixed point is its own closest sibling
        prop_assert!(s.contains(&s.fixed_point));
    }

    #[test]
    fn greedy_blocks_always_conjugate(p in cyclic_pattern(14)) {
        let (spec, w) = iet::iet_from_blocks(&p, &iet::greedy_blocks(&p)).unwrap();
        prop_assert!(w.verified);
        prop_assert_eq!(spec.n(), iet::greedy_blocks(&p).len());
    }

    #[test]
    fn canonical_blocks_bounded_and_conjugate(p in cyclic_pattern(12)) {
        let Ok(blocks) = iet::canonical_blocks(&p) else { return Ok(()); };
        let m = p.modality();
        prop_assert!(blocks.len() <= (m + 1) * (m + 2));
        prop_assert!(iet::greedy_blocks(&p).len() <= blocks.len());
        let (_, w) = iet::iet_from_blocks(&p, &blocks).unwrap();
        prop_assert!(w.verified);
    }

    #[test]
    fn exchanges_permute_the_segments(spec in iet_spec()) {
        let seps = spec.separation_points().to_vec();
        let mut images = Vec::new();
        for i in 0..spec.n() {
            let (lo, hi) = (seps[i], seps[i + 1]);
            let a = spec.apply(&lo).unwrap();
            let b = spec.apply(&(lo + (hi - lo) * frac(1, 2))).unwrap();
            // slope is +1 on oriented and -1 on flipped segments
            let slope = (b - a) / ((hi - lo) * frac(1, 2));
            prop_assert_eq!(slope, if spec.is_flipped(i) { int(-1) } else { int(1) });
            let (start, end) = if spec.is_flipped(i) { (a - (hi - lo), a) } else { (a, a + (hi - lo)) };
            images.push((start, end));
        }
        images.sort();
        prop_assert_eq!(images[0].0, int(0));
        prop_assert!(images.windows(2).all(|w| w[0].1 == w[1].0));
        prop_assert_eq!(images.last().unwrap().1, int(1));
    }

    #[test]
    fn catalog_round_trip(id in gamma_id()) {
        let pat = catalog::gamma_pattern(id);
        prop_assert_eq!(catalog::catalog_membership(&pat), Some(id));
        prop_assert_eq!(pat.over_rotation_pair(), RotPair { p: id.p as u64, q: id.q as u64 });
        prop_assert_eq!(catalog::classify_gamma_modality(id).modality, pat.modality());
        prop_assert!(analysis::point_membership_in_special_set(&pat).unwrap());
    }

    #[test]
    fn sharkovsky_is_a_total_order(a in 1u64..5000, b in 1u64..5000, c in 1u64..5000) {
        use std::cmp::Ordering::*;
        prop_assert_eq!(sharkovsky_cmp(a, b), sharkovsky_cmp(b, a).reverse());
        prop_assert_eq!(sharkovsky_cmp(a, b), common::sharkovsky_key(b).cmp(&common::sharkovsky_key(a)));
        if sharkovsky_cmp(a, b) == Greater && sharkovsky_cmp(b, c) == Greater {
            prop_assert_eq!(sharkovsky_cmp(a, c), Greater);
        }
    }

    #[test]
    fn forcing_is_reflexive_and_transitive(x in rot_pair(), y in rot_pair(), z in rot_pair()) {
        prop_assert!(forces_pair(&x, &x));
        if forces_pair(&x, &y) && forces_pair(&y, &z) {
            prop_assert!(forces_pair(&x, &z));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn realized_loops_are_exact_orbits(p in cyclic_pattern(7), n in 1usize..=5) {
        let graph = markov::markov_graph(&p);
        for lp in markov::loops_of_length(&graph, n) {
            let Some(c) = markov::realize_in(&graph, &lp).unwrap().into_cycle() else { continue };
            prop_assert_eq!(n % c.period, 0);
            for x in &c.points {
                let mut y = *x;
                for _ in 0..c.period {
                    y = common::eval(p.images(), &y);
                }
                prop_assert_eq!(y, *x);
            }
            if let Some(pat) = &c.pattern {
                prop_assert_eq!(pat.period(), c.period);
                prop_assert_eq!(Pattern::from_orbit(&c.points).unwrap(), pat.clone());
            }
        }
    }
}
