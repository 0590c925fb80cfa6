mod common;

use common::{add, combo, naive, sub, to_set};
use mstd_core::analysis::stabilize;
use mstd_core::density::Predicate;
use mstd_core::sumexpr::{parse, Env};
use mstd_core::{IntSet, SignedPair};
use proptest::prelude::*;

fn small_set() -> impl Strategy<Value = IntSet> {
    prop::collection::vec(-30i64..60, 1..12).prop_map(IntSet::from_unsorted)
}

/// Sets that exercise the dense representation and the bitset kernel.
fn wide_set() -> impl Strategy<Value = IntSet> {
    (prop::collection::vec(any::<bool>(), 1..400), -500i64..500).prop_map(|(bits, lo)| {
        let mut v: Vec<i64> = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| lo + i as i64).collect();
        if v.is_empty() {
            v.push(lo);
        }
        IntSet::from_unsorted(v)
    })
}

fn either_set() -> impl Strategy<Value = IntSet> {
    prop_oneof![small_set(), wide_set()]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn kernel_matches_naive(a in either_set(), b in either_set()) {
        prop_assert_eq!(a.sumset(&b).unwrap(), to_set(&add(&naive(&a), &naive(&b))));
        prop_assert_eq!(a.diffset(&b).unwrap(), to_set(&sub(&naive(&a), &naive(&b))));
    }

    #[test]
    fn combos_match_naive(a in small_set(), s in 0u32..4, d in 0u32..4) {
        prop_assume!(s + d > 0);
        prop_assert_eq!(a.signed_combo(SignedPair::new(s, d)).unwrap(), to_set(&combo(&naive(&a), s, d)));
    }

    #[test]
    fn sum_and_difference_lower_bound(a in either_set()) {
        let n = a.len();
        prop_assert!(a.sumset(&a).unwrap().len() >= 2 * n - 1);
        prop_assert!(a.diffset(&a).unwrap().len() >= 2 * n - 1);
    }

    #[test]
    fn difference_set_is_symmetric(a in either_set()) {
        let d = a.diffset(&a).unwrap();
        prop_assert_eq!(d.negate().unwrap(), d);
    }

    #[test]
    fn iterate_is_additive(a in either_set(), m in 0u64..4, n in 0u64..4) {
        let lhs = a.iterate(m + n).unwrap();
        let rhs = match (m, n) {
            (0, _) => a.iterate(n).unwrap(),
            (_, 0) => a.iterate(m).unwrap(),
            _ => a.iterate(m).unwrap().sumset(&a.iterate(n).unwrap()).unwrap(),
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translation_covariance(a in either_set(), b in small_set(), t in -1000i64..1000, u in -1000i64..1000) {
        let shifted = a.translate(t).unwrap().sumset(&b.translate(u).unwrap()).unwrap();
        prop_assert_eq!(shifted, a.sumset(&b).unwrap().translate(t + u).unwrap());
        let diff = a.translate(t).unwrap().diffset(&b.translate(u).unwrap()).unwrap();
        prop_assert_eq!(diff, a.diffset(&b).unwrap().translate(t - u).unwrap());
    }

    #[test]
    fn text_round_trip(a in either_set()) {
        let text = a.to_string();
        let back = mstd_core::setcore::io::parse_text(&text, Default::default()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn stabilization_invariants(v in prop::collection::vec(0i64..30, 2..7)) {
        let a = IntSet::from_unsorted(v);
        prop_assume!(a.len() >= 2);
        let rep = stabilize(&a).unwrap();
        prop_assert!(rep.onset as i64 <= rep.bound);
        // |kA| <= k·slope + 1, so C >= -1.
        prop_assert!(rep.c >= -1);
        let onset = rep.onset as usize;
        for k in onset..onset + rep.slope as usize {
            prop_assert_eq!(rep.sizes[k - 1] as i64, k as i64 * rep.slope - rep.c);
        }
        if onset > 1 {
            let n = onset - 1;
            let linear_earlier = (n..n + rep.slope as usize).all(|j| rep.sizes[j] - rep.sizes[j - 1] == rep.slope as u64);
            prop_assert!(!linear_earlier);
        }
    }

    #[test]
    fn expression_evaluation_matches_combos(a in small_set(), k in 0u32..5, d in 0u32..5) {
        prop_assume!(k + d > 0);
        let env = Env::new().with("A", a.clone());
        let text = match (k, d) {
            (_, 0) => format!("{k}A"),
            (0, _) => format!("-{d}A"),
            _ => format!("{k}A-{d}A"),
        };
        let got = parse(&text).unwrap().eval(&env).unwrap();
        prop_assert_eq!(&got, &a.signed_combo(SignedPair::new(k, d)).unwrap());
        prop_assert_eq!(got, to_set(&combo(&naive(&a), k, d)));
    }

    #[test]
    fn zero_copies_are_empty(a in small_set(), k in 1u32..4) {
        let env = Env::new().with("A", a);
        prop_assert!(parse("0A").unwrap().eval(&env).unwrap().is_empty());
        let text = format!("{k}A-0A");
        let minus_nothing = parse(&text).unwrap().eval(&env).unwrap();
        prop_assert!(minus_nothing.is_empty());
    }

    #[test]
    fn spaced_coefficients_parse_the_same(c in 0u64..20, name in "[A-Z][a-z0-9]{0,3}") {
        prop_assert_eq!(parse(&format!("{c} {name}")).unwrap(), parse(&format!("{c}{name}")).unwrap());
        prop_assert_ne!(parse(&format!("{c}*{name}")).unwrap(), parse(&format!("{c}{name}")).unwrap());
    }

    #[test]
    fn predicate_mask_path_matches(mask in any::<u128>(), n in 1u32..=128) {
        let mask = if n == 128 { mask } else { mask & ((1u128 << n) - 1) };
        let set: IntSet = (0..128i64).filter(|&i| mask >> i & 1 == 1).collect();
        for p in [Predicate::SumDominant, Predicate::Balanced, Predicate::DifferenceDominant, Predicate::Nonempty] {
            prop_assert_eq!(p.holds_mask(mask).unwrap(), p.holds(&set).unwrap());
        }
    }
}
