mod common;

use common::{combo, naive};
use mstd_core::construct::{build_chain, build_supernice, fringe_pair, ChainLevel, ChainSpec};
use mstd_core::SignedPair;

/// Cardinality of `sA - dA`, naively up to level 3 and with the library kernel above.
fn size(a: &mstd_core::IntSet, p: SignedPair) -> usize {
    if p.level() <= 3 {
        combo(&naive(a), p.s, p.d).len()
    } else {
        a.signed_combo(p).unwrap().len()
    }
}

#[test]
fn supernice_sets_beat_every_other_pair_by_one() {
    for k in 2..=5u32 {
        for target in SignedPair::at_level(k) {
            let r = build_supernice(k, target.s, target.d, None).unwrap();
            let own = size(r.set(), target);
            for other in SignedPair::at_level(k).into_iter().filter(|&p| p != target) {
                assert_eq!(own, size(r.set(), other) + 1, "k = {k}, {target} vs {other} ({})", r.provenance);
            }
        }
    }
}

#[test]
fn chains_satisfy_every_constrained_level() {
    let specs = [
        ChainSpec { k: 3, levels: vec![ChainLevel::new(1, 1, 2, 0), ChainLevel::new(3, 0, 2, 1)] },
        ChainSpec { k: 4, levels: vec![ChainLevel::new(2, 0, 1, 1), ChainLevel::new(2, 2, 4, 0)] },
        ChainSpec { k: 4, levels: vec![ChainLevel::new(3, 1, 2, 2)] },
    ];
    for spec in specs {
        let r = build_chain(&spec).unwrap();
        for c in &spec.levels {
            let (wins, loses) = (size(r.set(), c.wins), size(r.set(), c.loses));
            assert!(wins > loses, "{spec:?}: {} has {wins}, {} has {loses}", c.wins, c.loses);
        }
    }
}

#[test]
fn fringe_shapes() {
    let fr = fringe_pair(3).unwrap();
    assert_eq!(fr.left.to_vec(), vec![0, 1, 3, 4, 7]);
    assert_eq!(fr.right.to_vec(), vec![0, 1, 2, 4, 5, 8]);
}
