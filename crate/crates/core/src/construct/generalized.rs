use crate::error::{domain, Result};
use crate::setcore::{IntSet, SignedPair};

use super::{
    balance_claims, check_same_level, first_unbalanced, fringe_pair, verification_error, Claim,
    Combos, ConstructionResult, Verification,
};

/// `L ∪ [f, n-f] ∪ (n-R)` for the level-`k` fringes.
pub(crate) fn fringed_interval(k: u32, f: i64, n: i64) -> Result<IntSet> {
    let fr = fringe_pair(k)?;
    if f < 0 || n - f < f {
        return domain(format!("middle [{f}, {}] is empty", n - f));
    }
    let mut elems = fr.left.to_vec();
    elems.extend(f..=n - f);
    elems.extend(fr.right.iter().map(|x| n - x));
    Ok(IntSet::from_unsorted(elems))
}

/// Offsets tried around the nominal middle start, nearest first: 0, +1, -1, +2, -2, ...
pub(crate) fn offsets(radius: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=radius).flat_map(|i| [i, -i]))
}

/// A set with `|s1 A - d1 A| = |s2 A - d2 A| + 1` that is balanced at every level below
/// `k = s1 + d1`.
///
/// The middle starts at `2k^2 + 1 - d1` when `s1 > s2` and at `2k^2 + 1 - s1` otherwise
/// (after orienting both pairs so that `s >= d`). When the nominal start fails the exact
/// check, nearby starts are tried in order of distance; when an explicit `n` is not given
/// and no start works, `n` grows.
pub fn build_generalized_mstd(
    p1: SignedPair,
    p2: SignedPair,
    n: Option<i64>,
) -> Result<ConstructionResult> {
    let k = check_same_level(p1, p2)?;
    let (q1, q2) = (p1.normalized(), p2.normalized());
    let more_sums = q1.s > q2.s;
    let base = 2 * (k as i64) * (k as i64) + 1;
    let f0 = base - if more_sums { q1.d } else { q1.s } as i64;
    let n0 = 4 * base + 1;
    let spans: Vec<i64> = match n {
        Some(n) => vec![n],
        None => (0..4).map(|i| n0 + i * base).collect(),
    };
    let radius = 2 * k as i64 + 2;
    let branch = if more_sums { "more-sums" } else { "fewer-sums" };
    for &n in &spans {
        if n < 2 * f0 - 2 * radius {
            return domain(format!("span n = {n} leaves no room for the middle"));
        }
        for delta in offsets(radius) {
            let f = f0 + delta;
            if f < 1 || 2 * f > n {
                continue;
            }
            let a = fringed_interval(k, f, n)?;
            let mut oracle = Combos::new(&a);
            let main = Claim::measure(&mut oracle, p1, p2)?;
            if main.gap != 1 || first_unbalanced(&mut oracle, k)?.is_some() {
                continue;
            }
            let mut claims = vec![main];
            claims.extend(balance_claims(&mut oracle, k)?);
            let provenance = if delta == 0 {
                format!("generalized.{branch}")
            } else {
                format!("generalized.{branch} (middle start shifted by {delta:+})")
            };
            return Ok(ConstructionResult {
                set: Some(a),
                expansion: None,
                n,
                provenance,
                claims,
                verified_by: Verification::Direct,
            });
        }
    }
    Err(verification_error(format!(
        "no middle start within {radius} of {f0} gives a +1 gap for {p1} over {p2} with balance below level {k}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: u32, d: u32) -> SignedPair {
        SignedPair::new(s, d)
    }

    #[test]
    fn sum_dominant_at_level_two() {
        let r = build_generalized_mstd(p(2, 0), p(1, 1), None).unwrap();
        let a = r.set();
        let sums = a.sumset(a).unwrap().len();
        let diffs = a.diffset(a).unwrap().len();
        assert_eq!(sums, diffs + 1);
        assert_eq!(r.provenance, "generalized.more-sums");
    }

    #[test]
    fn fewer_sums_case_uses_an_offset_when_needed() {
        let r = build_generalized_mstd(p(3, 1), p(4, 0), None).unwrap();
        assert_eq!(r.claims[0].gap, 1);
        assert!(r.claims.iter().skip(1).all(|c| c.gap == 0));
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(build_generalized_mstd(p(2, 0), p(2, 1), None).is_err());
        assert!(build_generalized_mstd(p(3, 1), p(1, 3), None).is_err());
        assert!(build_generalized_mstd(p(1, 0), p(0, 1), None).is_err());
    }
}
