use crate::error::{domain, Result};
use crate::setcore::{IntSet, SignedPair};

use super::generalized::{fringed_interval, offsets};
use super::{fringe_pair, verification_error, Claim, Combos, ConstructionResult, Verification};

/// Smallest span the level-`k` builder for `(s, d)` starts from.
pub(crate) fn minimal_span(k: u32, s: u32, d: u32) -> i64 {
    let base = 2 * (k as i64) * (k as i64) + 1;
    if s > d && d >= 1 {
        4 * (2 * base - d as i64 - s as i64) + 1
    } else {
        4 * base + 1
    }
}

/// `L ∪ (L+o) ∪ [f, n-f] ∪ (n-o-R) ∪ (n-R)`.
fn double_fringed(k: u32, o: i64, f: i64, n: i64) -> Result<IntSet> {
    let fr = fringe_pair(k)?;
    if n - f < f {
        return domain(format!("middle [{f}, {}] is empty", n - f));
    }
    let mut elems = Vec::new();
    for x in fr.left.iter() {
        elems.extend([x, x + o]);
    }
    elems.extend(f..=n - f);
    for x in fr.right.iter() {
        elems.extend([n - o - x, n - x]);
    }
    Ok(IntSet::from_unsorted(elems))
}

/// A set where `|sA - dA|` beats every other combination at level `k = s + d` by exactly one.
///
/// `d = 0` and `s = d` use a single fringe on each side; `s > d >= 1` doubles each fringe,
/// with the inner copies shifted by `2k^2 + 1 - d`. The pair is taken unordered.
pub fn build_supernice(k: u32, s: u32, d: u32, n: Option<i64>) -> Result<ConstructionResult> {
    if s + d != k {
        return domain(format!("pair ({s},{d}) is not at level {k}"));
    }
    if k < 2 {
        return domain("supernice sets need level at least 2");
    }
    let target = SignedPair::new(s, d).normalized();
    let (s, d) = (target.s, target.d);
    let base = 2 * (k as i64) * (k as i64) + 1;
    let n0 = minimal_span(k, s, d);
    let spans: Vec<i64> = match n {
        Some(n) => vec![n],
        None => (0..4).map(|i| n0 + i * base).collect(),
    };
    let others: Vec<SignedPair> =
        SignedPair::at_level(k).into_iter().filter(|&q| q != target).collect();
    let (branch, f0) = if s > d && d >= 1 {
        ("double-fringe", 2 * base - d as i64 - s as i64)
    } else if d == 0 {
        ("sums-only", base)
    } else {
        ("balanced-pair", base - d as i64)
    };
    let radius = 2 * k as i64 + 2;
    for &n in &spans {
        for delta in offsets(radius) {
            let f = f0 + delta;
            if f < 1 || 2 * f > n {
                continue;
            }
            let a = if branch == "double-fringe" {
                double_fringed(k, base - d as i64, f, n)?
            } else {
                fringed_interval(k, f, n)?
            };
            let mut oracle = Combos::new(&a);
            let claims = others
                .iter()
                .map(|&q| Claim::measure(&mut oracle, target, q))
                .collect::<Result<Vec<_>>>()?;
            if claims.iter().all(|c| c.gap == 1) {
                let provenance = if delta == 0 {
                    format!("supernice.{branch}")
                } else {
                    format!("supernice.{branch} (middle start shifted by {delta:+})")
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
    }
    Err(verification_error(format!(
        "no supernice set found for ({s},{d}) at level {k} near the nominal middle start {f0}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_two() {
        let r = build_supernice(2, 2, 0, None).unwrap();
        assert_eq!(r.claims.len(), 1);
        assert_eq!(r.claims[0].gap, 1);
        let r = build_supernice(2, 1, 1, None).unwrap();
        let a = r.set();
        assert_eq!(a.diffset(a).unwrap().len(), a.sumset(a).unwrap().len() + 1);
    }

    #[test]
    fn level_four_middle_pair() {
        let r = build_supernice(4, 3, 1, None).unwrap();
        assert_eq!(r.claims.len(), 2);
        assert!(r.claims.iter().all(|c| c.gap == 1));
        assert_eq!(r.provenance, "supernice.double-fringe");
    }

    #[test]
    fn unordered_pairs_are_accepted() {
        let a = build_supernice(3, 1, 2, None).unwrap();
        let b = build_supernice(3, 2, 1, None).unwrap();
        assert_eq!(a.set(), b.set());
    }
}
