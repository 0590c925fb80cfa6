use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result, UnsupportedCase};
use crate::setcore::{IntSet, SignedPair};

use super::{CardOracle, Claim, Combos, ConstructionResult, Verification};

/// Target: `|aA - bA| = qn + 1 - m` and `|cA - dA| = qn + 1 - ell` with `q = a + b = c + d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArbDiffSpec {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub m: u32,
    pub ell: u32,
}

impl ArbDiffSpec {
    pub fn q(&self) -> u32 {
        self.a + self.b
    }

    /// `m / (c - d)` rounded up to a whole step, or `None` when `c = d`.
    pub fn delta(&self) -> Option<u32> {
        let (c, d) = (self.c.max(self.d), self.c.min(self.d));
        (c != d).then(|| self.m.div_ceil(c - d))
    }

    /// Checks the invariants and orients `(c, d)` so that `c >= d`.
    pub fn normalized(&self) -> Result<ArbDiffSpec> {
        let mut s = *self;
        if s.c < s.d {
            std::mem::swap(&mut s.c, &mut s.d);
        }
        if s.a <= s.b {
            return domain(format!("need a > b, got a = {}, b = {}", s.a, s.b));
        }
        if s.a + s.b != s.c + s.d {
            return domain("need a + b = c + d");
        }
        if s.a <= s.c {
            return domain(format!("need a > max(c, d), got a = {}, c = {}, d = {}", s.a, s.c, s.d));
        }
        if s.ell > 2 * s.m {
            return domain(format!("need ell <= 2m, got ell = {}, m = {}", s.ell, s.m));
        }
        if s.c == s.d && s.ell % 2 == 1 {
            return domain("when c = d the second deficit ell must be even");
        }
        Ok(s)
    }
}

/// `[lo, hi]` appended to `out` (nothing when `lo > hi`).
fn push_range(out: &mut Vec<i64>, lo: i64, hi: i64) {
    out.extend(lo..=hi);
}

/// `L ∪ [f, n-f] ∪ (n-R)`.
fn assemble(left: &[i64], right: &[i64], f: i64, n: i64) -> IntSet {
    let mut elems = left.to_vec();
    push_range(&mut elems, f, n - f);
    elems.extend(right.iter().map(|x| n - x));
    IntSet::from_unsorted(elems)
}

/// Fringes `L = [0, 2D] ∪ [2D+g+1, 3D] ∪ {4D}` plus the first `fill` elements of the gap,
/// and `R = (L + sigma) ∪ [0, sigma-1]`; span `n = 2f + 4D + sigma + 1`.
fn gapped(dd: i64, g: i64, sigma: i64, fill: i64, f: i64) -> (IntSet, i64) {
    let mut left = Vec::new();
    push_range(&mut left, 0, 2 * dd + fill);
    push_range(&mut left, 2 * dd + g + 1, 3 * dd);
    left.push(4 * dd);
    let mut right: Vec<i64> = left.iter().map(|x| x + sigma).collect();
    push_range(&mut right, 0, sigma - 1);
    let n = 2 * f + 4 * dd + sigma + 1;
    (assemble(&left, &right, f, n), n)
}

/// A set realizing prescribed deficits for two combinations at one level.
///
/// * `(2k, 0)` against `(k, k)`: fringes `[0, 4m'] ∪ [5m'+1, 6m'] ∪ {8m'}` and its shift by
///   `m'/k`, with `m'` the next multiple of `k`; the first `m' - m` gap elements are filled
///   and the middle is extended by `m - ell/2` on each side.
/// * `c ≠ d` and `c - d <= d - b`: the same fringe shape with block `D = (a-b)·m'/(c-d)`,
///   shifted by `m'/(c-d)`; the middle is extended one element at a time until both
///   deficits are met.
/// * Everything else: gap width and shift both equal to `m`, block `D = (a-b)m + m`; the
///   middle start is chosen so the deficit of `cA - dA` comes out to `ell`.
///
/// Cases no family reaches come back as [`Error::Unsupported`].
pub fn build_arbitrary_difference(spec: &ArbDiffSpec) -> Result<ConstructionResult> {
    let s = spec.normalized()?;
    let (a, b, c, d) = (s.a as i64, s.b as i64, s.c as i64, s.d as i64);
    let (m, ell, q) = (s.m as i64, s.ell as i64, s.q() as i64);
    let lhs = SignedPair::new(s.a, s.b);
    let rhs = SignedPair::new(s.c, s.d);
    let check = |set: IntSet, n: i64, provenance: String| -> Result<Option<ConstructionResult>> {
        let mut oracle = Combos::new(&set);
        let claim = Claim::measure(&mut oracle, lhs, rhs)?;
        let full = (q * n + 1) as u128;
        if claim.lhs_card + m as u128 != full || claim.rhs_card + ell as u128 != full {
            return Ok(None);
        }
        Ok(Some(ConstructionResult {
            set: Some(set),
            expansion: None,
            n,
            provenance,
            claims: vec![claim],
            verified_by: Verification::Direct,
        }))
    };

    if m == 0 {
        let n = 2 * q;
        return check(IntSet::interval(0, n)?, n, "arbdiff.interval".into())?
            .ok_or_else(|| unsupported(&s, "the interval does not realize zero deficits"));
    }

    if b == 0 && c == d && a == 2 * c {
        let k = c;
        let mp = (m + k - 1) / k * k;
        let sh = mp / k;
        let fill = mp - m;
        let mut left = Vec::new();
        push_range(&mut left, 0, 4 * mp + fill);
        push_range(&mut left, 5 * mp + 1, 6 * mp);
        left.push(8 * mp);
        let mut right: Vec<i64> = left.iter().map(|x| x + sh).collect();
        push_range(&mut right, 0, sh - 1);
        let f_full = 16 * k * mp - 2 * mp + 1;
        let ext = m - ell / 2;
        let n = 2 * f_full + 16 * mp + 1;
        let set = assemble(&left, &right, f_full - ext, n);
        let provenance = format!("arbdiff.sums-vs-balanced (gap fill {fill}, middle extension {ext})");
        if let Some(r) = check(set, n, provenance)? {
            return Ok(r);
        }
    }

    if c != d && c - d <= d - b {
        let cd = c - d;
        let mp = (m + cd - 1) / cd * cd;
        let delta = mp / cd;
        let dd = (a - b) * delta;
        let f0 = 4 * dd * q + delta * a - 2 * dd + 1;
        for e in 0..=dd {
            let (set, n) = gapped(dd, mp, delta, mp - m, f0 - e);
            let mut oracle = Combos::new(&set);
            let got = oracle.card(lhs)?;
            if got + m as u128 != (q * n + 1) as u128 {
                break;
            }
            let provenance = format!("arbdiff.shifted-fringe (step {delta}, middle extension {e})");
            if let Some(r) = check(set, n, provenance)? {
                return Ok(r);
            }
        }
    }

    let sigma = m;
    let dd = (a - b) * sigma + m;
    for t in 0..=((a - b) * sigma - m).max(0) {
        let u = b * sigma + m + t;
        let deficit: i64 = [c, d].iter().map(|&y| (u - y * sigma).clamp(0, m)).sum();
        if deficit != ell {
            continue;
        }
        let f = q * 4 * dd + u - 2 * dd + 1;
        let (set, n) = gapped(dd, m, sigma, 0, f);
        let provenance = format!("arbdiff.gap-width (middle offset {t})");
        if let Some(r) = check(set, n, provenance)? {
            return Ok(r);
        }
    }
    Err(unsupported(&s, "no implemented fringe family realizes both deficits"))
}

fn unsupported(s: &ArbDiffSpec, why: &str) -> Error {
    Error::Unsupported(UnsupportedCase {
        construction: "arbitrary-difference",
        reason: format!(
            "({},{}) vs ({},{}) with m = {}, ell = {}: {why}",
            s.a, s.b, s.c, s.d, s.m, s.ell
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: u32, b: u32, c: u32, d: u32, m: u32, ell: u32) -> ArbDiffSpec {
        ArbDiffSpec { a, b, c, d, m, ell }
    }

    fn deficits(r: &ConstructionResult, q: u32) -> (u128, u128) {
        let full = (q as i64 * r.n + 1) as u128;
        (full - r.claims[0].lhs_card, full - r.claims[0].rhs_card)
    }

    #[test]
    fn level_four_sums_against_balanced() {
        let r = build_arbitrary_difference(&spec(4, 0, 2, 2, 2, 4)).unwrap();
        assert_eq!(deficits(&r, 4), (2, 4));
        assert!(r.provenance.starts_with("arbdiff.sums-vs-balanced"));
        let r = build_arbitrary_difference(&spec(4, 0, 2, 2, 3, 2)).unwrap();
        assert_eq!(deficits(&r, 4), (3, 2));
    }

    #[test]
    fn level_three() {
        let r = build_arbitrary_difference(&spec(3, 0, 2, 1, 1, 2)).unwrap();
        assert_eq!(deficits(&r, 3), (1, 2));
    }

    #[test]
    fn shifted_fringe_branch() {
        let r = build_arbitrary_difference(&spec(6, 0, 4, 2, 4, 5)).unwrap();
        assert_eq!(deficits(&r, 6), (4, 5));
        assert!(r.provenance.starts_with("arbdiff.shifted-fringe"));
    }

    #[test]
    fn invalid_specs() {
        assert!(build_arbitrary_difference(&spec(2, 2, 3, 1, 1, 1)).is_err());
        assert!(build_arbitrary_difference(&spec(3, 1, 2, 2, 2, 3)).is_err());
        assert!(build_arbitrary_difference(&spec(3, 1, 2, 2, 2, 5)).is_err());
        assert!(build_arbitrary_difference(&spec(3, 1, 3, 1, 2, 2)).is_err());
    }

    #[test]
    fn zero_deficit_is_an_interval() {
        let r = build_arbitrary_difference(&spec(3, 1, 2, 2, 0, 0)).unwrap();
        assert_eq!(r.set().len() as i64, r.n + 1);
    }
}
