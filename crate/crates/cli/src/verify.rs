//! Oracle suites: every builder claim is recomputed by direct enumeration.

use std::ops::RangeInclusive;

use mstd_core::construct::{
    base_expand_multi, build_arbitrary_difference, build_generalized_mstd, fringe_pair,
    predicted_xlyr, ArbDiffSpec,
};
use mstd_core::{Error, IntSet, Result, SignedPair};
use rand::{Rng, SeedableRng};
use serde::Serialize;

#[derive(Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub cases: u64,
    pub passed: u64,
    /// Cases a builder declined with a structured unsupported error.
    pub unsupported: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SuiteReport {
    fn new(suite: &'static str) -> SuiteReport {
        SuiteReport { suite, ..Default::default() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(what());
            }
        }
    }
}

fn card(a: &IntSet, p: SignedPair) -> Result<usize> {
    Ok(a.signed_combo(p)?.len())
}

/// `xL + yR` against its closed form for every `k` and `x, y` in range with `x + y >= 1`.
pub fn xlyr(ks: RangeInclusive<u32>, xy: RangeInclusive<u32>) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("xLyR");
    for k in ks {
        let fr = fringe_pair(k)?;
        for x in xy.clone() {
            for y in xy.clone() {
                if x + y == 0 {
                    continue;
                }
                let actual = match (x, y) {
                    (0, _) => fr.right.iterate(y as u64)?,
                    (_, 0) => fr.left.iterate(x as u64)?,
                    _ => fr.left.iterate(x as u64)?.sumset(&fr.right.iterate(y as u64)?)?,
                };
                let predicted = predicted_xlyr(x, y, k)?;
                rep.record(actual == predicted, || {
                    format!("k = {k}, x = {x}, y = {y}: enumerated {actual:?}, predicted {predicted:?}")
                });
            }
        }
    }
    Ok(rep)
}

/// Random digit tuples: `|sC - dC|` equals the product of `|sA_j - dA_j|` for every
/// combination with `1 <= s + d <= level`.
pub fn basexp(trials: u64, level: u32, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("basexp");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let digits: Vec<IntSet> = (0..rng.gen_range(2..=3))
            .map(|_| {
                let span = rng.gen_range(1..=10);
                let mut elems = vec![0];
                elems.extend((1..=span).filter(|_| rng.gen_bool(0.5)));
                IntSet::from_unsorted(elems)
            })
            .collect();
        let c = base_expand_multi(&digits, level)?;
        for j in 1..=level {
            for p in SignedPair::at_level(j) {
                let whole = card(&c, p)?;
                let product: usize = digits.iter().map(|a| card(a, p)).product::<Result<usize>>()?;
                rep.record(whole == product, || {
                    format!("digits {digits:?}, {p}: |sC - dC| = {whole}, product {product}")
                });
            }
        }
    }
    Ok(rep)
}

/// Every ordered pair of distinct combinations at each level: the built set has gap
/// exactly +1 and is balanced at every lower level.
pub fn gap_one(ks: RangeInclusive<u32>) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("gap-one");
    for k in ks {
        let pairs = SignedPair::at_level(k);
        for &p1 in &pairs {
            for &p2 in pairs.iter().filter(|&&p| p != p1) {
                let r = build_generalized_mstd(p1, p2, None)?;
                let a = r.set();
                let gap = card(a, p1)? as i64 - card(a, p2)? as i64;
                let mut unbalanced = None;
                for j in 2..k {
                    let sizes: Vec<usize> =
                        SignedPair::at_level(j).into_iter().map(|p| card(a, p)).collect::<Result<_>>()?;
                    if sizes.iter().any(|&s| s != sizes[0]) {
                        unbalanced = Some(j);
                        break;
                    }
                }
                rep.record(gap == 1 && unbalanced.is_none(), || {
                    format!("{p1} vs {p2}: gap {gap}, unbalanced level {unbalanced:?}, set {a}")
                });
            }
        }
    }
    Ok(rep)
}

/// Every `(a, b, c, d)` with `a + b = c + d = 2h` for `h` in range, `m <= max_m` and `ell <= 2m`.
/// Returned sets are checked independently; declined cases are counted separately.
pub fn deficits(hs: RangeInclusive<u32>, max_m: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("deficits");
    for h in hs {
        let q = 2 * h;
        for a in 0..=q {
            let b = q - a;
            for c in (q.div_ceil(2))..a {
                let d = q - c;
                if a <= b {
                    continue;
                }
                for m in 0..=max_m {
                    for ell in 0..=2 * m {
                        let spec = ArbDiffSpec { a, b, c, d, m, ell };
                        if spec.normalized().is_err() {
                            continue;
                        }
                        match build_arbitrary_difference(&spec) {
                            Ok(r) => {
                                let s = r.set();
                                let full = q as i64 * r.n + 1;
                                let got = (
                                    full - card(s, SignedPair::new(a, b))? as i64,
                                    full - card(s, SignedPair::new(c, d))? as i64,
                                );
                                rep.record(got == (m as i64, ell as i64), || {
                                    format!("{spec:?}: deficits {got:?}, set {s}")
                                });
                            }
                            Err(Error::Unsupported(_)) => rep.unsupported += 1,
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}
