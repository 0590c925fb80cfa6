use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::setcore::{IntSet, SignedPair};

use super::supernice::minimal_span;
use super::{
    build_generalized_mstd, build_supernice, verification_error, BaseExpansion, CardOracle,
    Claim, Combos, ConstructionResult, Verification,
};

/// Expansions with more elements than this are returned in factored form only.
const MATERIALIZE_LIMIT: u128 = 1 << 24;
/// Direct evaluation is used while `level bound × span` stays below this many bits.
const DIRECT_LIMIT: u128 = 1 << 22;
/// Digitwise evaluation is used while `level bound × max` stays below this many bits.
const DIGITWISE_LIMIT: u128 = 1 << 33;

/// One constrained level: `|wins A| > |loses A|`, both pairs at the same level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLevel {
    pub wins: SignedPair,
    pub loses: SignedPair,
}

impl ChainLevel {
    pub fn new(x: u32, y: u32, w: u32, z: u32) -> ChainLevel {
        ChainLevel { wins: SignedPair::new(x, y), loses: SignedPair::new(w, z) }
    }

    pub fn level(&self) -> u32 {
        self.wins.level()
    }
}

/// Constraints on levels `2..=k`; levels without a constraint are left free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub k: u32,
    pub levels: Vec<ChainLevel>,
}

impl ChainSpec {
    pub fn validate(&self) -> Result<()> {
        let mut seen = Vec::new();
        for c in &self.levels {
            let j = c.level();
            if c.loses.level() != j {
                return domain(format!("{} and {} lie on different levels", c.wins, c.loses));
            }
            if !(2..=self.k).contains(&j) {
                return domain(format!("level {j} is outside 2..={}", self.k));
            }
            if c.wins.same_unordered(c.loses) {
                return domain(format!("{} and {} name the same combination", c.wins, c.loses));
            }
            if seen.contains(&j) {
                return domain(format!("level {j} is constrained twice"));
            }
            seen.push(j);
        }
        Ok(())
    }
}

/// One set satisfying every level constraint at once, as a base expansion whose digit at
/// each constrained level is a +1-gap set for that level. Free levels get no digit.
pub fn build_chain(spec: &ChainSpec) -> Result<ConstructionResult> {
    spec.validate()?;
    if spec.levels.is_empty() {
        return Ok(ConstructionResult {
            set: Some(IntSet::singleton(0)),
            expansion: None,
            n: 0,
            provenance: "chain.empty".into(),
            claims: Vec::new(),
            verified_by: Verification::Direct,
        });
    }
    let mut factors = Vec::new();
    for c in &spec.levels {
        let built = build_generalized_mstd(c.wins, c.loses, None)?;
        factors.push((built.set().clone(), c.level()));
    }
    // A factor must not tilt any other constrained level, or the products could cancel.
    for (a, own) in &factors {
        let mut oracle = Combos::new(a);
        for c in spec.levels.iter().filter(|c| c.level() != *own) {
            if oracle.card(c.wins)? != oracle.card(c.loses)? {
                return Err(verification_error(format!(
                    "the level-{own} factor is unbalanced between {} and {}",
                    c.wins, c.loses
                )));
            }
        }
    }
    // Widest factors go to the low digits, which keeps the total span smallest.
    factors.sort_by_key(|(a, _)| std::cmp::Reverse(a.max()));
    let digits = factors.into_iter().map(|(a, _)| a).collect();
    let exp = BaseExpansion::new(digits, spec.k)?;
    let pairs: Vec<(SignedPair, SignedPair)> =
        spec.levels.iter().map(|c| (c.wins, c.loses)).collect();
    finish(exp, spec.k, &pairs, "chain.base-expansion".into())
}

/// A set `A` with `cA` sum-dominant for every `1 <= c <= k`: a chain over the even levels
/// `2c` comparing `(2c, 0)` with `(c, c)`.
pub fn build_k_generational(k: u32) -> Result<ConstructionResult> {
    if k == 0 {
        return domain("k-generational sets need k >= 1");
    }
    let spec = ChainSpec {
        k: 2 * k,
        levels: (1..=k).map(|c| ChainLevel::new(2 * c, 0, c, c)).collect(),
    };
    let mut r = build_chain(&spec)?;
    r.provenance = format!("k-generational.even-level-chain (k = {k})");
    Ok(r)
}

/// A set whose level-`k` combinations are strictly ordered as listed, last largest.
/// Pair `j` (1-based) contributes `j` copies of its supernice set as digits; all supernice
/// factors share one span so their cardinalities are comparable.
pub fn build_simultaneous(k: u32, pairs: &[SignedPair]) -> Result<ConstructionResult> {
    if pairs.is_empty() {
        return domain("at least one pair is required");
    }
    for (i, p) in pairs.iter().enumerate() {
        if p.level() != k {
            return domain(format!("pair {p} is not at level {k}"));
        }
        if pairs[..i].iter().any(|q| q.same_unordered(*p)) {
            return domain(format!("pair {p} is listed twice"));
        }
    }
    if pairs.len() as u32 > k / 2 + 1 {
        return domain(format!("at most {} distinct pairs exist at level {k}", k / 2 + 1));
    }
    if pairs.len() == 1 {
        let mut r = build_supernice(k, pairs[0].s, pairs[0].d, None)?;
        r.provenance = format!("simultaneous.single ({})", r.provenance);
        return Ok(r);
    }
    let n0 = pairs.iter().map(|p| minimal_span(k, p.s, p.d)).max().unwrap();
    let step = 2 * (k as i64) * (k as i64) + 1;
    let mut last_err = None;
    for n in (0..4).map(|i| n0 + i * step) {
        let mut digits = Vec::new();
        let mut ok = true;
        for (j, p) in pairs.iter().enumerate() {
            match build_supernice(k, p.s, p.d, Some(n)) {
                Ok(r) => digits.extend(std::iter::repeat_n(r.set().clone(), j + 1)),
                Err(e) => {
                    last_err = Some(e);
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let exp = BaseExpansion::new(digits, k)?;
        let chain: Vec<(SignedPair, SignedPair)> = pairs.windows(2).map(|w| (w[1], w[0])).collect();
        match finish(exp, k, &chain, format!("simultaneous.supernice-digits (factor span {n})")) {
            Ok(r) => return Ok(r),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| verification_error("no common span found")))
}

/// Chooses how to evaluate, measures every `(wins, loses)` claim and requires a positive gap.
fn finish(
    exp: BaseExpansion,
    level_bound: u32,
    claims_wanted: &[(SignedPair, SignedPair)],
    provenance: String,
) -> Result<ConstructionResult> {
    let max = exp.max_element()?;
    let materialized = if exp.digit_product() <= MATERIALIZE_LIMIT {
        Some(exp.materialize()?)
    } else {
        None
    };
    let single = exp.digits.len() == 1;
    let reach = level_bound as u128 * (max as u128 + 1);
    let verified_by = match &materialized {
        Some(_) if reach <= DIRECT_LIMIT || single => Verification::Direct,
        _ if reach <= DIGITWISE_LIMIT => Verification::Digitwise,
        _ => Verification::CertifiedProduct,
    };
    let claims = match (&materialized, verified_by) {
        (Some(c), Verification::Direct) => measure(&mut Combos::new(c), claims_wanted)?,
        _ => measure(&mut exp.oracle(verified_by), claims_wanted)?,
    };
    if let Some(bad) = claims.iter().find(|c| c.gap <= 0) {
        return Err(verification_error(format!(
            "{} does not exceed {} (gap {})",
            bad.lhs, bad.rhs, bad.gap
        )));
    }
    Ok(ConstructionResult {
        set: materialized,
        expansion: (!single).then_some(exp),
        n: max,
        provenance,
        claims,
        verified_by,
    })
}

fn measure(
    oracle: &mut impl CardOracle,
    wanted: &[(SignedPair, SignedPair)],
) -> Result<Vec<Claim>> {
    wanted.iter().map(|&(l, r)| Claim::measure(oracle, l, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_chain_is_zero() {
        let r = build_chain(&ChainSpec { k: 3, levels: vec![] }).unwrap();
        assert_eq!(r.set().to_vec(), vec![0]);
    }

    #[test]
    fn two_level_chain() {
        let spec = ChainSpec {
            k: 3,
            levels: vec![ChainLevel::new(2, 0, 1, 1), ChainLevel::new(2, 1, 3, 0)],
        };
        let r = build_chain(&spec).unwrap();
        let a = r.set();
        let mut direct = Combos::new(a);
        assert!(direct.card(SignedPair::new(2, 0)).unwrap() > direct.card(SignedPair::new(1, 1)).unwrap());
        assert!(direct.card(SignedPair::new(2, 1)).unwrap() > direct.card(SignedPair::new(3, 0)).unwrap());
    }

    #[test]
    fn spec_validation() {
        let bad = |levels| ChainSpec { k: 3, levels }.validate().is_err();
        assert!(bad(vec![ChainLevel::new(2, 0, 0, 2)]));
        assert!(bad(vec![ChainLevel::new(2, 0, 2, 1)]));
        assert!(bad(vec![ChainLevel::new(4, 0, 2, 2)]));
        assert!(bad(vec![ChainLevel::new(2, 0, 1, 1), ChainLevel::new(1, 1, 2, 0)]));
    }

    #[test]
    fn simultaneous_rejects_duplicates() {
        let p = SignedPair::new;
        assert!(build_simultaneous(4, &[p(3, 1), p(1, 3)]).is_err());
        assert!(build_simultaneous(4, &[p(3, 1), p(2, 1)]).is_err());
    }
}
