//! Deterministic builders for sets with prescribed signed-sumset cardinalities.
//!
//! Every builder verifies its claims by exact evaluation before returning, so a returned
//! [`ConstructionResult`] is a checked fact rather than a promise.

mod arbdiff;
mod chain;
mod embed;
mod expansion;
mod fringe;
mod generalized;
mod supernice;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcore::{IntSet, SignedPair};

pub use arbdiff::{build_arbitrary_difference, ArbDiffSpec};
pub use chain::{build_chain, build_k_generational, build_simultaneous, ChainLevel, ChainSpec};
pub use embed::{embed_random_middle, EmbedSpec, MiddleFill};
pub use expansion::{base_expand, base_expand_multi, BaseExpansion};
pub use fringe::{fringe_pair, predicted_xlyr, FringePair};
pub use generalized::build_generalized_mstd;
pub use supernice::build_supernice;

/// `|lhs A| - |rhs A| = gap`, with both cardinalities recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub lhs: SignedPair,
    pub rhs: SignedPair,
    pub gap: i128,
    pub lhs_card: u128,
    pub rhs_card: u128,
}

impl Claim {
    fn measure(oracle: &mut impl CardOracle, lhs: SignedPair, rhs: SignedPair) -> Result<Claim> {
        let lhs_card = oracle.card(lhs)?;
        let rhs_card = oracle.card(rhs)?;
        Ok(Claim { lhs, rhs, gap: lhs_card as i128 - rhs_card as i128, lhs_card, rhs_card })
    }
}

/// How the claims of a result were checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    /// Signed combinations of the materialized set were computed directly.
    Direct,
    /// Each combination was computed exactly as the radix sum of the digit combinations.
    Digitwise,
    /// Cardinalities were multiplied across digits after checking every digit combination
    /// fits strictly inside one radix step, which makes the digit decomposition unique.
    CertifiedProduct,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionResult {
    /// The set itself; `None` when it is too large to list and only `expansion` describes it.
    pub set: Option<IntSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expansion: Option<BaseExpansion>,
    pub n: i64,
    pub provenance: String,
    pub claims: Vec<Claim>,
    pub verified_by: Verification,
}

impl ConstructionResult {
    /// The materialized set. Panics for results that only carry an expansion.
    pub fn set(&self) -> &IntSet {
        self.set.as_ref().expect("result carries only a base expansion")
    }

    pub fn claim(&self, lhs: SignedPair, rhs: SignedPair) -> Option<&Claim> {
        self.claims.iter().find(|c| c.lhs == lhs && c.rhs == rhs)
    }
}

/// Anything that can report `|sX - dX|` for a fixed `X`.
pub trait CardOracle {
    fn card(&mut self, p: SignedPair) -> Result<u128>;
}

/// Exact cardinalities of signed combinations of one set, with `jA` cached.
pub struct Combos<'a> {
    base: &'a IntSet,
    iters: Vec<IntSet>,
    cards: HashMap<SignedPair, u128>,
}

impl<'a> Combos<'a> {
    pub fn new(base: &'a IntSet) -> Combos<'a> {
        Combos { base, iters: vec![IntSet::empty(), base.clone()], cards: HashMap::new() }
    }

    pub fn iterate(&mut self, j: u32) -> Result<&IntSet> {
        while self.iters.len() <= j as usize {
            let next = self.iters.last().unwrap().sumset(self.base)?;
            self.iters.push(next);
        }
        Ok(&self.iters[j as usize])
    }

    pub fn combo(&mut self, p: SignedPair) -> Result<IntSet> {
        let p = p.normalized();
        self.iterate(p.s)?;
        if p.d == 0 {
            return Ok(self.iters[p.s as usize].clone());
        }
        self.iters[p.s as usize].diffset(&self.iters[p.d as usize])
    }
}

impl CardOracle for Combos<'_> {
    fn card(&mut self, p: SignedPair) -> Result<u128> {
        let p = p.normalized();
        if let Some(&c) = self.cards.get(&p) {
            return Ok(c);
        }
        let c = self.combo(p)?.len() as u128;
        self.cards.insert(p, c);
        Ok(c)
    }
}

/// First level `2 <= j < below` at which two pairs disagree, if any.
pub(crate) fn first_unbalanced(
    oracle: &mut impl CardOracle,
    below: u32,
) -> Result<Option<(SignedPair, SignedPair)>> {
    for j in 2..below {
        if let Some(pair) = level_disagreement(oracle, j)? {
            return Ok(Some(pair));
        }
    }
    Ok(None)
}

/// Two pairs at level `j` with different cardinalities, if any.
pub(crate) fn level_disagreement(
    oracle: &mut impl CardOracle,
    j: u32,
) -> Result<Option<(SignedPair, SignedPair)>> {
    let pairs = SignedPair::at_level(j);
    let first = oracle.card(pairs[0])?;
    for &p in &pairs[1..] {
        if oracle.card(p)? != first {
            return Ok(Some((pairs[0], p)));
        }
    }
    Ok(None)
}

/// Claims that every pair at each level `2 <= j < below` matches the first pair at that level.
pub(crate) fn balance_claims(oracle: &mut impl CardOracle, below: u32) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for j in 2..below {
        let pairs = SignedPair::at_level(j);
        for &p in &pairs[1..] {
            out.push(Claim::measure(oracle, pairs[0], p)?);
        }
    }
    Ok(out)
}

pub(crate) fn verification_error(what: impl Into<String>) -> Error {
    Error::Verification(what.into())
}

/// Rejects level-`k` pair lists that are not valid inputs for a comparison at one level.
pub(crate) fn check_same_level(p1: SignedPair, p2: SignedPair) -> Result<u32> {
    let k = p1.level();
    if k != p2.level() {
        return crate::error::domain(format!("pairs {p1} and {p2} lie on different levels"));
    }
    if k < 2 {
        return crate::error::domain("comparisons need level at least 2");
    }
    if p1.same_unordered(p2) {
        return crate::error::domain(format!("pairs {p1} and {p2} name the same combination"));
    }
    Ok(k)
}
