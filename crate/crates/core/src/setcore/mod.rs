//! Exact arithmetic on finite sets of integers.

mod dense;
pub mod io;
mod pair;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use dense::{dilate_by_interval, shift_or, words_for, Dense, MAX_DENSE_BITS};

pub use pair::{SignVector, SignedPair};

/// Sum counts at or below this go straight to pairwise enumeration.
const PAIRWISE_SMALL: u128 = 1 << 11;
/// Hard ceiling on pairwise enumeration (entries of the scratch vector).
const PAIRWISE_MAX: u128 = 1 << 27;
/// Sets with fewer elements than this are always stored sorted.
const DENSE_MIN_LEN: usize = 16;

/// A finite set of `i64`, stored either as a sorted vector or as a bitset over `[min, max]`.
#[derive(Clone)]
pub struct IntSet {
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Sparse(Vec<i64>),
    Dense(Dense),
}

impl IntSet {
    pub fn empty() -> IntSet {
        IntSet { repr: Repr::Sparse(Vec::new()) }
    }

    pub fn singleton(x: i64) -> IntSet {
        IntSet { repr: Repr::Sparse(vec![x]) }
    }

    /// Strict constructor: the elements must already be strictly increasing.
    pub fn new(elems: Vec<i64>) -> Result<IntSet> {
        if let Some(i) = elems.windows(2).position(|w| w[0] >= w[1]) {
            let what = if elems[i] == elems[i + 1] { "duplicate" } else { "unsorted" };
            return domain(format!(
                "{what} element {} at index {}",
                elems[i + 1],
                i + 1
            ));
        }
        Ok(IntSet::from_sorted(elems))
    }

    /// Sorts and removes duplicates.
    pub fn from_unsorted(mut elems: Vec<i64>) -> IntSet {
        elems.sort_unstable();
        elems.dedup();
        IntSet::from_sorted(elems)
    }

    /// `[a, b]`.
    pub fn interval(a: i64, b: i64) -> Result<IntSet> {
        if a > b {
            return domain(format!("interval [{a}, {b}] is empty"));
        }
        let nbits = (b as i128 - a as i128 + 1) as u128;
        if nbits < DENSE_MIN_LEN as u128 {
            return Ok(IntSet::from_sorted((a..=b).collect()));
        }
        if nbits > MAX_DENSE_BITS as u128 {
            return Err(Error::Budget { what: "interval length", requested: nbits, limit: MAX_DENSE_BITS as u128 });
        }
        let nbits = nbits as u64;
        let mut words = vec![!0u64; words_for(nbits)];
        if !nbits.is_multiple_of(64) {
            *words.last_mut().unwrap() = (1u64 << (nbits % 64)) - 1;
        }
        Ok(IntSet {
            repr: Repr::Dense(Dense { offset: a, nbits, words, count: nbits as usize }),
        })
    }

    pub(crate) fn from_sorted(elems: Vec<i64>) -> IntSet {
        if elems.len() >= DENSE_MIN_LEN {
            let span = (*elems.last().unwrap() as i128 - elems[0] as i128 + 1) as u128;
            if span <= 64 * elems.len() as u128 {
                return IntSet { repr: Repr::Dense(Dense::from_sorted(&elems)) };
            }
        }
        IntSet { repr: Repr::Sparse(elems) }
    }

    fn from_dense(d: Dense) -> IntSet {
        if d.count < DENSE_MIN_LEN || d.nbits > 64 * d.count as u64 {
            let elems = d.positions().map(|p| d.offset + p as i64).collect();
            return IntSet { repr: Repr::Sparse(elems) };
        }
        IntSet { repr: Repr::Dense(d) }
    }

    /// Bitset with offset `lo` built from raw words; empty if no bit is set.
    pub(crate) fn from_words(lo: i64, words: Vec<u64>) -> IntSet {
        Dense::from_raw(lo, words).map_or_else(IntSet::empty, IntSet::from_dense)
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Sparse(v) => v.len(),
            Repr::Dense(d) => d.count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn min(&self) -> Option<i64> {
        match &self.repr {
            Repr::Sparse(v) => v.first().copied(),
            Repr::Dense(d) => Some(d.offset),
        }
    }

    pub fn max(&self) -> Option<i64> {
        match &self.repr {
            Repr::Sparse(v) => v.last().copied(),
            Repr::Dense(d) => Some(d.offset + (d.nbits - 1) as i64),
        }
    }

    /// `max - min + 1`, or 0 for the empty set.
    pub fn span(&self) -> u64 {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => (hi as i128 - lo as i128 + 1) as u64,
            _ => 0,
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        match &self.repr {
            Repr::Sparse(v) => v.binary_search(&x).is_ok(),
            Repr::Dense(d) => {
                let p = x as i128 - d.offset as i128;
                p >= 0 && d.test(p as u64)
            }
        }
    }

    pub fn iter(&self) -> Iter<'_> {
        match &self.repr {
            Repr::Sparse(v) => Iter(IterRepr::Sparse(v.iter())),
            Repr::Dense(d) => Iter(IterRepr::Dense { offset: d.offset, bits: d.positions() }),
        }
    }

    pub fn to_vec(&self) -> Vec<i64> {
        match &self.repr {
            Repr::Sparse(v) => v.clone(),
            Repr::Dense(_) => self.iter().collect(),
        }
    }

    /// `A + B`.
    pub fn sumset(&self, other: &IntSet) -> Result<IntSet> {
        let (Some(a0), Some(b0)) = (self.min(), other.min()) else {
            return Ok(IntSet::empty());
        };
        let lo = a0.checked_add(b0).ok_or(Error::Overflow("sumset"))?;
        let hi = self
            .max()
            .unwrap()
            .checked_add(other.max().unwrap())
            .ok_or(Error::Overflow("sumset"))?;
        let span = (hi as i128 - lo as i128 + 1) as u128;
        let pairs = self.len() as u128 * other.len() as u128;
        let too_wide = span > MAX_DENSE_BITS as u128;
        if pairs <= PAIRWISE_SMALL || too_wide || span / 64 > 16 * pairs {
            if pairs > PAIRWISE_MAX {
                return Err(Error::Budget { what: "pairwise sum count", requested: pairs, limit: PAIRWISE_MAX });
            }
            return Ok(self.pairwise_sum(other));
        }
        Ok(dense_sumset(self, other, lo, span as u64))
    }

    fn pairwise_sum(&self, other: &IntSet) -> IntSet {
        let bs = other.to_vec();
        let mut out = Vec::with_capacity(self.len() * bs.len());
        for a in self.iter() {
            out.extend(bs.iter().map(|&b| a + b));
        }
        IntSet::from_unsorted(out)
    }

    /// `A - B`.
    pub fn diffset(&self, other: &IntSet) -> Result<IntSet> {
        self.sumset(&other.negate()?)
    }

    /// `-A`.
    pub fn negate(&self) -> Result<IntSet> {
        match &self.repr {
            Repr::Sparse(v) => {
                let out = v
                    .iter()
                    .rev()
                    .map(|x| x.checked_neg().ok_or(Error::Overflow("negate")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(IntSet { repr: Repr::Sparse(out) })
            }
            Repr::Dense(d) => {
                let top = d.offset as i128 + d.nbits as i128 - 1;
                if -top < i64::MIN as i128 || d.offset == i64::MIN {
                    return Err(Error::Overflow("negate"));
                }
                Ok(IntSet { repr: Repr::Dense(d.negated()) })
            }
        }
    }

    /// `m·A = {m·a}`.
    pub fn dilate(&self, m: i64) -> Result<IntSet> {
        if self.is_empty() {
            return Ok(IntSet::empty());
        }
        if m == 0 {
            return Ok(IntSet::singleton(0));
        }
        let mut out = self
            .iter()
            .map(|x| x.checked_mul(m).ok_or(Error::Overflow("dilate")))
            .collect::<Result<Vec<_>>>()?;
        if m < 0 {
            out.reverse();
        }
        Ok(IntSet::from_sorted(out))
    }

    /// `A + t`.
    pub fn translate(&self, t: i64) -> Result<IntSet> {
        if self.is_empty() {
            return Ok(IntSet::empty());
        }
        for end in [self.min().unwrap(), self.max().unwrap()] {
            end.checked_add(t).ok_or(Error::Overflow("translate"))?;
        }
        Ok(match &self.repr {
            Repr::Sparse(v) => IntSet { repr: Repr::Sparse(v.iter().map(|x| x + t).collect()) },
            Repr::Dense(d) => {
                let mut d = d.clone();
                d.offset += t;
                IntSet { repr: Repr::Dense(d) }
            }
        })
    }

    /// `n - A`.
    pub fn reflect(&self, n: i64) -> Result<IntSet> {
        self.negate()?.translate(n)
    }

    /// `mA = A + ... + A` (m copies); `0A` is empty.
    pub fn iterate(&self, m: u64) -> Result<IntSet> {
        let mut acc: Option<IntSet> = None;
        let mut power = self.clone();
        let mut rest = m;
        while rest > 0 {
            if rest & 1 == 1 {
                acc = Some(match acc {
                    None => power.clone(),
                    Some(a) => a.sumset(&power)?,
                });
            }
            rest >>= 1;
            if rest > 0 {
                power = power.sumset(&power)?;
            }
        }
        Ok(acc.unwrap_or_else(IntSet::empty))
    }

    /// `sA - dA`.
    pub fn signed_combo(&self, p: SignedPair) -> Result<IntSet> {
        if p.level() == 0 {
            return domain("the combination 0A - 0A is not defined");
        }
        if p.d == 0 {
            return self.iterate(p.s as u64);
        }
        let minus = self.iterate(p.d as u64)?.negate()?;
        if p.s == 0 {
            return Ok(minus);
        }
        self.iterate(p.s as u64)?.sumset(&minus)
    }

    pub fn eval_sign_vector(&self, v: &SignVector) -> Result<IntSet> {
        self.signed_combo(v.to_pair())
    }
}

/// Bitset sumset. Picks which operand is held as a bitset and whether the other one is
/// applied element by element or run by run, whichever touches fewer words.
fn dense_sumset(a: &IntSet, b: &IntSet, lo: i64, span: u64) -> IntSet {
    let plan_a = Plan::new(a, b);
    let plan_b = Plan::new(b, a);
    let plan = if plan_a.cost <= plan_b.cost { plan_a } else { plan_b };
    let base_words = plan.base_words();
    let base_nbits = plan.base.span();
    let mut out = vec![0u64; words_for(span)];
    match plan.runs {
        None => {
            let s0 = plan.shifter.min().unwrap();
            for y in plan.shifter.iter() {
                shift_or(&mut out, &base_words, (y - s0) as u64);
            }
        }
        Some(mut runs) => {
            runs.sort_unstable_by_key(|&(start, len)| (len, start));
            let mut i = 0;
            while i < runs.len() {
                let len = runs[i].1;
                let dilated = if len == 1 {
                    base_words.clone()
                } else {
                    dilate_by_interval(&base_words, base_nbits, len)
                };
                while i < runs.len() && runs[i].1 == len {
                    shift_or(&mut out, &dilated, runs[i].0);
                    i += 1;
                }
            }
        }
    }
    IntSet::from_words(lo, out)
}

struct Plan<'a> {
    base: &'a IntSet,
    shifter: &'a IntSet,
    runs: Option<Vec<(u64, u64)>>,
    cost: u128,
}

impl<'a> Plan<'a> {
    fn new(base: &'a IntSet, shifter: &'a IntSet) -> Plan<'a> {
        let bw = words_for(base.span()) as u128;
        let elem_cost = shifter.len() as u128 * bw;
        let runs = shifter.runs();
        let mut lens: Vec<u64> = runs.iter().map(|r| r.1).collect();
        lens.sort_unstable();
        lens.dedup();
        let dilation_cost: u128 = lens
            .iter()
            .filter(|&&l| l > 1)
            .map(|&l| (64 - l.leading_zeros()) as u128 * (bw + l as u128 / 64 + 1))
            .sum();
        let run_cost = runs.len() as u128 * (bw + 1) + dilation_cost;
        if run_cost < elem_cost {
            Plan { base, shifter, runs: Some(runs), cost: run_cost }
        } else {
            Plan { base, shifter, runs: None, cost: elem_cost }
        }
    }

    fn base_words(&self) -> Vec<u64> {
        match &self.base.repr {
            Repr::Dense(d) => d.words.clone(),
            Repr::Sparse(v) => Dense::from_sorted(v).words,
        }
    }
}

impl IntSet {
    /// Maximal runs of consecutive elements as `(start - min, len)`.
    fn runs(&self) -> Vec<(u64, u64)> {
        match &self.repr {
            Repr::Dense(d) => d.runs(),
            Repr::Sparse(v) => {
                let mut out: Vec<(u64, u64)> = Vec::new();
                let Some(&first) = v.first() else { return out };
                for &x in v {
                    let p = (x as i128 - first as i128) as u64;
                    match out.last_mut() {
                        Some((s, l)) if *s + *l == p => *l += 1,
                        _ => out.push((p, 1)),
                    }
                }
                out
            }
        }
    }
}

/// Ascending iterator over the elements of an [`IntSet`].
pub struct Iter<'a>(IterRepr<'a>);

enum IterRepr<'a> {
    Sparse(std::slice::Iter<'a, i64>),
    Dense { offset: i64, bits: dense::BitIter<'a> },
}

impl Iterator for Iter<'_> {
    type Item = i64;

    #[inline]
    fn next(&mut self) -> Option<i64> {
        match &mut self.0 {
            IterRepr::Sparse(it) => it.next().copied(),
            IterRepr::Dense { offset, bits } => bits.next().map(|p| *offset + p as i64),
        }
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = i64;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl PartialEq for IntSet {
    fn eq(&self, other: &IntSet) -> bool {
        self.len() == other.len() && self.min() == other.min() && self.iter().eq(other.iter())
    }
}

impl Eq for IntSet {}

impl Default for IntSet {
    fn default() -> Self {
        IntSet::empty()
    }
}

impl FromIterator<i64> for IntSet {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        IntSet::from_unsorted(iter.into_iter().collect())
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Comma-separated text form, e.g. `0,1,3,5`.
impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        IntSet::new(v).map_err(serde::de::Error::custom)
    }
}

/// Free-function spellings of the set operations.
pub fn sumset(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    a.sumset(b)
}

pub fn diffset(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    a.diffset(b)
}

pub fn dilate(m: i64, a: &IntSet) -> Result<IntSet> {
    a.dilate(m)
}

pub fn iterate(m: u64, a: &IntSet) -> Result<IntSet> {
    a.iterate(m)
}

pub fn signed_combo(p: SignedPair, a: &IntSet) -> Result<IntSet> {
    a.signed_combo(p)
}

pub fn eval_sign_vector(v: &SignVector, a: &IntSet) -> Result<IntSet> {
    a.eval_sign_vector(v)
}

pub fn translate(a: &IntSet, t: i64) -> Result<IntSet> {
    a.translate(t)
}

pub fn reflect(n: i64, a: &IntSet) -> Result<IntSet> {
    a.reflect(n)
}

pub fn interval(a: i64, b: i64) -> Result<IntSet> {
    IntSet::interval(a, b)
}
