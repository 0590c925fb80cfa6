//! Classification, comparison tables, stabilization of `|kA|` and generational horizons.

use num_integer::Integer;
use serde::Serialize;

use crate::construct::{BaseExpansion, CardOracle, Combos};
use crate::error::{domain, Error, Result};
use crate::setcore::{IntSet, SignedPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    SumDominant,
    Balanced,
    DifferenceDominant,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::SumDominant => "sum_dominant",
            Classification::Balanced => "balanced",
            Classification::DifferenceDominant => "difference_dominant",
        }
    }
}

/// Compares `|A + A|` with `|A - A|`.
pub fn classify(a: &IntSet) -> Result<Classification> {
    if a.is_empty() {
        return domain("cannot classify the empty set");
    }
    let sums = a.sumset(a)?.len();
    let diffs = a.diffset(a)?.len();
    Ok(match sums.cmp(&diffs) {
        std::cmp::Ordering::Greater => Classification::SumDominant,
        std::cmp::Ordering::Equal => Classification::Balanced,
        std::cmp::Ordering::Less => Classification::DifferenceDominant,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetSummary {
    pub cardinality: usize,
    pub min: i64,
    pub max: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub pair: SignedPair,
    pub cardinality: usize,
}

/// `|lhs| - |rhs|` for two consecutive requested pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairGap {
    pub lhs: SignedPair,
    pub rhs: SignedPair,
    pub gap: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub set: SetSummary,
    pub rows: Vec<ComparisonRow>,
    pub gaps: Vec<PairGap>,
    pub classification: Classification,
}

pub fn compare(a: &IntSet, pairs: &[SignedPair]) -> Result<ComparisonReport> {
    if a.is_empty() {
        return domain("cannot compare combinations of the empty set");
    }
    let mut cache = Combos::new(a);
    let mut rows = Vec::with_capacity(pairs.len());
    for &p in pairs {
        if p.level() == 0 {
            return domain("every pair needs level at least 1");
        }
        rows.push(ComparisonRow { pair: p, cardinality: cache.card(p)? as usize });
    }
    let gaps = rows
        .windows(2)
        .map(|w| PairGap {
            lhs: w[0].pair,
            rhs: w[1].pair,
            gap: w[0].cardinality as i64 - w[1].cardinality as i64,
        })
        .collect();
    Ok(ComparisonReport {
        set: SetSummary { cardinality: a.len(), min: a.min().unwrap(), max: a.max().unwrap() },
        rows,
        gaps,
        classification: classify(a)?,
    })
}

/// `|kA| = k·slope - c` for every `k >= onset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub a1: i64,
    pub am: i64,
    /// gcd of the differences `a_i - a_1`.
    pub s: i64,
    pub slope: i64,
    pub c: i64,
    pub onset: u32,
    /// `(a_m - a_1) / s`.
    pub bound: i64,
    /// `|kA|` for `k = 1..=onset + slope`.
    pub sizes: Vec<u64>,
}

/// Translates the least element to 0 and divides by the gcd of the differences.
pub fn normalize(a: &IntSet) -> Result<(IntSet, i64)> {
    if a.len() < 2 {
        return domain("need at least two elements");
    }
    let a1 = a.min().unwrap();
    let g = a.iter().fold(0i64, |g, x| g.gcd(&(x - a1)));
    let b: Vec<i64> = a.iter().map(|x| (x - a1) / g).collect();
    Ok((IntSet::new(b)?, g))
}

/// Finds where `|kA|` becomes linear.
///
/// After normalization the slope is the new maximum. The onset is the least `k` such that
/// `|jA| = j·slope - C` holds for every `j` in `[k, k + slope]`; it is checked against
/// `(a_m - a_1)/s`.
pub fn stabilize(a: &IntSet) -> Result<StabilizationReport> {
    let (b, s) = normalize(a)?;
    let slope = b.max().unwrap();
    let bound = slope;
    let horizon = (bound + slope) as usize;
    let mut sizes: Vec<u64> = Vec::with_capacity(horizon);
    let mut cur = b.clone();
    sizes.push(cur.len() as u64);
    let onset = loop {
        let k = sizes.len();
        // `sizes[k - 1]` is |kB|; the window needs sizes up to index k - 1 + slope for each candidate.
        if let Some(n) = (1..=k).find(|&n| n + slope as usize <= k && linear_from(&sizes, n, slope)) {
            break n;
        }
        if k > horizon + 1 {
            return Err(Error::Verification(format!(
                "|kA| is not linear on any window starting at or below {bound}"
            )));
        }
        cur = cur.sumset(&b)?;
        sizes.push(cur.len() as u64);
    };
    let c = onset as i64 * slope - sizes[onset - 1] as i64;
    if onset as i64 > bound {
        return Err(Error::Verification(format!(
            "onset {onset} exceeds the bound (a_m - a_1)/s = {bound}"
        )));
    }
    sizes.truncate(onset + slope as usize);
    Ok(StabilizationReport {
        a1: a.min().unwrap(),
        am: a.max().unwrap(),
        s,
        slope,
        c,
        onset: onset as u32,
        bound,
        sizes,
    })
}

/// `sizes[j-1] = |jA|` is linear with the given slope for `j` in `[n, n + slope]`.
fn linear_from(sizes: &[u64], n: usize, slope: i64) -> bool {
    (n..n + slope as usize).all(|j| sizes[j] as i64 - sizes[j - 1] as i64 == slope)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorizonRow {
    pub k: u32,
    pub sums: u128,
    pub differences: u128,
}

/// The least `k0` with `|kA - kA| >= |kA + kA|` for every `k` in `[k0, k0 + window]`.
/// Such an `A` is not `c`-generational for any `c >= k0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorizonReport {
    pub k0: u32,
    pub window: u32,
    /// `2(a_m - a_1)/s`.
    pub bound: i64,
    pub rows: Vec<HorizonRow>,
}

pub const DEFAULT_WINDOW: u32 = 5;

pub fn generational_horizon(a: &IntSet, window: u32) -> Result<HorizonReport> {
    let (b, _) = normalize(a)?;
    let bound = 2 * b.max().unwrap();
    let mut iters = vec![b.clone()];
    horizon_by(window, bound, |k| {
        while iters.len() < k as usize {
            let next = iters.last().unwrap().sumset(&b)?;
            iters.push(next);
        }
        let kb = &iters[k as usize - 1];
        Ok((kb.sumset(kb)?.len() as u128, kb.diffset(kb)?.len() as u128))
    })
}

/// Horizon of a set given in base-expansion form, evaluating each level digit by digit.
pub fn generational_horizon_expansion(exp: &BaseExpansion, window: u32) -> Result<HorizonReport> {
    let weights = exp.weights()?;
    let mut g = 0i64;
    for (a, w) in exp.digits.iter().zip(&weights) {
        let lo = a.min().unwrap();
        let gi = a.iter().fold(0i64, |g, x| g.gcd(&(x - lo)));
        g = g.gcd(&w.checked_mul(gi).ok_or(Error::Overflow("horizon gcd"))?);
    }
    let lo: i64 = exp.digits.iter().zip(&weights).map(|(a, w)| a.min().unwrap() * w).sum();
    let span = exp.max_element()? - lo;
    if g == 0 {
        return domain("need at least two elements");
    }
    let bound = 2 * (span / g);
    horizon_by(window, bound, |k| {
        let sums = exp.combo_set(SignedPair::new(2 * k, 0))?.len() as u128;
        let diffs = exp.combo_set(SignedPair::new(k, k))?.len() as u128;
        Ok((sums, diffs))
    })
}

fn horizon_by(
    window: u32,
    bound: i64,
    mut eval: impl FnMut(u32) -> Result<(u128, u128)>,
) -> Result<HorizonReport> {
    let mut rows: Vec<HorizonRow> = Vec::new();
    let mut start = 1u32;
    let mut k = 1u32;
    loop {
        let (sums, differences) = eval(k)?;
        rows.push(HorizonRow { k, sums, differences });
        if differences < sums {
            start = k + 1;
        } else if k >= start + window {
            break;
        }
        if start as i64 > bound.max(1) {
            return Err(Error::Verification(format!(
                "level {k} is still sum-dominant beyond the bound 2(a_m - a_1)/s = {bound}"
            )));
        }
        k += 1;
    }
    Ok(HorizonReport { k0: start, window, bound, rows })
}

/// `a^2·g` with `a` the largest element and `g` the largest gap between consecutive elements.
pub fn nathanson_bound(a: &IntSet) -> Result<u128> {
    if a.len() < 2 {
        return domain("need at least two elements");
    }
    if a.min().unwrap() < 0 {
        return domain("the bound is stated for non-negative elements");
    }
    let v = a.to_vec();
    let gap = v.windows(2).map(|w| w[1] - w[0]).max().unwrap() as u128;
    let top = *v.last().unwrap() as u128;
    Ok(top * top * gap)
}
