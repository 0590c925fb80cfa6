use std::fmt;
use std::str::FromStr;

use crate::construct::{CardOracle, Combos};
use crate::error::{Error, Result};
use crate::setcore::{IntSet, SignedPair};

/// A yes/no property of a finite set, named by a short id such as `sum-dominant` or
/// `gt:2,2:4,0` (meaning `|2A - 2A| > |4A|`). Conjunctions join ids with `&`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Always,
    Nonempty,
    SumDominant,
    Balanced,
    DifferenceDominant,
    /// `|lhs A| > |rhs A|`.
    Exceeds(SignedPair, SignedPair),
    /// `cA` is sum-dominant for every `1 <= c <= k`.
    Generational(u32),
    All(Vec<Predicate>),
}

impl Predicate {
    pub fn holds(&self, a: &IntSet) -> Result<bool> {
        if let Predicate::All(ps) = self {
            for p in ps {
                if !p.holds(a)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        if a.is_empty() {
            return Ok(matches!(self, Predicate::Always));
        }
        let mut oracle = Combos::new(a);
        let level2 = |o: &mut Combos<'_>| -> Result<(u128, u128)> {
            Ok((o.card(SignedPair::new(2, 0))?, o.card(SignedPair::new(1, 1))?))
        };
        Ok(match self {
            Predicate::Always | Predicate::Nonempty => true,
            Predicate::SumDominant => {
                let (s, d) = level2(&mut oracle)?;
                s > d
            }
            Predicate::Balanced => {
                let (s, d) = level2(&mut oracle)?;
                s == d
            }
            Predicate::DifferenceDominant => {
                let (s, d) = level2(&mut oracle)?;
                s < d
            }
            Predicate::Exceeds(l, r) => oracle.card(*l)? > oracle.card(*r)?,
            Predicate::Generational(k) => {
                for c in 1..=*k {
                    let ca = oracle.iterate(c)?.clone();
                    if ca.sumset(&ca)?.len() <= ca.diffset(&ca)?.len() {
                        return Ok(false);
                    }
                }
                true
            }
            Predicate::All(_) => unreachable!(),
        })
    }

    /// Same as [`Predicate::holds`] for the set whose indicator bits are `mask`.
    /// Level-2 predicates use 128-bit word arithmetic directly.
    pub fn holds_mask(&self, mask: u128) -> Result<bool> {
        let level2 = || (small_sum_count(mask), small_diff_count(mask));
        Ok(match self {
            Predicate::Always => true,
            Predicate::Nonempty => mask != 0,
            Predicate::SumDominant if mask != 0 => {
                let (s, d) = level2();
                s > d
            }
            Predicate::Balanced if mask != 0 => {
                let (s, d) = level2();
                s == d
            }
            Predicate::DifferenceDominant if mask != 0 => {
                let (s, d) = level2();
                s < d
            }
            Predicate::SumDominant | Predicate::Balanced | Predicate::DifferenceDominant => false,
            Predicate::All(ps) => {
                for p in ps {
                    if !p.holds_mask(mask)? {
                        return Ok(false);
                    }
                }
                true
            }
            _ => self.holds(&mask_to_set(mask))?,
        })
    }
}

pub(crate) fn mask_to_set(mask: u128) -> IntSet {
    let mut v = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        v.push(m.trailing_zeros() as i64);
        m &= m - 1;
    }
    IntSet::from_unsorted(v)
}

/// `|A + A|` for `A ⊂ [0, 127]` given as a bitmask.
pub(crate) fn small_sum_count(mask: u128) -> u32 {
    let (mut lo, mut hi) = (0u128, 0u128);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros();
        lo |= mask << i;
        if i > 0 {
            hi |= mask >> (128 - i);
        }
        m &= m - 1;
    }
    lo.count_ones() + hi.count_ones()
}

/// `|A - A|` for non-empty `A ⊂ [0, 127]`, from the non-negative differences.
pub(crate) fn small_diff_count(mask: u128) -> u32 {
    let mut d = 0u128;
    let mut m = mask;
    while m != 0 {
        d |= mask >> m.trailing_zeros();
        m &= m - 1;
    }
    2 * d.count_ones() - 1
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Predicate> {
        let parts: Vec<&str> = text.split('&').map(str::trim).collect();
        if parts.len() > 1 {
            return Ok(Predicate::All(parts.iter().map(|p| p.parse()).collect::<Result<_>>()?));
        }
        let bad = || Error::Domain(format!("unknown predicate `{text}`"));
        Ok(match text.trim() {
            "always" => Predicate::Always,
            "nonempty" => Predicate::Nonempty,
            "sum-dominant" => Predicate::SumDominant,
            "balanced" => Predicate::Balanced,
            "difference-dominant" => Predicate::DifferenceDominant,
            other => {
                if let Some(rest) = other.strip_prefix("gt:") {
                    let (l, r) = rest.split_once(':').ok_or_else(bad)?;
                    Predicate::Exceeds(l.parse()?, r.parse()?)
                } else if let Some(k) = other.strip_prefix("generational:") {
                    Predicate::Generational(k.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Always => f.write_str("always"),
            Predicate::Nonempty => f.write_str("nonempty"),
            Predicate::SumDominant => f.write_str("sum-dominant"),
            Predicate::Balanced => f.write_str("balanced"),
            Predicate::DifferenceDominant => f.write_str("difference-dominant"),
            Predicate::Exceeds(l, r) => write!(f, "gt:{},{}:{},{}", l.s, l.d, r.s, r.d),
            Predicate::Generational(k) => write!(f, "generational:{k}"),
            Predicate::All(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str("&")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}
