use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcore::IntSet;

use super::predicate::mask_to_set;
use super::Predicate;

/// Largest `n` whose `2^n` subsets are enumerated.
pub const EXHAUSTIVE_MAX_N: u32 = 26;
const WITNESS_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveCount {
    pub n: u32,
    pub count: u64,
    pub total: u64,
    /// The first few satisfying subsets in order of their bitmask value.
    pub witnesses: Vec<IntSet>,
}

/// Exact number of subsets of `[0, n-1]` satisfying `predicate`.
pub fn exhaustive_count(n: u32, predicate: &Predicate) -> Result<ExhaustiveCount> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::Budget {
            what: "exhaustive enumeration over n",
            requested: n as u128,
            limit: EXHAUSTIVE_MAX_N as u128,
        });
    }
    let total = 1u64 << n;
    let (count, mut masks) = (0..total)
        .into_par_iter()
        .try_fold(
            || (0u64, Vec::new()),
            |(count, mut masks), mask| {
                if predicate.holds_mask(mask as u128)? {
                    if masks.len() < WITNESS_LIMIT {
                        masks.push(mask);
                    }
                    return Ok::<_, Error>((count + 1, masks));
                }
                Ok((count, masks))
            },
        )
        .try_reduce(
            || (0u64, Vec::new()),
            |(c1, mut m1), (c2, m2)| {
                m1.extend(m2);
                m1.sort_unstable();
                m1.truncate(WITNESS_LIMIT);
                Ok((c1 + c2, m1))
            },
        )?;
    masks.sort_unstable();
    Ok(ExhaustiveCount {
        n,
        count,
        total,
        witnesses: masks.into_iter().map(|m| mask_to_set(m as u128)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let r = exhaustive_count(3, &Predicate::Nonempty).unwrap();
        assert_eq!((r.count, r.total), (7, 8));
        assert_eq!(exhaustive_count(8, &Predicate::SumDominant).unwrap().count, 0);
        assert!(exhaustive_count(27, &Predicate::Always).is_err());
    }

    #[test]
    fn first_sum_dominant_subsets() {
        let r = exhaustive_count(15, &Predicate::SumDominant).unwrap();
        assert!(r.count > 0);
        assert!(r.witnesses.iter().all(|w| Predicate::SumDominant.holds(w).unwrap()));
    }
}
