use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// The combination `sA - dA`; its level is `s + d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPair {
    pub s: u32,
    pub d: u32,
}

impl SignedPair {
    pub const fn new(s: u32, d: u32) -> SignedPair {
        SignedPair { s, d }
    }

    pub const fn level(self) -> u32 {
        self.s + self.d
    }

    pub const fn swapped(self) -> SignedPair {
        SignedPair { s: self.d, d: self.s }
    }

    /// The representative with `s >= d`; `|sA - dA|` is unchanged by the swap.
    pub fn normalized(self) -> SignedPair {
        if self.s >= self.d {
            self
        } else {
            self.swapped()
        }
    }

    /// True if both pairs name the same combination up to swapping.
    pub fn same_unordered(self, other: SignedPair) -> bool {
        self.normalized() == other.normalized()
    }

    /// All normalized pairs at `level`, largest `s` first.
    pub fn at_level(level: u32) -> Vec<SignedPair> {
        (level.div_ceil(2)..=level)
            .rev()
            .map(|s| SignedPair::new(s, level - s))
            .collect()
    }
}

impl fmt::Display for SignedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.d)
    }
}

/// Accepts `s,d` or `(s,d)`.
impl FromStr for SignedPair {
    type Err = Error;

    fn from_str(text: &str) -> Result<SignedPair> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let [s, d] = parts.as_slice() else {
            return domain(format!("expected a pair `s,d`, got `{text}`"));
        };
        let parse = |x: &str| {
            x.parse::<u32>()
                .map_err(|_| Error::Domain(format!("`{x}` is not a non-negative integer")))
        };
        Ok(SignedPair::new(parse(s)?, parse(d)?))
    }
}

impl Serialize for SignedPair {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        [self.s, self.d].serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SignedPair {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let [s, d] = <[u32; 2]>::deserialize(de)?;
        Ok(SignedPair::new(s, d))
    }
}

/// A sum `e_1 A + ... + e_k A` with every `e_j` equal to `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVector {
    signs: Vec<i8>,
}

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<SignVector> {
        if signs.is_empty() {
            return domain("a sign vector needs at least one entry");
        }
        if let Some(bad) = signs.iter().find(|&&e| e != 1 && e != -1) {
            return domain(format!("sign {bad} is not +1 or -1"));
        }
        Ok(SignVector { signs })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn to_pair(&self) -> SignedPair {
        let plus = self.signs.iter().filter(|&&e| e == 1).count() as u32;
        SignedPair::new(plus, self.signs.len() as u32 - plus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_parse_and_normalize() {
        let p: SignedPair = "(1, 3)".parse().unwrap();
        assert_eq!(p, SignedPair::new(1, 3));
        assert_eq!(p.normalized(), SignedPair::new(3, 1));
        assert!("1,2,3".parse::<SignedPair>().is_err());
        assert_eq!(
            SignedPair::at_level(4),
            vec![SignedPair::new(4, 0), SignedPair::new(3, 1), SignedPair::new(2, 2)]
        );
    }

    #[test]
    fn sign_vectors_reduce_to_pairs() {
        let v = SignVector::new(vec![1, -1, 1, -1]).unwrap();
        assert_eq!(v.to_pair(), SignedPair::new(2, 2));
        assert!(SignVector::new(vec![]).is_err());
        assert!(SignVector::new(vec![2]).is_err());
    }
}
