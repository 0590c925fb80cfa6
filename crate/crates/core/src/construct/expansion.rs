use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::setcore::{IntSet, SignedPair};

use super::{CardOracle, Combos, Verification};

/// `C = A_0 + m·A_1 + m^2·A_2 + ...` kept in factored form.
///
/// For every pair, `sC - dC` equals the radix sum of the digit combinations `sA_i - dA_i`
/// as sets. When each digit combination is narrower than the radix, distinct digit tuples
/// give distinct sums and cardinalities multiply.
#[derive(Clone, Debug, Serialize)]
pub struct BaseExpansion {
    pub radix: i64,
    pub digits: Vec<IntSet>,
}

impl BaseExpansion {
    /// Radix `k·(largest element) + 1`, the smallest that keeps every level-`k` digit
    /// combination inside one radix step.
    pub fn new(digits: Vec<IntSet>, level_bound: u32) -> Result<BaseExpansion> {
        let global_max = digits.iter().filter_map(IntSet::max).max().unwrap_or(0);
        let radix = (level_bound as i64)
            .checked_mul(global_max)
            .and_then(|x| x.checked_add(1))
            .ok_or(Error::Overflow("base expansion radix"))?;
        BaseExpansion::with_radix(digits, radix)
    }

    pub fn with_radix(digits: Vec<IntSet>, radix: i64) -> Result<BaseExpansion> {
        if digits.is_empty() {
            return domain("a base expansion needs at least one digit set");
        }
        if radix < 1 {
            return domain(format!("radix {radix} is not positive"));
        }
        for (i, a) in digits.iter().enumerate() {
            match a.min() {
                None => return domain(format!("digit set {i} is empty")),
                Some(x) if x < 0 => {
                    return domain(format!("digit set {i} has negative element {x}"))
                }
                _ => {}
            }
        }
        let exp = BaseExpansion { radix, digits };
        exp.weights()?;
        exp.max_element()?;
        Ok(exp)
    }

    /// `radix^i` for each digit position.
    pub fn weights(&self) -> Result<Vec<i64>> {
        let mut w = Vec::with_capacity(self.digits.len());
        let mut cur = 1i64;
        for i in 0..self.digits.len() {
            w.push(cur);
            if i + 1 < self.digits.len() {
                cur = cur.checked_mul(self.radix).ok_or(Error::Overflow("base expansion weights"))?;
            }
        }
        Ok(w)
    }

    pub fn max_element(&self) -> Result<i64> {
        let mut total = 0i64;
        for (w, a) in self.weights()?.into_iter().zip(&self.digits) {
            total = w
                .checked_mul(a.max().unwrap())
                .and_then(|x| x.checked_add(total))
                .ok_or(Error::Overflow("base expansion"))?;
        }
        Ok(total)
    }

    /// `Π |A_i|` as an upper bound on `|C|`, exact whenever the radix exceeds every digit's max.
    pub fn digit_product(&self) -> u128 {
        self.digits.iter().map(|a| a.len() as u128).product()
    }

    /// The set itself, built as a sumset of dilated digits.
    pub fn materialize(&self) -> Result<IntSet> {
        radix_sum(&self.digits, &self.weights()?)
    }

    /// `sC - dC` computed exactly from the digit combinations.
    pub fn combo_set(&self, p: SignedPair) -> Result<IntSet> {
        let parts = self
            .digits
            .iter()
            .map(|a| a.signed_combo(p))
            .collect::<Result<Vec<_>>>()?;
        radix_sum(&parts, &self.weights()?)
    }

    pub fn oracle(&self, route: Verification) -> ExpansionOracle<'_> {
        ExpansionOracle {
            exp: self,
            digits: self.digits.iter().map(Combos::new).collect(),
            route,
        }
    }
}

fn radix_sum(parts: &[IntSet], weights: &[i64]) -> Result<IntSet> {
    let mut acc = parts[0].dilate(weights[0])?;
    for (a, &w) in parts.iter().zip(weights).skip(1) {
        acc = acc.sumset(&a.dilate(w)?)?;
    }
    Ok(acc)
}

/// Cardinalities of combinations of a base expansion.
///
/// With [`Verification::CertifiedProduct`] each answer is the product of digit cardinalities,
/// refused if some digit combination is as wide as the radix. With [`Verification::Digitwise`]
/// the combination is also computed as a set and the two answers must agree.
pub struct ExpansionOracle<'a> {
    exp: &'a BaseExpansion,
    digits: Vec<Combos<'a>>,
    route: Verification,
}

impl ExpansionOracle<'_> {
    /// Product of digit cardinalities, or `None` if some digit combination spans a full radix step.
    pub fn certified(&mut self, p: SignedPair) -> Result<Option<u128>> {
        let mut product = 1u128;
        for c in &mut self.digits {
            let part = c.combo(p)?;
            if part.span() as u128 > self.exp.radix as u128 {
                return Ok(None);
            }
            product = product
                .checked_mul(part.len() as u128)
                .ok_or(Error::Overflow("cardinality product"))?;
        }
        Ok(Some(product))
    }
}

impl CardOracle for ExpansionOracle<'_> {
    fn card(&mut self, p: SignedPair) -> Result<u128> {
        let product = self.certified(p)?;
        match (self.route, product) {
            (Verification::CertifiedProduct, Some(c)) => Ok(c),
            (Verification::CertifiedProduct, None) => Err(Error::Verification(format!(
                "digit combinations for {p} are too wide for radix {}",
                self.exp.radix
            ))),
            (_, product) => {
                let exact = self.exp.combo_set(p)?.len() as u128;
                if let Some(c) = product {
                    if c != exact {
                        return Err(Error::Verification(format!(
                            "digit product {c} disagrees with exact count {exact} for {p}"
                        )));
                    }
                }
                Ok(exact)
            }
        }
    }
}

/// `C = A + m·B` with `m = k·max(max A, max B) + 1`.
pub fn base_expand(a: &IntSet, b: &IntSet, k: u32) -> Result<(IntSet, i64)> {
    let exp = BaseExpansion::new(vec![a.clone(), b.clone()], k)?;
    Ok((exp.materialize()?, exp.radix))
}

/// `C = A_1 + m·A_2 + ... + m^{t-1}·A_t` with one radix `m = k·(global max) + 1`.
pub fn base_expand_multi(sets: &[IntSet], k: u32) -> Result<IntSet> {
    BaseExpansion::new(sets.to_vec(), k)?.materialize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_digit_example() {
        let (c, m) = base_expand(&set(&[0, 2]), &set(&[0, 1]), 2).unwrap();
        assert_eq!(m, 5);
        assert_eq!(c.to_vec(), vec![0, 2, 5, 7]);
        assert_eq!(c.sumset(&c).unwrap().to_vec(), vec![0, 2, 4, 5, 7, 9, 10, 12, 14]);
    }

    #[test]
    fn singleton_digit_is_neutral() {
        let a = set(&[0, 1, 3]);
        let (c, _) = base_expand(&a, &set(&[0]), 3).unwrap();
        assert_eq!(c, a);
        assert_eq!(base_expand_multi(std::slice::from_ref(&a), 3).unwrap(), a);
    }

    #[test]
    fn oracles_agree_with_materialized_set() {
        let exp = BaseExpansion::new(vec![set(&[0, 1, 3]), set(&[0, 2, 3]), set(&[0, 1])], 3).unwrap();
        let c = exp.materialize().unwrap();
        let mut direct = Combos::new(&c);
        let mut digitwise = exp.oracle(Verification::Digitwise);
        let mut product = exp.oracle(Verification::CertifiedProduct);
        for level in 1..=3 {
            for p in SignedPair::at_level(level) {
                let want = direct.card(p).unwrap();
                assert_eq!(digitwise.card(p).unwrap(), want);
                assert_eq!(product.card(p).unwrap(), want);
            }
        }
        // Above the level bound the product is no longer certified, but digitwise stays exact.
        let p = SignedPair::new(5, 0);
        assert!(product.card(p).is_err());
        assert_eq!(digitwise.card(p).unwrap(), direct.card(p).unwrap());
    }

    #[test]
    fn rejects_negative_digits() {
        assert!(base_expand(&set(&[-1, 0]), &set(&[0]), 2).is_err());
        assert!(base_expand(&IntSet::empty(), &set(&[0]), 2).is_err());
    }
}
