use rand::RngCore;

use crate::error::{domain, Result};
use crate::setcore::{IntSet, SignedPair};

use super::{CardOracle, Combos};

/// How the middle of an embedded set is filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MiddleFill {
    /// Each middle element independently with probability 1/2.
    Random,
    /// Every middle element.
    Full,
}

/// Embedding of a seed set `A ⊂ [0, n-1]` into `[0, m-1]`: with `t = (s1+d1)·n`, the low end is
/// `L = A ∪ [t, 2t-1]`, the high end `U = [m-2t, m-t-1] ∪ (A + m - n)`, and the middle
/// `[2t, m-2t-1]` is filled at random.
#[derive(Clone, Debug)]
pub struct EmbedSpec {
    pub seed: IntSet,
    pub n: i64,
    pub wins: SignedPair,
    pub loses: SignedPair,
    pub m: i64,
}

impl EmbedSpec {
    /// Validates the seed (it must start at 0 and satisfy `|wins A| > |loses A|`).
    /// `m` defaults to `6t`.
    pub fn new(seed: IntSet, wins: SignedPair, loses: SignedPair, m: Option<i64>) -> Result<EmbedSpec> {
        if seed.min() != Some(0) {
            return domain("the seed set must have least element 0");
        }
        if wins.level() == 0 || loses.level() == 0 {
            return domain("both pairs need level at least 1");
        }
        let n = seed.max().unwrap() + 1;
        let t = wins.level() as i64 * n;
        let m = m.unwrap_or(6 * t);
        if m < 4 * t {
            return domain(format!("span m = {m} is below 4(s1+d1)n = {}", 4 * t));
        }
        let mut oracle = Combos::new(&seed);
        if oracle.card(wins)? <= oracle.card(loses)? {
            return domain(format!("the seed set does not satisfy |{wins}| > |{loses}|"));
        }
        Ok(EmbedSpec { seed, n, wins, loses, m })
    }

    /// `(s1 + d1)·n`.
    pub fn block(&self) -> i64 {
        self.wins.level() as i64 * self.n
    }

    /// Length of each fringe, `2(s1+d1)n`.
    pub fn fringe_len(&self) -> i64 {
        2 * self.block()
    }

    pub fn lower(&self) -> IntSet {
        let t = self.block();
        self.seed.iter().chain(t..2 * t).collect()
    }

    pub fn upper(&self) -> IntSet {
        let t = self.block();
        let shift = self.m - self.n;
        (self.m - 2 * t..self.m - t).chain(self.seed.iter().map(|x| x + shift)).collect()
    }

    /// `1 - 6·2^{-(s1+d1)n+1}`, the success floor for a random middle.
    pub fn success_floor(&self) -> f64 {
        1.0 - 6.0 * 2f64.powi(-(self.block() as i32) + 1)
    }

    /// Whether a sample realizes the seed's inequality.
    pub fn succeeds(&self, b: &IntSet) -> Result<bool> {
        let mut oracle = Combos::new(b);
        Ok(oracle.card(self.wins)? > oracle.card(self.loses)?)
    }
}

/// One sample `B ⊂ [0, m-1]`: the fixed fringes plus a middle drawn from `rng`.
pub fn embed_random_middle(spec: &EmbedSpec, fill: MiddleFill, rng: &mut (impl RngCore + ?Sized)) -> IntSet {
    let m = spec.m as u64;
    let mut words = vec![0u64; m.div_ceil(64) as usize];
    let mut set = |x: i64| words[(x / 64) as usize] |= 1u64 << (x % 64);
    for x in spec.lower().iter().chain(spec.upper().iter()) {
        set(x);
    }
    let lo = spec.fringe_len();
    let hi = spec.m - spec.fringe_len();
    let mut x = lo;
    while x < hi {
        let bits = match fill {
            MiddleFill::Full => !0u64,
            MiddleFill::Random => rng.next_u64(),
        };
        for i in 0..64.min(hi - x) {
            if (bits >> i) & 1 == 1 {
                set(x + i);
            }
        }
        x += 64;
    }
    IntSet::from_words(0, words)
}
