//! Word-parallel bitsets over a window `[offset, offset + nbits)`.
//!
//! A `Dense` value is always trimmed: bit 0 and bit `nbits - 1` are set.

/// Largest window the dense kernels will allocate (2 GiB of words).
pub(crate) const MAX_DENSE_BITS: u64 = 1 << 34;

#[inline]
pub(crate) fn words_for(nbits: u64) -> usize {
    nbits.div_ceil(64) as usize
}

#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub offset: i64,
    pub nbits: u64,
    pub words: Vec<u64>,
    pub count: usize,
}

impl Dense {
    /// `elems` must be non-empty, strictly increasing, and span at most `MAX_DENSE_BITS`.
    pub fn from_sorted(elems: &[i64]) -> Dense {
        let offset = elems[0];
        let nbits = (*elems.last().unwrap() as i128 - offset as i128 + 1) as u64;
        let mut words = vec![0u64; words_for(nbits)];
        for &x in elems {
            let p = (x as i128 - offset as i128) as u64;
            words[(p / 64) as usize] |= 1u64 << (p % 64);
        }
        Dense { offset, nbits, words, count: elems.len() }
    }

    /// Builds from raw words, trimming leading and trailing zeros. `None` if no bit is set.
    pub fn from_raw(offset: i64, mut words: Vec<u64>) -> Option<Dense> {
        let first = words.iter().position(|&w| w != 0)?;
        let last = words.iter().rposition(|&w| w != 0).unwrap();
        let low = first as u64 * 64 + words[first].trailing_zeros() as u64;
        let high = last as u64 * 64 + 63 - words[last].leading_zeros() as u64;
        words.truncate(last + 1);
        if low > 0 {
            shift_down(&mut words, low);
        }
        let nbits = high - low + 1;
        words.truncate(words_for(nbits));
        let count = popcount(&words);
        Some(Dense { offset: offset + low as i64, nbits, words, count })
    }

    #[inline]
    pub fn test(&self, pos: u64) -> bool {
        pos < self.nbits && (self.words[(pos / 64) as usize] >> (pos % 64)) & 1 == 1
    }

    pub fn positions(&self) -> BitIter<'_> {
        BitIter::new(&self.words)
    }

    /// Maximal runs of set bits as `(start, len)` pairs, in increasing order.
    pub fn runs(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let mut p = 0u64;
        while let Some(start) = next_one(&self.words, p, self.nbits) {
            let end = next_zero(&self.words, start, self.nbits);
            out.push((start, end - start));
            p = end;
        }
        out
    }

    /// Bit-reversed copy: the set `{-x}`.
    pub fn negated(&self) -> Dense {
        let mut words: Vec<u64> = self.words.iter().rev().map(|w| w.reverse_bits()).collect();
        let pad = words.len() as u64 * 64 - self.nbits;
        if pad > 0 {
            shift_down(&mut words, pad);
        }
        words.truncate(words_for(self.nbits));
        let top = self.offset as i128 + self.nbits as i128 - 1;
        Dense {
            offset: (-top) as i64,
            nbits: self.nbits,
            words,
            count: self.count,
        }
    }
}

pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

fn next_one(words: &[u64], from: u64, nbits: u64) -> Option<u64> {
    if from >= nbits {
        return None;
    }
    let mut wi = (from / 64) as usize;
    let mut w = words[wi] & (!0u64 << (from % 64));
    loop {
        if w != 0 {
            let p = wi as u64 * 64 + w.trailing_zeros() as u64;
            return (p < nbits).then_some(p);
        }
        wi += 1;
        if wi >= words.len() {
            return None;
        }
        w = words[wi];
    }
}

fn next_zero(words: &[u64], from: u64, nbits: u64) -> u64 {
    let mut wi = (from / 64) as usize;
    let mut w = !words[wi] & (!0u64 << (from % 64));
    loop {
        if w != 0 {
            let p = wi as u64 * 64 + w.trailing_zeros() as u64;
            return p.min(nbits);
        }
        wi += 1;
        if wi >= words.len() {
            return nbits;
        }
        w = !words[wi];
    }
}

/// In-place right shift of the whole bit vector by `s`.
fn shift_down(words: &mut [u64], s: u64) {
    let ws = (s / 64) as usize;
    let bs = (s % 64) as u32;
    let n = words.len();
    for i in 0..n {
        let lo = if i + ws < n { words[i + ws] } else { 0 };
        words[i] = if bs == 0 {
            lo
        } else {
            let hi = if i + ws + 1 < n { words[i + ws + 1] } else { 0 };
            (lo >> bs) | (hi << (64 - bs))
        };
    }
}

/// `dst |= src << shift`. `dst` must be wide enough to hold every set bit of the shifted source.
#[inline]
pub(crate) fn shift_or(dst: &mut [u64], src: &[u64], shift: u64) {
    let ws = (shift / 64) as usize;
    let bs = (shift % 64) as u32;
    let window = &mut dst[ws..ws + src.len()];
    if bs == 0 {
        for (d, &s) in window.iter_mut().zip(src) {
            *d |= s;
        }
        return;
    }
    let mut carry = 0u64;
    for (d, &s) in window.iter_mut().zip(src) {
        *d |= (s << bs) | carry;
        carry = s >> (64 - bs);
    }
    if carry != 0 {
        dst[ws + src.len()] |= carry;
    }
}

/// `words |= words << s`, in place.
fn or_self_shifted(words: &mut [u64], s: u64) {
    let ws = (s / 64) as usize;
    let bs = (s % 64) as u32;
    for i in (ws..words.len()).rev() {
        let mut v = words[i - ws] << bs;
        if bs != 0 && i > ws {
            v |= words[i - ws - 1] >> (64 - bs);
        }
        words[i] |= v;
    }
}

/// Minkowski sum of the bitset with the interval `[0, w - 1]`, `w >= 1`.
pub(crate) fn dilate_by_interval(src: &[u64], nbits: u64, w: u64) -> Vec<u64> {
    let mut out = vec![0u64; words_for(nbits + w - 1)];
    out[..src.len()].copy_from_slice(src);
    let mut covered = 1u64;
    while covered * 2 <= w {
        or_self_shifted(&mut out, covered);
        covered *= 2;
    }
    if covered < w {
        or_self_shifted(&mut out, w - covered);
    }
    out
}

pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitIter { words, index: 0, current: words.first().copied().unwrap_or(0) }
    }
}

impl Iterator for BitIter<'_> {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let tz = self.current.trailing_zeros() as u64;
        self.current &= self.current - 1;
        Some(self.index as u64 * 64 + tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(d: &Dense) -> Vec<i64> {
        d.positions().map(|p| d.offset + p as i64).collect()
    }

    #[test]
    fn runs_and_negation() {
        let d = Dense::from_sorted(&[-3, -2, 0, 64, 65, 66, 130]);
        assert_eq!(d.runs(), vec![(0, 2), (3, 1), (67, 3), (133, 1)]);
        let n = d.negated();
        assert_eq!(bits(&n), vec![-130, -66, -65, -64, 0, 2, 3]);
    }

    #[test]
    fn dilation_matches_naive() {
        let d = Dense::from_sorted(&[0, 5, 70, 200]);
        for w in 1..80u64 {
            let out = dilate_by_interval(&d.words, d.nbits, w);
            let got: Vec<u64> = BitIter::new(&out).collect();
            let mut want: Vec<u64> = [0u64, 5, 70, 200]
                .iter()
                .flat_map(|&x| x..x + w)
                .collect();
            want.sort_unstable();
            want.dedup();
            assert_eq!(got, want, "w = {w}");
        }
    }

    #[test]
    fn trimming_raw_words() {
        let d = Dense::from_raw(10, vec![0, 0b1010_0000, 0, 0]).unwrap();
        assert_eq!(bits(&d), vec![10 + 64 + 5, 10 + 64 + 7]);
        assert!(Dense::from_raw(0, vec![0, 0]).is_none());
    }
}
