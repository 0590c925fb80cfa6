//! Brute-force reference arithmetic over `BTreeSet`, sharing no code with the library kernels.
#![allow(dead_code)]

use std::collections::BTreeSet;

use mstd_core::IntSet;

pub type Naive = BTreeSet<i64>;

pub fn naive(a: &IntSet) -> Naive {
    a.iter().collect()
}

pub fn to_set(a: &Naive) -> IntSet {
    IntSet::new(a.iter().copied().collect()).unwrap()
}

pub fn add(a: &Naive, b: &Naive) -> Naive {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

pub fn sub(a: &Naive, b: &Naive) -> Naive {
    a.iter().flat_map(|x| b.iter().map(move |y| x - y)).collect()
}

/// `jA`, with `0A` empty.
pub fn times(a: &Naive, j: u32) -> Naive {
    if j == 0 {
        return Naive::new();
    }
    (1..j).fold(a.clone(), |acc, _| add(&acc, a))
}

/// `sA - dA`.
pub fn combo(a: &Naive, s: u32, d: u32) -> Naive {
    match (s, d) {
        (_, 0) => times(a, s),
        (0, _) => times(a, d).iter().map(|x| -x).collect(),
        _ => sub(&times(a, s), &times(a, d)),
    }
}
