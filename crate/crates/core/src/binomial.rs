//! Exact binomial coefficients, computed multiplicatively, with per-row
//! caching and prefix sums for range queries.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

/// C(n, k) by the multiplicative formula. Returns 0 when k > n.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    // Each partial product res * (n - i) is divisible by i + 1.
    for i in 0..k {
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}

/// C(n, k) for a possibly negative or oversized index: 0 outside 0..=n.
pub fn binomial_at(n: usize, k: &BigInt) -> BigUint {
    if k.sign() == num_bigint::Sign::Minus {
        return BigUint::zero();
    }
    match k.to_usize() {
        Some(k) if k <= n => binomial(n, k),
        _ => BigUint::zero(),
    }
}

/// One row of Pascal's triangle together with its prefix sums.
#[derive(Debug, Clone)]
pub struct BinomialRow {
    n: usize,
    entries: Vec<BigUint>,
    // prefix[i] = sum of entries[0..i]; prefix[n + 1] = 2^n
    prefix: Vec<BigUint>,
}

impl BinomialRow {
    pub fn new(n: usize) -> Self {
        let mut entries = Vec::with_capacity(n + 1);
        let mut c = BigUint::one();
        entries.push(c.clone());
        for k in 0..n {
            c = c * BigUint::from(n - k) / BigUint::from(k + 1);
            entries.push(c.clone());
        }
        let mut prefix = Vec::with_capacity(n + 2);
        let mut acc = BigUint::zero();
        prefix.push(acc.clone());
        for e in &entries {
            acc += e;
            prefix.push(acc.clone());
        }
        BinomialRow { n, entries, prefix }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// C(n, k); 0 when k > n.
    pub fn get(&self, k: usize) -> BigUint {
        self.entries.get(k).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Sum of C(n, k) for k in lo..=hi, clamped to 0..=n. Empty ranges sum to 0.
    pub fn sum_range(&self, lo: usize, hi: usize) -> BigUint {
        let hi = hi.min(self.n);
        if lo > hi {
            return BigUint::zero();
        }
        &self.prefix[hi + 1] - &self.prefix[lo]
    }

    /// 2^n, the sum of the whole row.
    pub fn total(&self) -> BigUint {
        self.prefix[self.n + 1].clone()
    }
}
