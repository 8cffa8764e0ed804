//! Closed-form backends for structurally extreme games: equal weights,
//! singleton and unanimity quota regions, dictators, games with one heavy
//! player over a block of equals, and unbalanced games.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::binomial::{binomial, binomial_at, BinomialRow};
use crate::error::BackendError;
use crate::game::{
    assemble_report, CompressedGame, PowerReport, Rational, SwingVector, Weight, WeightedGame,
};

fn precondition(backend: &'static str, reason: impl Into<String>) -> BackendError {
    BackendError::Precondition {
        backend,
        reason: reason.into(),
    }
}

/// Exact ceiling of a rational.
fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Swings and winning count for n players of equal weight u under quota q.
/// Every player swings for exactly the coalitions of ceil(q/u) - 1 others.
pub fn equal_weight_swings(
    n: usize,
    u: &Weight,
    quota: &Rational,
) -> Result<(SwingVector, BigUint), BackendError> {
    const NAME: &str = "equal-weight";
    if n == 0 {
        return Err(precondition(NAME, "no players"));
    }
    if u.is_zero() {
        return Err(precondition(NAME, "weight must be positive"));
    }
    if !quota.is_positive() {
        return Err(precondition(NAME, "quota must be positive"));
    }
    let total = u.value() * Rational::from_integer(n.into());
    if *quota > total {
        return Err(precondition(NAME, "quota exceeds the total weight"));
    }
    let y = ceil_int(&(quota / u.value()))
        .to_usize()
        .expect("1 <= ceil(q/u) <= n");
    let per_player = binomial(n - 1, y - 1);
    let winning = BinomialRow::new(n).sum_range(y, n);
    Ok((SwingVector::new(vec![per_player; n]), winning))
}

fn require_positive_last(game: &WeightedGame, name: &'static str) -> Result<(), BackendError> {
    if game.weight(game.n() - 1).is_zero() {
        Err(precondition(name, "weights must be strictly positive"))
    } else {
        Ok(())
    }
}

pub(crate) fn singleton_swings(
    game: &WeightedGame,
) -> Result<(SwingVector, BigUint), BackendError> {
    const NAME: &str = "singleton-region";
    let n = game.n();
    if *game.quota() > *game.weight(n - 1) {
        return Err(precondition(NAME, "quota exceeds the smallest weight"));
    }
    // Every nonempty coalition wins; a player is critical only when alone.
    let winning = (BigUint::one() << n) - BigUint::one();
    Ok((SwingVector::new(vec![BigUint::one(); n]), winning))
}

/// Report for games where every single player meets the quota alone.
pub fn singleton_region_report(game: &WeightedGame) -> Result<PowerReport, BackendError> {
    let (sv, w) = singleton_swings(game)?;
    assemble_report(game, &sv, Some(w)).map_err(|e| precondition("singleton-region", e.to_string()))
}

pub(crate) fn unanimity_swings(
    game: &WeightedGame,
) -> Result<(SwingVector, BigUint), BackendError> {
    const NAME: &str = "unanimity-region";
    let n = game.n();
    let slack = game.total_weight() - game.weight(n - 1);
    // Strictly above total - smallest: dropping any player, even the
    // lightest, already falls short, so only the grand coalition wins.
    if *game.quota() <= slack {
        return Err(precondition(
            NAME,
            "a coalition without the lightest player still wins",
        ));
    }
    Ok((SwingVector::new(vec![BigUint::one(); n]), BigUint::one()))
}

/// Report for games where only the grand coalition wins.
pub fn unanimity_region_report(game: &WeightedGame) -> Result<PowerReport, BackendError> {
    let (sv, w) = unanimity_swings(game)?;
    assemble_report(game, &sv, Some(w)).map_err(|e| precondition("unanimity-region", e.to_string()))
}

pub(crate) fn dictator_swings(game: &WeightedGame) -> Result<(SwingVector, BigUint), BackendError> {
    const NAME: &str = "dictator";
    let n = game.n();
    if crate::classify::is_dictator(game).is_none() {
        return Err(precondition(NAME, "no dictator present"));
    }
    // Coalitions win exactly when they contain the dictator.
    let mut swings = vec![BigUint::zero(); n];
    swings[0] = BigUint::one() << (n - 1);
    Ok((SwingVector::new(swings), BigUint::one() << (n - 1)))
}

/// Report for games whose top player wins alone while everyone else loses.
pub fn dictator_report(game: &WeightedGame) -> Result<PowerReport, BackendError> {
    let (sv, w) = dictator_swings(game)?;
    assemble_report(game, &sv, Some(w)).map_err(|e| precondition("dictator", e.to_string()))
}

/// Swings for games of one heavy player (weight a) over m equals (weight b),
/// canonical order: the heavy player first. Requires b < quota.
///
/// With x = ceil((q - a)/b) and y = ceil(q/b): the heavy player swings for
/// any i in [x, y-1] light companions; a light player swings as the y-th in
/// an all-light coalition, or as the x-th alongside the heavy player, giving
/// C(m-1, y-1) + C(m-1, x-1). Out-of-range binomial indices contribute 0.
pub fn one_distinct_swings(cg: &CompressedGame) -> Result<SwingVector, BackendError> {
    const NAME: &str = "one-distinct";
    let classes = cg.classes();
    if classes.len() != 2 || classes[0].count != 1 {
        return Err(BackendError::ShapeMismatch(
            "expected one heavy player plus one class of equals".into(),
        ));
    }
    let a = classes[0].weight.value();
    let b = classes[1].weight.value();
    let m = classes[1].count;
    let q = cg.quota();
    if b.is_zero() {
        return Err(precondition(NAME, "light weight must be positive"));
    }
    if q <= b {
        return Err(precondition(
            NAME,
            "quota within the light weight: every singleton wins",
        ));
    }
    let x = ceil_int(&((q - a) / b));
    let y = ceil_int(&(q / b));

    let row_m = BinomialRow::new(m);
    let lo = x
        .clone()
        .max(BigInt::zero())
        .to_usize()
        .unwrap_or(usize::MAX);
    let hi_bound = (&y - 1u32).min(BigInt::from(m));
    let heavy = match hi_bound.to_usize() {
        Some(hi) => row_m.sum_range(lo, hi),
        None => BigUint::zero(), // y - 1 < 0 cannot occur with q > b
    };
    let light = binomial_at(m - 1, &(&y - 1u32)) + binomial_at(m - 1, &(&x - 1u32));

    let mut swings = Vec::with_capacity(m + 1);
    swings.push(heavy);
    for _ in 0..m {
        swings.push(light.clone());
    }
    Ok(SwingVector::new(swings))
}

/// The lexicographically minimal winning coalition of an unbalanced game,
/// as membership bits in canonical order, with per-position suffix values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdVector {
    bits: Vec<bool>,
    // suffix_values[j] = sum over l > j of bits[l] * 2^(n-1-l); 0 at j = n-1.
    suffix_values: Vec<BigUint>,
}

impl ThresholdVector {
    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn suffix_values(&self) -> &[BigUint] {
        &self.suffix_values
    }

    /// The threshold read as a binary number, heaviest player highest bit.
    pub fn value(&self) -> BigUint {
        let n = self.n();
        let mut v = self.suffix_values[0].clone();
        if self.bits[0] {
            v += BigUint::one() << (n - 1);
        }
        v
    }

    /// Coalitions win iff their bit pattern is >= the threshold, so the
    /// winners are exactly the patterns in [value, 2^n).
    pub fn winning_count(&self) -> BigUint {
        (BigUint::one() << self.n()) - self.value()
    }
}

fn ensure_unbalanced(game: &WeightedGame, name: &'static str) -> Result<(), BackendError> {
    require_positive_last(game, name)?;
    let n = game.n();
    let mut suffix = Rational::zero();
    for j in (0..n).rev() {
        if *game.weight(j) <= suffix {
            return Err(precondition(
                name,
                format!("weight at canonical position {j} does not exceed the sum after it"),
            ));
        }
        suffix += game.weight(j);
    }
    Ok(())
}

/// Greedy threshold for an unbalanced game: take a player exactly when the
/// players after them cannot cover the remaining quota.
pub fn unbalanced_threshold(game: &WeightedGame) -> Result<ThresholdVector, BackendError> {
    const NAME: &str = "unbalanced";
    ensure_unbalanced(game, NAME)?;
    let n = game.n();
    let mut suffix = vec![Rational::zero(); n + 1];
    for j in (0..n).rev() {
        suffix[j] = &suffix[j + 1] + game.weight(j);
    }
    let mut bits = vec![false; n];
    let mut residual = game.quota().clone();
    for j in 0..n {
        if suffix[j + 1] < residual {
            bits[j] = true;
            residual -= game.weight(j);
        }
    }
    debug_assert!(!residual.is_positive(), "threshold must reach the quota");
    let mut suffix_values = vec![BigUint::zero(); n];
    for j in (0..n.saturating_sub(1)).rev() {
        let mut v = suffix_values[j + 1].clone();
        if bits[j + 1] {
            v += BigUint::one() << (n - 2 - j);
        }
        suffix_values[j] = v;
    }
    Ok(ThresholdVector {
        bits,
        suffix_values,
    })
}

/// Swings in an unbalanced game, read off the threshold vector. In such a
/// game coalition weight is ordered exactly like the membership bit pattern,
/// so player j's swings count the suffix patterns on one side of T_j.
pub fn unbalanced_swings(game: &WeightedGame) -> Result<SwingVector, BackendError> {
    let t = unbalanced_threshold(game)?;
    let n = t.n();
    let swings = (0..n)
        .map(|j| {
            let tj = &t.suffix_values[j];
            if t.bits[j] {
                (BigUint::one() << (n - 1 - j)) - tj
            } else {
                tj.clone()
            }
        })
        .collect();
    Ok(SwingVector::new(swings))
}
