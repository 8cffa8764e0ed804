//! Game model: weighted voting games in canonical form, compressed class
//! form, swing vectors, and assembled power reports.

mod format;

pub use format::{
    game_to_json, game_to_text, parse_exact_numeral, parse_game, parse_game_json, parse_game_text,
};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::GameError;

/// Exact rational scalar used for quotas and weights.
pub type Rational = num_rational::BigRational;

/// A nonnegative exact rational voting weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Rational);

impl Weight {
    pub fn new(value: Rational) -> Result<Self, GameError> {
        if value.is_negative() {
            return Err(GameError::NegativeWeight(value.to_string()));
        }
        Ok(Weight(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl From<u64> for Weight {
    fn from(v: u64) -> Self {
        Weight(Rational::from_integer(BigInt::from(v)))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A weighted voting game in canonical form: weights sorted non-increasing,
/// 0 < quota <= total weight. `label_map` remembers where each canonical
/// position came from in the caller's original ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGame {
    quota: Rational,
    weights: Vec<Weight>,
    label_map: Vec<usize>,
}

impl WeightedGame {
    /// Builds a game from caller-ordered weights, canonicalizing the order.
    /// Equal weights keep their relative caller order.
    pub fn new(quota: Rational, weights: Vec<Rational>) -> Result<Self, GameError> {
        if weights.is_empty() {
            return Err(GameError::EmptyPlayers);
        }
        if !quota.is_positive() {
            return Err(GameError::NonPositiveQuota(quota.to_string()));
        }
        let mut tagged: Vec<(Weight, usize)> = Vec::with_capacity(weights.len());
        for (i, w) in weights.into_iter().enumerate() {
            tagged.push((Weight::new(w)?, i));
        }
        let total: Rational = tagged.iter().map(|(w, _)| w.value()).sum();
        if quota > total {
            return Err(GameError::QuotaExceedsTotal {
                quota: quota.to_string(),
                total: total.to_string(),
            });
        }
        tagged.sort_by(|a, b| b.0.cmp(&a.0));
        let label_map = tagged.iter().map(|(_, i)| *i).collect();
        let weights = tagged.into_iter().map(|(w, _)| w).collect();
        Ok(WeightedGame {
            quota,
            weights,
            label_map,
        })
    }

    /// Convenience constructor for integer games, in caller order.
    pub fn from_integers(quota: u64, weights: &[u64]) -> Result<Self, GameError> {
        WeightedGame::new(
            Rational::from_integer(BigInt::from(quota)),
            weights
                .iter()
                .map(|&w| Rational::from_integer(BigInt::from(w)))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn quota(&self) -> &Rational {
        &self.quota
    }

    /// Weights in canonical (non-increasing) order.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Weight value at a canonical position.
    pub fn weight(&self, pos: usize) -> &Rational {
        self.weights[pos].value()
    }

    /// For each canonical position, the 0-based caller index it came from.
    pub fn label_map(&self) -> &[usize] {
        &self.label_map
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().map(|w| w.value()).sum()
    }

    /// Reorders canonical per-player values back into caller order.
    pub fn to_caller_order<T: Clone>(&self, canonical: &[T]) -> Vec<T> {
        assert_eq!(canonical.len(), self.n());
        let mut out: Vec<Option<T>> = vec![None; self.n()];
        for (pos, v) in canonical.iter().enumerate() {
            out[self.label_map[pos]] = Some(v.clone());
        }
        out.into_iter().map(|v| v.unwrap()).collect()
    }

    /// Weights in caller order.
    pub fn caller_weights(&self) -> Vec<Rational> {
        let canonical: Vec<Rational> = self.weights.iter().map(|w| w.value().clone()).collect();
        self.to_caller_order(&canonical)
    }

    pub fn is_integer(&self) -> bool {
        self.quota.is_integer() && self.weights.iter().all(|w| w.is_integer())
    }

    /// Quota and weights as plain integers, canonical order. None unless all
    /// values are integral.
    pub fn integer_parts(&self) -> Option<(BigUint, Vec<BigUint>)> {
        if !self.is_integer() {
            return None;
        }
        let q = self.quota.to_integer().to_biguint()?;
        let ws = self
            .weights
            .iter()
            .map(|w| w.value().to_integer().to_biguint())
            .collect::<Option<Vec<_>>>()?;
        Some((q, ws))
    }

    /// Multiplies the quota and every weight by c > 0. Swing counts are
    /// invariant under this map.
    pub fn scale(&self, c: &Rational) -> Result<WeightedGame, GameError> {
        if !c.is_positive() {
            return Err(GameError::NonPositiveScale(c.to_string()));
        }
        Ok(WeightedGame {
            quota: &self.quota * c,
            weights: self.weights.iter().map(|w| Weight(w.value() * c)).collect(),
            label_map: self.label_map.clone(),
        })
    }

    /// Scales the game onto integers: multiplies by the least common
    /// denominator, then divides out the common integer factor. Returns the
    /// scaled game and the factor applied.
    pub fn integer_rescale(&self) -> (WeightedGame, Rational) {
        let mut lcd = self.quota.denom().clone();
        for w in &self.weights {
            lcd = lcd.lcm(w.value().denom());
        }
        let mut gcd = (&self.quota * &lcd).to_integer();
        for w in &self.weights {
            gcd = gcd.gcd(&(w.value() * &lcd).to_integer());
        }
        let factor = Rational::new(lcd, gcd);
        if factor.is_one() {
            return (self.clone(), factor);
        }
        let scaled = self.scale(&factor).expect("factor is positive");
        (scaled, factor)
    }

    /// Run-length encodes the canonical weight sequence into classes.
    pub fn compress(&self) -> CompressedGame {
        let mut classes: Vec<WeightClass> = Vec::new();
        for w in &self.weights {
            match classes.last_mut() {
                Some(c) if c.weight == *w => c.count += 1,
                _ => classes.push(WeightClass {
                    count: 1,
                    weight: w.clone(),
                }),
            }
        }
        CompressedGame {
            quota: self.quota.clone(),
            classes,
        }
    }
}

impl fmt::Display for WeightedGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&game_to_text(self))
    }
}

/// A maximal run of players sharing one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightClass {
    pub count: usize,
    pub weight: Weight,
}

/// A game given as classes of identical weights, strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedGame {
    quota: Rational,
    classes: Vec<WeightClass>,
}

impl CompressedGame {
    pub fn new(quota: Rational, classes: Vec<WeightClass>) -> Result<Self, GameError> {
        if classes.is_empty() {
            return Err(GameError::EmptyPlayers);
        }
        if classes.iter().any(|c| c.count == 0) {
            return Err(GameError::BadCompression("class with zero players".into()));
        }
        for pair in classes.windows(2) {
            if pair[0].weight <= pair[1].weight {
                return Err(GameError::BadCompression(
                    "class weights must be strictly decreasing".into(),
                ));
            }
        }
        // Reuse the flat constructor's quota checks.
        let flat = CompressedGame { quota, classes };
        flat.expand().map(|_| flat)
    }

    pub fn quota(&self) -> &Rational {
        &self.quota
    }

    pub fn classes(&self) -> &[WeightClass] {
        &self.classes
    }

    /// Number of distinct weight classes.
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    /// Total player count.
    pub fn n(&self) -> usize {
        self.classes.iter().map(|c| c.count).sum()
    }

    /// Expands back to a flat game (canonical order, identity label map).
    pub fn expand(&self) -> Result<WeightedGame, GameError> {
        let mut ws = Vec::with_capacity(self.n());
        for c in &self.classes {
            for _ in 0..c.count {
                ws.push(c.weight.value().clone());
            }
        }
        WeightedGame::new(self.quota.clone(), ws)
    }
}

/// Per-player swing counts in canonical player order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwingVector(Vec<BigUint>);

impl SwingVector {
    pub fn new(swings: Vec<BigUint>) -> Self {
        SwingVector(swings)
    }

    pub fn from_u64s(swings: &[u64]) -> Self {
        SwingVector(swings.iter().map(|&s| BigUint::from(s)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &BigUint {
        &self.0[i]
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigUint> {
        self.0.iter()
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }
}

/// The assembled result of a power computation, in caller player order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerReport {
    pub n: usize,
    /// Swing counts per player.
    pub swings: Vec<BigUint>,
    pub total_swings: BigUint,
    /// Normalized index: swings / total swings.
    pub banzhaf: Vec<Rational>,
    /// Probabilistic index: swings / 2^(n-1).
    pub prob_banzhaf: Vec<Rational>,
    /// Number of winning coalitions, when the backend produced it.
    pub winning_count: Option<BigUint>,
    /// Coleman's power of the collectivity to act: winning_count / 2^n.
    pub coleman_a: Option<Rational>,
}

/// Normalizes canonical swing counts into a caller-ordered report.
pub fn assemble_report(
    game: &WeightedGame,
    swings: &SwingVector,
    winning_count: Option<BigUint>,
) -> Result<PowerReport, GameError> {
    let n = game.n();
    if swings.len() != n {
        return Err(GameError::SwingLengthMismatch {
            got: swings.len(),
            expected: n,
        });
    }
    let total = swings.total();
    if total.is_zero() {
        return Err(GameError::ZeroTotalSwings);
    }
    if let Some(w) = &winning_count {
        if *w > (BigUint::one() << n) {
            return Err(GameError::WinningCountTooLarge {
                count: w.to_string(),
                n,
            });
        }
    }
    let caller_swings = game.to_caller_order(swings.as_slice());
    let total_int = BigInt::from(total.clone());
    let pow = BigInt::from(BigUint::one() << (n - 1));
    let banzhaf = caller_swings
        .iter()
        .map(|s| Rational::new(BigInt::from(s.clone()), total_int.clone()))
        .collect();
    let prob_banzhaf = caller_swings
        .iter()
        .map(|s| Rational::new(BigInt::from(s.clone()), pow.clone()))
        .collect();
    let coleman_a = winning_count
        .as_ref()
        .map(|w| Rational::new(BigInt::from(w.clone()), BigInt::from(BigUint::one() << n)));
    Ok(PowerReport {
        n,
        swings: caller_swings,
        total_swings: total,
        banzhaf,
        prob_banzhaf,
        winning_count,
        coleman_a,
    })
}
