//! Structural classification of games: weight classes, extreme quota
//! regions, geometric decay, unbalancedness, and divisibility structure.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::ClassifyError;
use crate::game::{Rational, WeightedGame};

/// Everything the dispatcher needs to know about a game's shape.
/// All positional fields refer to canonical (non-increasing) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    /// Exactly one distinct weight value.
    pub all_equal: bool,
    /// Canonical position (0-based) of a player who wins alone while all
    /// others together lose; always 0 when present.
    pub dictator_index: Option<usize>,
    /// quota <= smallest weight: every nonempty coalition wins.
    pub singleton_region: bool,
    /// quota > total - smallest weight: only the grand coalition wins.
    pub unanimity_region: bool,
    /// Number of distinct weight values.
    pub distinct_value_count: usize,
    /// Largest r with w_i >= r * w_{i+1} for all i, i.e. the minimum
    /// consecutive ratio. None for single-player games or zero weights.
    pub max_geometric_ratio: Option<Rational>,
    /// Smallest k such that every weight exceeds the sum of the weights k or
    /// more places after it. 1 means unbalanced. None when a zero weight
    /// makes the (strict) comparisons unsatisfiable.
    pub min_unbalance_order: Option<usize>,
    /// Every weight is an integer multiple of the next one.
    pub is_sequential: bool,
    /// Sequential, and each consecutive distinct-value multiplier exceeds the
    /// size of the next class.
    pub dominance: bool,
    /// Each distinct value exceeds the total weight of all smaller classes.
    pub alt_dominance: bool,
    /// Quota and all weights are integers.
    pub all_integer: bool,
    /// quota >= half the total weight.
    pub is_proper: bool,
}

/// Returns the canonical position of a dictator, if one exists: the top
/// player wins alone and all remaining players together lose.
pub fn is_dictator(game: &WeightedGame) -> Option<usize> {
    let w1 = game.weight(0);
    if w1 < game.quota() {
        return None;
    }
    let rest: Rational = game.weights()[1..].iter().map(|w| w.value()).sum();
    if rest < *game.quota() {
        Some(0)
    } else {
        None
    }
}

/// Whether w_i >= r * w_{i+1} holds for every consecutive pair.
/// Vacuously true for a single player.
pub fn geometric_for(game: &WeightedGame, r: &Rational) -> Result<bool, ClassifyError> {
    if *r <= Rational::zero() {
        return Err(ClassifyError::NonPositiveRatio(r.to_string()));
    }
    if game.weights().iter().any(|w| w.is_zero()) {
        return Err(ClassifyError::ZeroWeight);
    }
    Ok(game
        .weights()
        .windows(2)
        .all(|p| p[0].value() >= &(p[1].value() * r)))
}

// Suffix sums, canonical order: suffix[i] = w_i + ... + w_{n-1}, suffix[n] = 0.
fn suffix_sums(game: &WeightedGame) -> Vec<Rational> {
    let n = game.n();
    let mut suffix = vec![Rational::zero(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] + game.weight(i);
    }
    suffix
}

fn min_unbalance_order(game: &WeightedGame, suffix: &[Rational]) -> Option<usize> {
    if game.weights().iter().any(|w| w.is_zero()) {
        return None;
    }
    let n = game.n();
    let works = |k: usize| (0..n).all(|j| *game.weight(j) > suffix[(j + k).min(n)]);
    // works is monotone in k (larger k leaves a smaller suffix), and works(n)
    // always holds for positive weights, so binary search finds the minimum.
    let (mut lo, mut hi) = (1usize, n.max(1));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if works(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

/// Computes the full profile. Pure function of the canonical weight sequence
/// and the quota.
pub fn detect_classes(game: &WeightedGame) -> ClassProfile {
    let n = game.n();
    let compressed = game.compress();
    let classes = compressed.classes();
    let suffix = suffix_sums(game);
    let total = suffix[0].clone();
    let smallest = game.weight(n - 1);

    let max_geometric_ratio = if n < 2 || game.weights().iter().any(|w| w.is_zero()) {
        None
    } else {
        game.weights()
            .windows(2)
            .map(|p| p[0].value() / p[1].value())
            .min()
    };

    let positive = !smallest.is_zero();
    let is_sequential = positive
        && game
            .weights()
            .windows(2)
            .all(|p| (p[0].value() / p[1].value()).is_integer());

    let dominance = is_sequential
        && classes.windows(2).all(|p| {
            let m = (p[0].weight.value() / p[1].weight.value()).to_integer();
            m > num_bigint::BigInt::from(p[1].count)
        });

    // Walk classes lightest-first, tracking the total weight strictly below
    // each one. The lightest class has nothing below it to dominate.
    let alt_dominance = {
        let mut lighter = Rational::zero();
        let mut ok = true;
        for (idx, c) in classes.iter().enumerate().rev() {
            if idx + 1 < classes.len() {
                ok = ok && *c.weight.value() > lighter;
            }
            lighter += c.weight.value() * Rational::from_integer(c.count.into());
        }
        ok
    };

    ClassProfile {
        all_equal: classes.len() == 1,
        dictator_index: is_dictator(game),
        singleton_region: *game.quota() <= *smallest,
        unanimity_region: *game.quota() > &total - smallest,
        distinct_value_count: classes.len(),
        max_geometric_ratio,
        min_unbalance_order: min_unbalance_order(game, &suffix),
        is_sequential,
        dominance,
        alt_dominance,
        all_integer: game.is_integer(),
        is_proper: &total <= &(game.quota() * Rational::from_integer(2.into())),
    }
}

impl ClassProfile {
    /// Stable-keyed JSON rendering; optional fields serialize as null,
    /// rationals as strings, the dictator position 1-based.
    pub fn to_json(&self) -> Value {
        json!({
            "all_equal": self.all_equal,
            "dictator_index": self.dictator_index.map(|i| i + 1),
            "singleton_region": self.singleton_region,
            "unanimity_region": self.unanimity_region,
            "distinct_value_count": self.distinct_value_count,
            "max_geometric_ratio": self.max_geometric_ratio.as_ref().map(|r| r.to_string()),
            "min_unbalance_order": self.min_unbalance_order,
            "is_sequential": self.is_sequential,
            "dominance": self.dominance,
            "alt_dominance": self.alt_dominance,
            "all_integer": self.all_integer,
            "is_proper": self.is_proper,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::parse_game;

    fn profile(text: &str) -> ClassProfile {
        detect_classes(&parse_game(text).unwrap())
    }

    #[test]
    fn dictator_examples() {
        assert_eq!(is_dictator(&parse_game("5; 6, 3, 1").unwrap()), Some(0));
        assert_eq!(is_dictator(&parse_game("10; 10, 5, 4").unwrap()), Some(0));
        assert_eq!(is_dictator(&parse_game("10; 9, 5, 4").unwrap()), None);
        assert_eq!(is_dictator(&parse_game("1; 1").unwrap()), Some(0));
    }

    #[test]
    fn quota_regions() {
        let p = profile("1; 3, 2, 1");
        assert!(p.singleton_region && !p.unanimity_region);
        let p = profile("34; 18, 9, 4, 2, 1");
        assert!(p.unanimity_region && !p.singleton_region);
        // Boundary: quota equal to total minus the smallest weight is not
        // unanimity; the coalition missing the lightest player still wins.
        let p = profile("5; 3, 2, 1");
        assert!(!p.unanimity_region);
    }

    #[test]
    fn unbalance_orders() {
        assert_eq!(profile("22; 18, 9, 4, 2, 1").min_unbalance_order, Some(1));
        assert_eq!(profile("5; 3, 3, 1, 1").min_unbalance_order, Some(2));
        assert_eq!(profile("3; 1, 1, 1, 1").min_unbalance_order, Some(4));
        assert_eq!(profile("1; 1").min_unbalance_order, Some(1));
        assert_eq!(profile("2; 2, 1, 0").min_unbalance_order, None);
    }

    #[test]
    fn geometric_fields() {
        let p = profile("22; 18, 9, 4, 2, 1");
        assert_eq!(p.max_geometric_ratio.unwrap().to_string(), "2");
        let g = parse_game("22; 18, 9, 4, 2, 1").unwrap();
        assert!(geometric_for(&g, &Rational::from_integer(2.into())).unwrap());
        assert!(!geometric_for(&g, &Rational::from_integer(3.into())).unwrap());
        let z = parse_game("2; 2, 1, 0").unwrap();
        assert_eq!(
            geometric_for(&z, &Rational::from_integer(2.into())),
            Err(ClassifyError::ZeroWeight)
        );
        assert!(profile("2; 2, 1, 0").max_geometric_ratio.is_none());
        assert!(profile("1; 5").max_geometric_ratio.is_none());
    }

    #[test]
    fn sequential_and_dominance() {
        let p = profile("32; 20, 10, 10, 5, 1, 1, 1");
        assert!(p.is_sequential);
        assert!(!p.dominance); // 20/10 = 2 is not above the class size 2
        assert!(!p.alt_dominance); // 20 <= 10+10+5+1+1+1

        let p = profile("30; 24, 12, 2, 2, 1");
        assert!(p.is_sequential);
        // multipliers 2, 6, 2, 2 against next-class sizes 1, 2, 1
        assert!(p.dominance);

        let p = profile("10; 9, 4, 2");
        assert!(!p.is_sequential);
        assert!(!p.dominance);
        assert!(p.alt_dominance); // 9 > 4+2 and 4 > 2

        // Dominance implies sequential by construction.
        assert!(!profile("10; 9, 4, 2").dominance);
        assert!(!profile("2; 2, 1, 0").is_sequential);
    }

    #[test]
    fn equal_weights_and_counts() {
        let p = profile("5; 2, 2, 2, 2");
        assert!(p.all_equal);
        assert_eq!(p.distinct_value_count, 1);
        assert!(p.is_sequential); // consecutive ratios are all 1
        let p = profile("6; 5, 4, 1");
        assert_eq!(p.distinct_value_count, 3);
        assert!(!p.all_equal);
    }

    #[test]
    fn integrality_and_properness() {
        assert!(profile("6; 5, 4, 1").all_integer);
        assert!(!profile("3/2; 1, 1/2").all_integer);
        assert!(profile("6; 5, 4, 1").is_proper); // 6 >= 5
        assert!(!profile("4; 5, 4, 1").is_proper); // 4 < 5
        assert!(profile("5; 5, 4, 1").is_proper); // boundary counts as proper
    }

    #[test]
    fn single_player_profile() {
        let p = profile("1; 1");
        assert!(p.all_equal && p.singleton_region && p.unanimity_region);
        assert_eq!(p.dictator_index, Some(0));
        assert!(p.is_sequential && p.dominance && p.alt_dominance);
        assert_eq!(p.min_unbalance_order, Some(1));
    }

    #[test]
    fn json_shape_is_stable() {
        let v = profile("22; 18, 9, 4, 2, 1").to_json();
        assert_eq!(v["min_unbalance_order"], 1);
        assert_eq!(v["max_geometric_ratio"], "2");
        assert_eq!(v["dictator_index"], Value::Null);
        assert_eq!(v["all_integer"], true);
    }
}
