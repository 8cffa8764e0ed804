//! Instance generators: the paired-power family, weighted games encoding
//! subset-sum questions, and seeded random games of prescribed shape.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::InstanceError;
use crate::game::{Rational, WeightedGame};

/// A subset-sum question: does some subset of `values` sum to `target`?
/// Values are strictly positive and the target stays below their sum plus
/// one, so the question is never settled by size alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSumInstance {
    values: Vec<u64>,
    target: u64,
}

impl SubsetSumInstance {
    pub fn new(values: Vec<u64>, target: u64) -> Result<Self, InstanceError> {
        if values.is_empty() {
            return Err(InstanceError::BadInstance("no values".into()));
        }
        if values.iter().any(|&z| z == 0) {
            return Err(InstanceError::BadInstance(
                "values must be strictly positive".into(),
            ));
        }
        let z: u64 = values
            .iter()
            .try_fold(0u64, |a, &v| a.checked_add(v))
            .ok_or_else(|| InstanceError::BadInstance("value sum overflows".into()))?;
        if target > z {
            return Err(InstanceError::BadInstance(format!(
                "target {target} exceeds the value sum {z}"
            )));
        }
        Ok(SubsetSumInstance { values, target })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }
}

/// Answers a subset-sum instance by enumeration, capped because the scan
/// is exponential in the number of values.
pub fn subset_sum_oracle(inst: &SubsetSumInstance, cap: usize) -> Result<bool, InstanceError> {
    let m = inst.m();
    if m > cap {
        return Err(InstanceError::OracleCap { m, cap });
    }
    for mask in 0u64..(1u64 << m) {
        let mut sum = 0u64;
        for (j, &z) in inst.values.iter().enumerate() {
            if mask & (1 << j) != 0 {
                sum += z;
            }
        }
        if sum == inst.target {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The paired-power game on 2m players: two players at each weight 3^j,
/// quota just past half the total. Weights descend, so caller order is
/// already canonical.
pub fn gen_3game(m: usize) -> Result<WeightedGame, InstanceError> {
    if m == 0 {
        return Err(InstanceError::BadInstance("need at least one pair".into()));
    }
    let three = BigUint::from(3u32);
    let mut weights = Vec::with_capacity(2 * m);
    for j in (0..m).rev() {
        let w = three.pow(j as u32);
        weights.push(w.clone());
        weights.push(w);
    }
    // Total weight is 3^m - 1; the quota clears exactly half of it.
    let half = (three.pow(m as u32) - BigUint::one()) >> 1;
    let quota = Rational::from_integer(BigInt::from(half + BigUint::one()));
    let ws = weights
        .into_iter()
        .map(|w| Rational::from_integer(BigInt::from(w)))
        .collect();
    Ok(WeightedGame::new(quota, ws)?)
}

/// Encodes a subset-sum instance as a weighted game in which the unit
/// player holds power exactly when the instance is solvable.
///
/// With Z one more than the value sum, player weights are: 1 for the unit
/// player, then for each j a pair 3^j Z + z_{j+1} and 3^j Z. Exactly one of
/// each pair must join a near-quota coalition, and the z-parts those picks
/// contribute can reach the quota's offset T precisely when some subset of
/// the values sums to T.
pub fn gen_reduction(inst: &SubsetSumInstance) -> Result<WeightedGame, InstanceError> {
    let m = inst.m();
    let z_total: u64 = inst.values.iter().sum();
    let z = BigUint::from(z_total + 1);
    let three = BigUint::from(3u32);

    let mut weights = Vec::with_capacity(2 * m + 1);
    weights.push(BigUint::one());
    for (j, &zj) in inst.values.iter().enumerate() {
        let base = three.pow(j as u32) * &z;
        weights.push(&base + BigUint::from(zj));
        weights.push(base);
    }
    let half = (three.pow(m as u32) - BigUint::one()) >> 1;
    let quota = half * &z + BigUint::from(inst.target) + BigUint::one();

    let ws = weights
        .into_iter()
        .map(|w| Rational::from_integer(BigInt::from(w)))
        .collect();
    Ok(WeightedGame::new(
        Rational::from_integer(BigInt::from(quota)),
        ws,
    )?)
}

/// Weight structure a random game is asked to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameShape {
    /// Independent uniform weights.
    General,
    /// Exactly two weight values.
    TwoValue,
    /// Exactly k weight values.
    KValue(usize),
    /// Every consecutive weight ratio at least r.
    Geometric(Rational),
    /// Every weight exceeds the sum of all lighter ones.
    Unbalanced,
}

/// Seeded random integer game with n players, weights within max_weight,
/// of the requested shape. The quota is uniform over the meaningful range.
pub fn random_game(
    n: usize,
    max_weight: u64,
    seed: u64,
    shape: &GameShape,
) -> Result<WeightedGame, InstanceError> {
    if n == 0 {
        return Err(InstanceError::BadInstance(
            "need at least one player".into(),
        ));
    }
    if max_weight == 0 {
        return Err(InstanceError::BadInstance(
            "weights must be allowed to be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<BigUint> = match shape {
        GameShape::General => (0..n)
            .map(|_| BigUint::from(rng.gen_range(1..=max_weight)))
            .collect(),
        GameShape::TwoValue => distinct_value_weights(n, max_weight, 2, &mut rng)?,
        GameShape::KValue(k) => distinct_value_weights(n, max_weight, *k, &mut rng)?,
        GameShape::Geometric(r) => geometric_weights(n, max_weight, r, &mut rng)?,
        GameShape::Unbalanced => {
            let mut ws = vec![BigUint::zero(); n];
            let mut suffix = BigUint::zero();
            for j in (0..n).rev() {
                let w = &suffix + BigUint::from(rng.gen_range(1..=3u64));
                if w > BigUint::from(max_weight) {
                    return Err(InstanceError::Unsatisfiable(format!(
                        "player {j} needs weight {w}, above the cap {max_weight}"
                    )));
                }
                suffix += &w;
                ws[j] = w;
            }
            ws
        }
    };
    let total: BigUint = weights.iter().sum();
    let quota = random_biguint_in(&mut rng, &total);
    let ws = weights
        .into_iter()
        .map(|w| Rational::from_integer(BigInt::from(w)))
        .collect();
    Ok(WeightedGame::new(
        Rational::from_integer(BigInt::from(quota)),
        ws,
    )?)
}

fn distinct_value_weights(
    n: usize,
    max_weight: u64,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<BigUint>, InstanceError> {
    if k == 0 || k > n {
        return Err(InstanceError::BadInstance(format!(
            "cannot spread {k} weight values over {n} players"
        )));
    }
    if (k as u64) > max_weight {
        return Err(InstanceError::Unsatisfiable(format!(
            "{k} distinct values need weights past the cap {max_weight}"
        )));
    }
    // Draw k distinct values, then give each class one player and spread
    // the rest uniformly.
    let mut values = std::collections::BTreeSet::new();
    while values.len() < k {
        values.insert(rng.gen_range(1..=max_weight));
    }
    let values: Vec<u64> = values.into_iter().collect();
    let mut counts = vec![1usize; k];
    for _ in 0..n - k {
        counts[rng.gen_range(0..k)] += 1;
    }
    let mut ws = Vec::with_capacity(n);
    for (v, c) in values.iter().zip(&counts) {
        ws.extend(std::iter::repeat(BigUint::from(*v)).take(*c));
    }
    Ok(ws)
}

fn geometric_weights(
    n: usize,
    max_weight: u64,
    r: &Rational,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<BigUint>, InstanceError> {
    if *r <= Rational::zero() {
        return Err(InstanceError::BadInstance(format!(
            "ratio must be positive, got {r}"
        )));
    }
    let cap = BigInt::from(max_weight);
    let mut ws = vec![BigInt::zero(); n];
    let mut prev = BigInt::from(rng.gen_range(1..=3u64));
    ws[n - 1] = prev.clone();
    for j in (0..n.saturating_sub(1)).rev() {
        let floor = (r * Rational::from_integer(prev.clone()))
            .ceil()
            .to_integer();
        let w = floor + BigInt::from(rng.gen_range(0..=2u64));
        if w > cap {
            return Err(InstanceError::Unsatisfiable(format!(
                "player {j} needs weight {w}, above the cap {max_weight}"
            )));
        }
        ws[j] = w.clone();
        prev = w;
    }
    if ws[0] > cap {
        return Err(InstanceError::Unsatisfiable(format!(
            "weights exceed the cap {max_weight}"
        )));
    }
    Ok(ws
        .into_iter()
        .map(|w| w.to_biguint().expect("weights are positive"))
        .collect())
}

/// Uniform draw from [1, total], exact for totals beyond u64.
fn random_biguint_in(rng: &mut ChaCha8Rng, total: &BigUint) -> BigUint {
    if let Some(t) = total.to_u64() {
        return BigUint::from(rng.gen_range(1..=t));
    }
    // Rejection sampling over fixed-width draws.
    let bits = total.bits();
    loop {
        let mut draw = BigUint::zero();
        let mut remaining = bits;
        while remaining > 0 {
            let chunk = remaining.min(64);
            let mask = if chunk == 64 {
                u64::MAX
            } else {
                (1u64 << chunk) - 1
            };
            draw = (draw << chunk) | BigUint::from(rng.gen::<u64>() & mask);
            remaining -= chunk;
        }
        if !draw.is_zero() && draw <= *total {
            return draw;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::detect_classes;
    use crate::counting::brute_force_swings;
    use num_traits::ToPrimitive;

    #[test]
    fn paired_power_games() {
        let g = gen_3game(2).unwrap();
        assert_eq!(g.to_string(), "5; 3, 3, 1, 1");
        let g = gen_3game(3).unwrap();
        assert_eq!(g.to_string(), "14; 9, 9, 3, 3, 1, 1");
        assert!(gen_3game(0).is_err());
    }

    #[test]
    fn instance_validation() {
        assert!(SubsetSumInstance::new(vec![], 0).is_err());
        assert!(SubsetSumInstance::new(vec![1, 0], 1).is_err());
        assert!(SubsetSumInstance::new(vec![1, 2], 4).is_err());
        // Target equal to the full sum is the all-in question; allowed.
        assert!(SubsetSumInstance::new(vec![1, 2], 3).is_ok());
        assert!(SubsetSumInstance::new(vec![1, 2], 0).is_ok());
    }

    #[test]
    fn oracle_answers() {
        let yes = SubsetSumInstance::new(vec![3, 5, 7], 8).unwrap();
        assert!(subset_sum_oracle(&yes, 20).unwrap());
        let no = SubsetSumInstance::new(vec![3, 5, 7], 9).unwrap();
        assert!(!subset_sum_oracle(&no, 20).unwrap());
        let zero = SubsetSumInstance::new(vec![2, 4], 0).unwrap();
        assert!(subset_sum_oracle(&zero, 20).unwrap());
        assert!(matches!(
            subset_sum_oracle(&yes, 2),
            Err(InstanceError::OracleCap { m: 3, cap: 2 })
        ));
    }

    #[test]
    fn reduction_layout() {
        // values (1, 2), target 2: Z = 4, quota = 4*4 + 2 + 1 = 19.
        let inst = SubsetSumInstance::new(vec![1, 2], 2).unwrap();
        let g = gen_reduction(&inst).unwrap();
        assert_eq!(g.to_string(), "19; 14, 12, 5, 4, 1");
        // Caller order: unit first, then pairs by ascending power.
        let caller: Vec<String> = g.caller_weights().iter().map(|w| w.to_string()).collect();
        assert_eq!(caller, vec!["1", "5", "4", "14", "12"]);
    }

    #[test]
    fn reduction_power_tracks_the_oracle() {
        for (values, target) in [
            (vec![1u64, 2], 2u64),
            (vec![2, 4], 3),
            (vec![5], 0),
            (vec![5], 5),
            (vec![3, 5, 7], 8),
            (vec![3, 5, 7], 9),
        ] {
            let inst = SubsetSumInstance::new(values.clone(), target).unwrap();
            let expected = subset_sum_oracle(&inst, 20).unwrap();
            let g = gen_reduction(&inst).unwrap();
            let (sv, _) = brute_force_swings(&g, 25).unwrap();
            let unit_pos = g.label_map().iter().position(|&c| c == 0).unwrap();
            let powered = !sv.get(unit_pos).is_zero();
            assert_eq!(powered, expected, "values={values:?} target={target}");
        }
    }

    #[test]
    fn random_games_are_reproducible() {
        let a = random_game(8, 50, 7, &GameShape::General).unwrap();
        let b = random_game(8, 50, 7, &GameShape::General).unwrap();
        assert_eq!(a, b);
        let c = random_game(8, 50, 8, &GameShape::General).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn shaped_weights_hold_their_shape() {
        for seed in 0..20u64 {
            let g = random_game(9, 30, seed, &GameShape::TwoValue).unwrap();
            assert_eq!(g.compress().k(), 2, "seed {seed}");

            let g = random_game(9, 40, seed, &GameShape::KValue(4)).unwrap();
            assert_eq!(g.compress().k(), 4, "seed {seed}");

            let r = Rational::new(BigInt::from(2), BigInt::from(1));
            let g = random_game(7, 1_000_000, seed, &GameShape::Geometric(r.clone())).unwrap();
            let profile = detect_classes(&g);
            assert!(profile.max_geometric_ratio.unwrap() >= r, "seed {seed}");

            let g = random_game(10, u64::MAX, seed, &GameShape::Unbalanced).unwrap();
            let profile = detect_classes(&g);
            assert_eq!(profile.min_unbalance_order, Some(1), "seed {seed}");
        }
    }

    #[test]
    fn impossible_shapes_are_reported() {
        assert!(matches!(
            random_game(
                40,
                100,
                1,
                &GameShape::Geometric(Rational::from_integer(3.into()))
            ),
            Err(InstanceError::Unsatisfiable(_))
        ));
        assert!(matches!(
            random_game(80, 1000, 1, &GameShape::Unbalanced),
            Err(InstanceError::Unsatisfiable(_))
        ));
        assert!(random_game(3, 2, 1, &GameShape::KValue(3)).is_err());
        assert!(random_game(0, 5, 1, &GameShape::General).is_err());
    }

    #[test]
    fn quotas_stay_in_range() {
        for seed in 0..40u64 {
            let g = random_game(6, 12, seed, &GameShape::General).unwrap();
            let q = g.quota();
            assert!(q.is_integer());
            let qi = q.to_integer().to_u64().unwrap();
            assert!(qi >= 1);
            assert!(*q <= g.total_weight());
        }
    }
}
