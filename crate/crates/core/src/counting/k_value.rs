//! Swing counting over weight classes. A coalition matters only through how
//! many members it takes from each class, so swings for a player reduce to
//! a nested sum over per-class counts; the innermost class collapses into a
//! binomial prefix-sum range query instead of a loop.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::binomial::BinomialRow;
use crate::error::BackendError;
use crate::game::{CompressedGame, Rational, SwingVector};

fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Swings for a single player of class `focal`, by enumerating companion
/// counts per class. The walk is depth-first with explicit state arrays:
/// level m fixes the count taken from companion class m, the last level is
/// answered in closed form. Branches that either already meet the quota or
/// can no longer reach it are cut by per-level bounds.
pub fn k_value_class_swings(cg: &CompressedGame, focal: usize) -> Result<BigUint, BackendError> {
    const NAME: &str = "k-value";
    let classes = cg.classes();
    if focal >= classes.len() {
        return Err(BackendError::ShapeMismatch(format!(
            "class index {focal} out of range for {} classes",
            classes.len()
        )));
    }
    if classes[classes.len() - 1].weight.is_zero() {
        return Err(BackendError::Precondition {
            backend: NAME,
            reason: "weights must be strictly positive".into(),
        });
    }
    let q = cg.quota();
    let w0 = classes[focal].weight.value();
    // Companion pool: the focal class minus the player under study.
    let weights: Vec<Rational> = classes.iter().map(|c| c.weight.value().clone()).collect();
    let counts: Vec<usize> = classes
        .iter()
        .enumerate()
        .map(|(j, c)| if j == focal { c.count - 1 } else { c.count })
        .collect();
    let need_lo = q - w0;

    let levels = weights.len();
    let leaf = levels - 1;
    let rows: Vec<BinomialRow> = counts.iter().map(|&c| BinomialRow::new(c)).collect();
    // tail[m]: weight still available strictly after level m.
    let mut tail = vec![Rational::zero(); levels];
    for m in (0..leaf).rev() {
        tail[m] =
            &tail[m + 1] + weights[m + 1].clone() * Rational::from_integer(counts[m + 1].into());
    }

    // Admissible counts at the last level, for a given weight already taken:
    // the companions must stay below q yet reach q once the focal player joins.
    let leaf_sum = |partial: &Rational| -> BigUint {
        let lo = ceil_int(&((&need_lo - partial) / &weights[leaf])).max(BigInt::zero());
        let hi =
            (ceil_int(&((q - partial) / &weights[leaf])) - 1u32).min(BigInt::from(counts[leaf]));
        match (lo.to_usize(), hi.to_usize()) {
            (Some(lo), Some(hi)) => rows[leaf].sum_range(lo, hi),
            _ => BigUint::zero(),
        }
    };

    if leaf == 0 {
        return Ok(leaf_sum(&Rational::zero()));
    }

    let mut total = BigUint::zero();
    // ivals[m] is live for m < depth; partial[m] and prod[m] describe the
    // choice made at levels before m.
    let mut ivals = vec![0usize; leaf];
    let mut his = vec![0usize; leaf];
    let mut partial = vec![Rational::zero(); leaf + 1];
    let mut prod = vec![BigUint::one(); leaf + 1];
    let mut depth = 0usize;
    let mut descending = true;
    loop {
        if descending {
            if depth == leaf {
                let inner = leaf_sum(&partial[leaf]);
                if !inner.is_zero() {
                    total += &prod[leaf] * inner;
                }
                descending = false;
                continue;
            }
            let m = depth;
            // Too many and the companions win alone; too few and even the
            // full remainder cannot close the gap.
            let hi =
                (ceil_int(&((q - &partial[m]) / &weights[m])) - 1u32).min(BigInt::from(counts[m]));
            let lo =
                ceil_int(&((&need_lo - &partial[m] - &tail[m]) / &weights[m])).max(BigInt::zero());
            let (Some(lo), Some(hi)) = (lo.to_usize(), hi.to_usize()) else {
                descending = false;
                continue;
            };
            if lo > hi {
                descending = false;
                continue;
            }
            ivals[m] = lo;
            his[m] = hi;
            partial[m + 1] = &partial[m] + &weights[m] * Rational::from_integer(lo.into());
            let p = &prod[m] * rows[m].get(lo);
            prod[m + 1] = p;
            depth += 1;
        } else {
            if depth == 0 {
                break;
            }
            let m = depth - 1;
            if ivals[m] < his[m] {
                ivals[m] += 1;
                partial[m + 1] += &weights[m];
                let p = &prod[m] * rows[m].get(ivals[m]);
                prod[m + 1] = p;
                descending = true;
            } else {
                depth -= 1;
            }
        }
    }
    Ok(total)
}

/// Swings for every player of a compressed game, one class at a time.
pub fn k_value_swings(cg: &CompressedGame) -> Result<SwingVector, BackendError> {
    let mut swings = Vec::with_capacity(cg.n());
    for (c, class) in cg.classes().iter().enumerate() {
        let per_player = k_value_class_swings(cg, c)?;
        swings.extend(std::iter::repeat(per_player).take(class.count));
    }
    Ok(SwingVector::new(swings))
}
