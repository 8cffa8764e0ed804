//! Swing counting for games whose weights take exactly two values. A
//! coalition is determined up to symmetry by how many players of each value
//! it holds, so swings reduce to a short double sum of binomial products.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::binomial::{binomial, BinomialRow};
use crate::error::BackendError;
use crate::game::{CompressedGame, Rational, SwingVector};

fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Swings for one player of the focal class, counting companions as i
/// focal-class peers plus j players of the other class. For each i the
/// admissible j form an interval, summed via a prefix table.
fn class_swings(q: &Rational, w_a: &Rational, n_a: usize, w_b: &Rational, n_b: usize) -> BigUint {
    let row_b = BinomialRow::new(n_b);
    // More than ceil(q/w_a) - 1 peers already win without the focal player.
    let max_i = {
        let cap = ceil_int(&(q / w_a)) - 1u32;
        match cap.to_usize() {
            Some(c) => c.min(n_a - 1),
            None => return BigUint::zero(), // positive quota keeps the cap at 0 or above
        }
    };
    let mut total = BigUint::zero();
    for i in 0..=max_i {
        let i_rat = Rational::from_integer(BigInt::from(i));
        // Companions must fall short alone but win with the focal player:
        // q - w_a <= i*w_a + j*w_b < q.
        let lo = ceil_int(&((q - w_a - &i_rat * w_a) / w_b)).max(BigInt::zero());
        let hi = (ceil_int(&((q - &i_rat * w_a) / w_b)) - 1u32).min(BigInt::from(n_b));
        let (Some(lo), Some(hi)) = (lo.to_usize(), hi.to_usize()) else {
            continue;
        };
        let inner = row_b.sum_range(lo, hi);
        if !inner.is_zero() {
            total += binomial(n_a - 1, i) * inner;
        }
    }
    total
}

/// Swings for a compressed game of exactly two weight classes, both
/// strictly positive. Each class shares one count by symmetry.
pub fn two_value_swings(cg: &CompressedGame) -> Result<SwingVector, BackendError> {
    const NAME: &str = "two-value";
    let classes = cg.classes();
    if classes.len() != 2 {
        return Err(BackendError::ShapeMismatch(
            "expected exactly two weight classes".into(),
        ));
    }
    if classes[1].weight.is_zero() {
        return Err(BackendError::Precondition {
            backend: NAME,
            reason: "weights must be strictly positive".into(),
        });
    }
    let q = cg.quota();
    let (w_a, n_a) = (classes[0].weight.value(), classes[0].count);
    let (w_b, n_b) = (classes[1].weight.value(), classes[1].count);

    let swing_a = class_swings(q, w_a, n_a, w_b, n_b);
    let swing_b = class_swings(q, w_b, n_b, w_a, n_a);

    let mut swings = Vec::with_capacity(n_a + n_b);
    swings.extend(std::iter::repeat(swing_a).take(n_a));
    swings.extend(std::iter::repeat(swing_b).take(n_b));
    Ok(SwingVector::new(swings))
}
