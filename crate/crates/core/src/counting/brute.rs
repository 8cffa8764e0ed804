//! Subset-enumeration oracle. Walks all coalitions of the other players in
//! Gray-code order, so each step updates the running weight by one add or
//! subtract. Exponential in the player count, hence capped, but exact for
//! any weights and the ground truth everything else is checked against.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::BackendError;
use crate::game::{SwingVector, WeightedGame};

/// Weight arithmetic the enumerator can run on. The i128 instance covers
/// integer games whose total fits comfortably; the big types cover the rest.
trait SubsetWeight: Clone {
    fn zero() -> Self;
    fn add(&mut self, w: &Self);
    fn sub(&mut self, w: &Self);
    fn ge(&self, other: &Self) -> bool;
}

impl SubsetWeight for i128 {
    fn zero() -> Self {
        0
    }
    fn add(&mut self, w: &Self) {
        *self += w;
    }
    fn sub(&mut self, w: &Self) {
        *self -= w;
    }
    fn ge(&self, other: &Self) -> bool {
        *self >= *other
    }
}

impl SubsetWeight for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&mut self, w: &Self) {
        *self += w;
    }
    fn sub(&mut self, w: &Self) {
        *self -= w;
    }
    fn ge(&self, other: &Self) -> bool {
        *self >= *other
    }
}

impl SubsetWeight for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&mut self, w: &Self) {
        *self += w;
    }
    fn sub(&mut self, w: &Self) {
        *self -= w;
    }
    fn ge(&self, other: &Self) -> bool {
        *self >= *other
    }
}

/// Count subsets of `weights` whose sum lands in [lo, hi), plus those in
/// [hi, infinity), in one Gray-code sweep. `hi` may be None for "no upper
/// window"; then the first counter covers [lo, infinity).
fn count_windows<W: SubsetWeight>(weights: &[W], lo: &W, hi: Option<&W>) -> (u64, u64) {
    let n = weights.len();
    let mut sum = W::zero();
    let mut in_window = 0u64;
    let mut above = 0u64;
    let mut tally = |s: &W| match hi {
        Some(h) => {
            if s.ge(h) {
                above += 1;
            } else if s.ge(lo) {
                in_window += 1;
            }
        }
        None => {
            if s.ge(lo) {
                in_window += 1;
            }
        }
    };
    tally(&sum);
    let mut mask = 0u64;
    for g in 1u64..(1u64 << n) {
        let bit = g.trailing_zeros() as usize;
        let next = mask ^ (1 << bit);
        if next > mask {
            sum.add(&weights[bit]);
        } else {
            sum.sub(&weights[bit]);
        }
        mask = next;
        tally(&sum);
    }
    (in_window, above)
}

enum Arithmetic {
    Machine(Vec<i128>, i128),
    BigInteger(Vec<BigInt>, BigInt),
    Rational(Vec<BigRational>, BigRational),
}

fn pick_arithmetic(game: &WeightedGame) -> Arithmetic {
    if let Some((q, ws)) = game.integer_parts() {
        let fits = |x: &BigUint| x.to_i128();
        let qi = fits(&q);
        let wi: Option<Vec<i128>> = ws.iter().map(fits).collect();
        // Guard the running sum as well: total must stay in range.
        let total: Option<i128> = wi
            .as_ref()
            .and_then(|v| v.iter().try_fold(0i128, |a, &w| a.checked_add(w)));
        if let (Some(qi), Some(wi), Some(_)) = (qi, wi, total) {
            return Arithmetic::Machine(wi, qi);
        }
        return Arithmetic::BigInteger(
            ws.iter().map(|w| BigInt::from(w.clone())).collect(),
            BigInt::from(q),
        );
    }
    Arithmetic::Rational(
        game.weights().iter().map(|w| w.value().clone()).collect(),
        game.quota().clone(),
    )
}

fn check_cap(game: &WeightedGame, cap: usize) -> Result<(), BackendError> {
    // The coalition mask is a u64, so 63 players is a hard ceiling
    // regardless of how generous the configured cap is.
    let cap = cap.min(63);
    if game.n() > cap {
        Err(BackendError::OverCap { n: game.n(), cap })
    } else {
        Ok(())
    }
}

/// Swing counts and the winning-coalition count by full enumeration.
/// Player i swings for coalitions of the others weighing in [q - w_i, q).
pub fn brute_force_swings(
    game: &WeightedGame,
    cap: usize,
) -> Result<(SwingVector, BigUint), BackendError> {
    check_cap(game, cap)?;
    match pick_arithmetic(game) {
        Arithmetic::Machine(ws, q) => Ok(assemble(&ws, q)),
        Arithmetic::BigInteger(ws, q) => Ok(assemble(&ws, q)),
        Arithmetic::Rational(ws, q) => Ok(assemble(&ws, q)),
    }
}

fn assemble<W: SubsetWeight>(ws: &[W], q: W) -> (SwingVector, BigUint) {
    let n = ws.len();
    let mut swings = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<W> = ws
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, w)| w.clone())
            .collect();
        let mut lo = q.clone();
        lo.sub(&ws[i]);
        let (in_window, _) = count_windows(&others, &lo, Some(&q));
        swings.push(BigUint::from(in_window));
    }
    let (winning, _) = count_windows(ws, &q, None);
    (SwingVector::new(swings), BigUint::from(winning))
}

/// Winning-coalition count alone, same enumeration.
pub fn brute_force_winning_count(game: &WeightedGame, cap: usize) -> Result<BigUint, BackendError> {
    check_cap(game, cap)?;
    let count = match pick_arithmetic(game) {
        Arithmetic::Machine(ws, q) => count_windows(&ws, &q, None).0,
        Arithmetic::BigInteger(ws, q) => count_windows(&ws, &q, None).0,
        Arithmetic::Rational(ws, q) => count_windows(&ws, &q, None).0,
    };
    Ok(BigUint::from(count))
}
