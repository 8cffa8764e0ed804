//! Quota-indexed dynamic program. The table tracks, for the players
//! inserted so far, how many subsets hit each total below the quota, plus
//! one bucket for everything at or above it. Swings for a player are read
//! from a table built over everyone else.
//!
//! Counts stay below 2^n, so a machine-word kernel runs games up to 120
//! players and big integers take over beyond that.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::WorkLimits;
use crate::error::BackendError;
use crate::game::{SwingVector, WeightedGame};

/// Subset-sum counts below a fixed integer quota, exact big-integer form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    quota: usize,
    counts: Vec<BigUint>,
    overflow: BigUint,
}

impl DpTable {
    /// Table of the empty player set: one subset, the empty one, at sum 0.
    pub fn new(quota: usize) -> Self {
        assert!(quota > 0, "quota must be positive");
        let mut counts = vec![BigUint::zero(); quota];
        counts[0] = BigUint::one();
        DpTable {
            quota,
            counts,
            overflow: BigUint::zero(),
        }
    }

    /// Folds one player of weight `w` into the table.
    pub fn insert(&mut self, w: usize) {
        insert_kernel(&mut self.counts, &mut self.overflow, w);
    }

    /// Subsets with sum exactly k, for k below the quota.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Subsets with sum at or above the quota.
    pub fn overflow(&self) -> &BigUint {
        &self.overflow
    }

    /// Subsets whose sum lands in [lo, quota).
    pub fn window_sum(&self, lo: usize) -> BigUint {
        window_kernel(&self.counts, lo)
    }
}

/// Count arithmetic the kernel runs on. Exactness is the contract: within
/// the machine-word gate no operation can wrap, and the checked subtraction
/// doubles as the consistency check of the removal pass.
trait Count: Clone {
    fn empty() -> Self;
    fn single() -> Self;
    fn add_from(&mut self, o: &Self);
    fn double(&mut self);
    fn sub_from(&mut self, o: &Self);
    fn to_biguint(&self) -> BigUint;
}

impl Count for u128 {
    fn empty() -> Self {
        0
    }
    fn single() -> Self {
        1
    }
    fn add_from(&mut self, o: &Self) {
        *self += o;
    }
    fn double(&mut self) {
        *self *= 2;
    }
    fn sub_from(&mut self, o: &Self) {
        *self = self
            .checked_sub(*o)
            .expect("removal pass stays non-negative");
    }
    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Count for BigUint {
    fn empty() -> Self {
        Zero::zero()
    }
    fn single() -> Self {
        One::one()
    }
    fn add_from(&mut self, o: &Self) {
        *self += o;
    }
    fn double(&mut self) {
        *self <<= 1;
    }
    fn sub_from(&mut self, o: &Self) {
        assert!(*self >= *o, "removal pass stays non-negative");
        *self -= o;
    }
    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
}

fn fresh_counts<C: Count>(quota: usize) -> Vec<C> {
    let mut counts = vec![C::empty(); quota];
    counts[0] = C::single();
    counts
}

fn insert_kernel<C: Count>(counts: &mut [C], overflow: &mut C, w: usize) {
    let q = counts.len();
    // Subsets in [q - w, q) cross the quota once w joins; old overflowing
    // subsets count twice, with and without the new player.
    let spill = window_kernel_c(counts, q.saturating_sub(w));
    overflow.double();
    overflow.add_from(&spill);
    if w == 0 {
        for c in counts.iter_mut() {
            c.double();
        }
        return;
    }
    for k in (w..q).rev() {
        let (below, at) = counts.split_at_mut(k);
        at[0].add_from(&below[k - w]);
    }
}

/// Inverse of `insert_kernel` on the truncated range, run ascending. Only
/// valid when a player of weight `w` is actually in the table.
fn remove_kernel<C: Count>(counts: &[C], w: usize) -> Vec<C> {
    let q = counts.len();
    let mut out: Vec<C> = Vec::with_capacity(q);
    for k in 0..q {
        let mut c = counts[k].clone();
        if k >= w {
            let prev = out[k - w].clone();
            c.sub_from(&prev);
        }
        out.push(c);
    }
    out
}

fn window_kernel_c<C: Count>(counts: &[C], lo: usize) -> C {
    let mut acc = C::empty();
    for c in &counts[lo.min(counts.len())..] {
        acc.add_from(c);
    }
    acc
}

fn window_kernel(counts: &[BigUint], lo: usize) -> BigUint {
    window_kernel_c(counts, lo)
}

/// Machine words hold every count of a game this size.
const MACHINE_KERNEL_MAX_PLAYERS: usize = 120;

struct IntegerForm {
    quota: usize,
    weights: Vec<usize>,
}

fn integer_form(game: &WeightedGame, limits: &WorkLimits) -> Result<IntegerForm, BackendError> {
    const NAME: &str = "dynamic-program";
    let (scaled, _) = game.integer_rescale();
    let (q, ws) = scaled
        .integer_parts()
        .expect("rescaled game has integer parts");
    let quota_u128 = q.to_u128().unwrap_or(u128::MAX);
    let quota = match q.to_usize() {
        Some(v) if quota_u128 <= limits.dp_max_quota => v,
        _ => {
            return Err(BackendError::BudgetExceeded {
                backend: NAME,
                estimate: q.to_string(),
                budget: limits.dp_max_quota.to_string(),
            })
        }
    };
    let weights = ws
        .iter()
        .map(|w| w.to_usize().unwrap_or(usize::MAX).min(quota))
        .collect();
    // Weights above the quota act exactly like weight q in every count the
    // table can answer, so clamping keeps indices small without changing
    // any window or overflow.
    Ok(IntegerForm { quota, weights })
}

fn swings_rebuild<C: Count>(form: &IntegerForm) -> (Vec<BigUint>, BigUint) {
    let n = form.weights.len();
    let mut swings = Vec::with_capacity(n);
    for i in 0..n {
        let mut counts = fresh_counts::<C>(form.quota);
        let mut overflow = C::empty();
        for (j, &w) in form.weights.iter().enumerate() {
            if j != i {
                insert_kernel(&mut counts, &mut overflow, w);
            }
        }
        let lo = form.quota.saturating_sub(form.weights[i]);
        swings.push(window_kernel_c(&counts, lo).to_biguint());
    }
    (swings, count_all::<C>(form))
}

fn swings_downdate<C: Count>(form: &IntegerForm) -> (Vec<BigUint>, BigUint) {
    let mut counts = fresh_counts::<C>(form.quota);
    let mut overflow = C::empty();
    for &w in &form.weights {
        insert_kernel(&mut counts, &mut overflow, w);
    }
    let mut swings = Vec::with_capacity(form.weights.len());
    for &w in &form.weights {
        if w == 0 {
            swings.push(BigUint::zero());
            continue;
        }
        let without = remove_kernel(&counts, w);
        let lo = form.quota.saturating_sub(w);
        swings.push(window_kernel_c(&without, lo).to_biguint());
    }
    (swings, overflow.to_biguint())
}

/// Swing counts and winning-coalition count, one table rebuild per player.
pub fn dp_swings(
    game: &WeightedGame,
    limits: &WorkLimits,
) -> Result<(SwingVector, BigUint), BackendError> {
    let form = integer_form(game, limits)?;
    let (swings, winning) = if game.n() <= MACHINE_KERNEL_MAX_PLAYERS {
        swings_rebuild::<u128>(&form)
    } else {
        swings_rebuild::<BigUint>(&form)
    };
    Ok((SwingVector::new(swings), winning))
}

/// Same results from one shared table: each player is removed from it by
/// the inverse recurrence instead of rebuilding without them. Linear in the
/// player count rather than quadratic, at the price of a subtractive pass
/// whose non-negativity is checked at every step.
pub fn dp_swings_downdating(
    game: &WeightedGame,
    limits: &WorkLimits,
) -> Result<(SwingVector, BigUint), BackendError> {
    let form = integer_form(game, limits)?;
    let (swings, winning) = if game.n() <= MACHINE_KERNEL_MAX_PLAYERS {
        swings_downdate::<u128>(&form)
    } else {
        swings_downdate::<BigUint>(&form)
    };
    Ok((SwingVector::new(swings), winning))
}

fn count_all<C: Count>(form: &IntegerForm) -> BigUint {
    let mut counts = fresh_counts::<C>(form.quota);
    let mut overflow = C::empty();
    for &w in &form.weights {
        insert_kernel(&mut counts, &mut overflow, w);
    }
    overflow.to_biguint()
}

/// Winning-coalition count alone: one table over all players.
pub(crate) fn dp_winning_count(
    game: &WeightedGame,
    limits: &WorkLimits,
) -> Result<BigUint, BackendError> {
    let form = integer_form(game, limits)?;
    if game.n() <= MACHINE_KERNEL_MAX_PLAYERS {
        Ok(count_all::<u128>(&form))
    } else {
        Ok(count_all::<BigUint>(&form))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::brute_force_swings;
    use crate::game::parse_game;

    fn check(text: &str) {
        let game = parse_game(text).unwrap();
        let (sv, w) = dp_swings(&game, &WorkLimits::default()).unwrap();
        let (dsv, dw) = dp_swings_downdating(&game, &WorkLimits::default()).unwrap();
        let (bsv, bw) = brute_force_swings(&game, 25).unwrap();
        assert_eq!(sv, bsv, "{text}");
        assert_eq!(w, bw, "{text}");
        assert_eq!(dsv, bsv, "{text} (removal pass)");
        assert_eq!(dw, bw, "{text} (removal pass)");
    }

    #[test]
    fn matches_enumeration() {
        check("6; 5, 4, 1");
        check("5; 3, 2, 1");
        check("22; 18, 9, 4, 2, 1");
        check("4; 3, 2, 2, 2");
        check("12; 9, 5, 3, 2, 2, 1");
        check("1; 1");
        check("3; 2, 2, 0");
        check("7; 7, 2, 1, 1");
    }

    #[test]
    fn rational_games_rescale_first() {
        check("3; 5/2, 2, 1/2");
        check("1/3; 1/3, 1/6, 1/6");
    }

    #[test]
    fn table_tracks_inserts() {
        let mut t = DpTable::new(6);
        t.insert(5);
        t.insert(4);
        t.insert(1);
        // Sums below 6 over {5, 4, 1}: 0, 1, 4, 5 each once.
        let got: Vec<u64> = t
            .counts()
            .iter()
            .map(|c| c.to_u64_digits().first().copied().unwrap_or(0))
            .collect();
        assert_eq!(got, vec![1, 1, 0, 0, 1, 2]);
        assert_eq!(t.overflow(), &BigUint::from(3u32));
        assert_eq!(t.window_sum(4), BigUint::from(3u32));
    }

    #[test]
    fn quota_cap_is_enforced() {
        let game = parse_game("1000000; 999999, 2").unwrap();
        let tight = WorkLimits {
            dp_max_quota: 10,
            ..WorkLimits::default()
        };
        assert!(matches!(
            dp_swings(&game, &tight),
            Err(BackendError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn oversized_weights_clamp_without_changing_counts() {
        check("4; 100, 3, 2");
        check("5; 9, 9, 1");
    }
}
