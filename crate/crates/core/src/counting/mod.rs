//! Exact coalition-counting backends: subset enumeration, structured
//! two-value and multi-value class counting, the quota-indexed dynamic
//! program, and generating-function products.

mod brute;
mod dp;
mod gf;
mod k_value;
mod two_value;

pub use brute::{brute_force_swings, brute_force_winning_count};
pub use dp::{dp_swings, dp_swings_downdating, DpTable};
pub use gf::{
    gf_full_polynomial, gf_player_polynomial, gf_swings, gf_swings_via_division, SparsePolynomial,
};
pub use k_value::{k_value_class_swings, k_value_swings};
pub use two_value::two_value_swings;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::BackendError;
use crate::game::WeightedGame;

/// Caps that keep the counting backends inside predictable time and memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkLimits {
    /// Largest player count the subset-enumeration backend accepts.
    pub brute_cap: usize,
    /// Upper bound on a backend's estimated elementary operations.
    pub work_budget: u128,
    /// Largest rescaled integer quota the dynamic program accepts.
    pub dp_max_quota: u128,
}

impl Default for WorkLimits {
    fn default() -> Self {
        WorkLimits {
            brute_cap: 25,
            work_budget: 2_000_000_000,
            dp_max_quota: 100_000_000,
        }
    }
}

/// Number of winning coalitions, routed to the cheapest applicable counter:
/// the dynamic program for integer games with a modest quota, the
/// generating-function product for integer games with a modest total weight,
/// and subset enumeration as the small-n fallback.
pub fn winning_coalition_count(
    game: &WeightedGame,
    limits: &WorkLimits,
) -> Result<BigUint, BackendError> {
    let n = game.n() as u128;
    if let Some((q, ws)) = rescaled_integer_parts(game) {
        let quota = biguint_to_u128(&q);
        let total: Option<u128> = ws
            .iter()
            .map(biguint_to_u128)
            .try_fold(0u128, |acc, w| acc.checked_add(w?));
        let fits = |per_cell: u128| {
            n.checked_mul(n)
                .and_then(|nn| nn.checked_mul(per_cell))
                .is_some_and(|est| est <= limits.work_budget)
        };
        if let Some(quota) = quota {
            if quota <= limits.dp_max_quota && fits(quota) {
                return Ok(dp::dp_winning_count(game, limits)?);
            }
            if let Some(total) = total {
                if total < u128::MAX && fits(total + 1) {
                    return Ok(gf_full_polynomial(game).tail_sum(&q));
                }
            }
        }
    }
    brute_force_winning_count(game, limits.brute_cap)
}

fn rescaled_integer_parts(game: &WeightedGame) -> Option<(BigUint, Vec<BigUint>)> {
    let (scaled, _) = game.integer_rescale();
    scaled.integer_parts()
}

pub(crate) fn biguint_to_u128(x: &BigUint) -> Option<u128> {
    x.to_u128()
}
