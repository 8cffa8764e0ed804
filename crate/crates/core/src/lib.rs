//! Exact Banzhaf voting-power computation for weighted voting games.
//!
//! A weighted voting game gives each player a non-negative weight; a
//! coalition wins when its total weight reaches the quota. A player swings
//! for a coalition of the others when joining it turns a loss into a win,
//! and the Banzhaf measures normalize those swing counts: the index over
//! total swings, the probabilistic index over the 2^(n-1) coalitions of the
//! others, and the collectivity's power to act as the winning fraction of
//! all 2^n coalitions.
//!
//! Everything here is exact. Weights and quotas are arbitrary-precision
//! rationals, counts are big integers, and every backend returns the same
//! numbers or an error, never an approximation. Games with recognizable
//! structure (a dictator, extreme quotas, equal weights, one heavy player,
//! unbalanced weight decay, few distinct values) are answered in closed
//! form; the rest route to a quota-indexed dynamic program, a polynomial
//! product, or plain subset enumeration, whichever estimates cheapest
//! within the configured work budget.
//!
//! ```
//! use banzhaf_core::{compute, parse_game, ComputeOptions};
//!
//! let game = parse_game("6; 5, 4, 1").unwrap();
//! let out = compute(&game, &ComputeOptions::default()).unwrap();
//! let shares: Vec<String> = out.report.banzhaf.iter().map(|b| b.to_string()).collect();
//! assert_eq!(shares, ["3/5", "1/5", "1/5"]);
//! ```

pub mod binomial;
pub mod classify;
pub mod closed_form;
pub mod counting;
pub mod dispatch;
pub mod error;
pub mod game;
pub mod instances;

pub use classify::{detect_classes, geometric_for, is_dictator, ClassProfile};
pub use dispatch::{
    applicable_backends, compute, execute, plan, Backend, ComputeOptions, ComputeOutcome,
    DispatchPlan,
};
pub use error::{BackendError, ClassifyError, DispatchError, GameError, InstanceError};
pub use game::{
    assemble_report, game_to_json, game_to_text, parse_exact_numeral, parse_game, parse_game_json,
    parse_game_text, CompressedGame, PowerReport, Rational, SwingVector, Weight, WeightClass,
    WeightedGame,
};
pub use instances::{
    gen_3game, gen_reduction, random_game, subset_sum_oracle, GameShape, SubsetSumInstance,
};
