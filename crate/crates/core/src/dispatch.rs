//! Backend selection and cross-checked execution. Structure is tried
//! before counting: a game matching a closed form is answered in closed
//! form, otherwise the counting backends bid with work estimates and the
//! cheapest one inside budget runs. Zero-weight players are set aside up
//! front and folded back into the result at the end.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::classify::{detect_classes, ClassProfile};
use crate::closed_form::{
    dictator_swings, equal_weight_swings, one_distinct_swings, singleton_swings, unanimity_swings,
    unbalanced_swings, unbalanced_threshold,
};
use crate::counting::{
    brute_force_swings, dp_swings, gf_swings, k_value_swings, two_value_swings, WorkLimits,
};
use crate::error::{BackendError, DispatchError};
use crate::game::{assemble_report, CompressedGame, PowerReport, SwingVector, WeightedGame};

/// Every way this crate can compute swing counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Dictator,
    Singleton,
    Unanimity,
    Equal,
    OneDistinct,
    Unbalanced,
    TwoValue,
    KValue,
    Dp,
    Gf,
    Brute,
}

impl Backend {
    pub const ALL: [Backend; 11] = [
        Backend::Dictator,
        Backend::Singleton,
        Backend::Unanimity,
        Backend::Equal,
        Backend::OneDistinct,
        Backend::Unbalanced,
        Backend::TwoValue,
        Backend::KValue,
        Backend::Dp,
        Backend::Gf,
        Backend::Brute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Dictator => "dictator",
            Backend::Singleton => "singleton",
            Backend::Unanimity => "unanimity",
            Backend::Equal => "equal",
            Backend::OneDistinct => "one-distinct",
            Backend::Unbalanced => "unbalanced",
            Backend::TwoValue => "two-value",
            Backend::KValue => "k-value",
            Backend::Dp => "dp",
            Backend::Gf => "gf",
            Backend::Brute => "brute",
        }
    }

    fn why(self) -> &'static str {
        match self {
            Backend::Dictator => "the heaviest player wins alone and the rest together lose",
            Backend::Singleton => "the quota fits within every single weight",
            Backend::Unanimity => "no coalition missing a player reaches the quota",
            Backend::Equal => "all weights are equal",
            Backend::OneDistinct => "one heavy player over a block of equal weights",
            Backend::Unbalanced => "every weight exceeds the sum of all lighter weights",
            Backend::TwoValue => "exactly two distinct weight values",
            Backend::KValue => "class enumeration has the least estimated work",
            Backend::Dp => "the quota-indexed table has the least estimated work",
            Backend::Gf => "the polynomial product has the least estimated work",
            Backend::Brute => "small enough to enumerate every coalition",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Backend::ALL.iter().map(|b| b.name()).collect();
                format!(
                    "unknown backend `{s}`, expected one of: {}",
                    names.join(", ")
                )
            })
    }
}

/// Knobs for `compute` and `plan`.
#[derive(Debug, Clone, Default)]
pub struct ComputeOptions {
    /// Run this backend instead of planning; its preconditions still apply.
    pub forced: Option<Backend>,
    /// Re-run the next applicable backend and require identical results.
    pub crosscheck: bool,
    pub limits: WorkLimits,
}

/// The decision `compute` acts on: which backend, why, and how much work
/// it is expected to do (counting backends only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DispatchPlan {
    pub backend: Backend,
    /// Ordered (label, detail) pairs recording the decision trail.
    pub rationale: Vec<(String, String)>,
    pub cost_estimate: Option<u128>,
}

/// A finished computation: the report plus everything about how it was made.
#[derive(Debug, Clone)]
pub struct ComputeOutcome {
    pub report: PowerReport,
    pub plan: DispatchPlan,
    /// Shape profile of the game with zero-weight players set aside.
    pub profile: ClassProfile,
    pub crosschecked_with: Option<Backend>,
}

/// Drops zero-weight players (always last in canonical order), returning
/// the reduced game and how many were removed. Their swing counts are zero
/// and every other count just doubles per removed player.
fn strip_zero_weights(game: &WeightedGame) -> (WeightedGame, usize) {
    let zeros = game.weights().iter().filter(|w| w.is_zero()).count();
    if zeros == 0 {
        return (game.clone(), 0);
    }
    let ws = game
        .weights()
        .iter()
        .filter(|w| !w.is_zero())
        .map(|w| w.value().clone())
        .collect();
    let stripped = WeightedGame::new(game.quota().clone(), ws)
        .expect("dropping zero weights keeps the game valid");
    (stripped, zeros)
}

fn kv_estimate(cg: &CompressedGame) -> Option<u128> {
    let mut prod = 1u128;
    for c in cg.classes() {
        prod = prod.checked_mul(c.count as u128 + 1)?;
    }
    (cg.k() as u128).checked_mul(prod)
}

fn rescaled_quota_and_total(game: &WeightedGame) -> (BigUint, BigUint) {
    let (scaled, _) = game.integer_rescale();
    let (q, ws) = scaled
        .integer_parts()
        .expect("rescaled game has integer parts");
    let total = ws.iter().sum();
    (q, total)
}

fn dp_estimate(n: usize, quota: &BigUint, limits: &WorkLimits) -> Option<u128> {
    let q = quota.to_u128()?;
    if q > limits.dp_max_quota {
        return None;
    }
    (n as u128).checked_mul(n as u128)?.checked_mul(q)
}

fn gf_estimate(n: usize, total: &BigUint) -> Option<u128> {
    let t = total.to_u128()?;
    (n as u128)
        .checked_mul(n as u128)?
        .checked_mul(t.checked_add(1)?)
}

fn brute_estimate(n: usize) -> Option<u128> {
    if n > 63 {
        return None;
    }
    (1u128 << n).checked_mul(n as u128)
}

/// Backends able to answer this game, best first: closed forms in priority
/// order, then counting backends by estimated work, then enumeration.
/// Estimates accompany the counting group. Zero-weight players are set
/// aside before judging shape, exactly as `compute` will.
pub fn applicable_backends(
    game: &WeightedGame,
    limits: &WorkLimits,
) -> Vec<(Backend, Option<u128>)> {
    let (stripped, _) = strip_zero_weights(game);
    let profile = detect_classes(&stripped);
    applicable_inner(&stripped, &profile, limits)
}

fn applicable_inner(
    stripped: &WeightedGame,
    profile: &ClassProfile,
    limits: &WorkLimits,
) -> Vec<(Backend, Option<u128>)> {
    let mut list: Vec<(Backend, Option<u128>)> = Vec::new();
    let cg = stripped.compress();
    if profile.dictator_index == Some(0) {
        list.push((Backend::Dictator, None));
    }
    if profile.singleton_region {
        list.push((Backend::Singleton, None));
    }
    if profile.unanimity_region {
        list.push((Backend::Unanimity, None));
    }
    if profile.all_equal {
        list.push((Backend::Equal, None));
    }
    // The one-distinct form also needs the quota beyond the light weight;
    // below that the singleton route already owns the game.
    if cg.k() == 2
        && cg.classes()[0].count == 1
        && stripped.quota() > cg.classes()[1].weight.value()
    {
        list.push((Backend::OneDistinct, None));
    }
    if profile.min_unbalance_order == Some(1) {
        list.push((Backend::Unbalanced, None));
    }
    if cg.k() == 2 {
        list.push((Backend::TwoValue, None));
    }

    let n = stripped.n();
    let (quota, total) = rescaled_quota_and_total(stripped);
    let mut costed: Vec<(Backend, u128)> = Vec::new();
    if let Some(e) = kv_estimate(&cg) {
        if e <= limits.work_budget {
            costed.push((Backend::KValue, e));
        }
    }
    if let Some(e) = dp_estimate(n, &quota, limits) {
        if e <= limits.work_budget {
            costed.push((Backend::Dp, e));
        }
    }
    if let Some(e) = gf_estimate(n, &total) {
        if e <= limits.work_budget {
            costed.push((Backend::Gf, e));
        }
    }
    // Stable sort: candidates were pushed in tie-break order already.
    costed.sort_by_key(|&(_, e)| e);
    list.extend(costed.into_iter().map(|(b, e)| (b, Some(e))));

    if n <= limits.brute_cap {
        list.push((Backend::Brute, brute_estimate(n)));
    }
    list
}

/// Runs one backend on a game as given, no planning, stripping, or
/// cross-checking. The winning-coalition count comes back only from
/// backends that produce it on the way.
pub fn execute(
    game: &WeightedGame,
    backend: Backend,
    limits: &WorkLimits,
) -> Result<(SwingVector, Option<BigUint>), BackendError> {
    let over_budget = |est: Option<u128>, name: &'static str| match est {
        Some(e) if e <= limits.work_budget => Ok(()),
        Some(e) => Err(BackendError::BudgetExceeded {
            backend: name,
            estimate: e.to_string(),
            budget: limits.work_budget.to_string(),
        }),
        None => Err(BackendError::BudgetExceeded {
            backend: name,
            estimate: "beyond 2^128".into(),
            budget: limits.work_budget.to_string(),
        }),
    };
    match backend {
        Backend::Dictator => dictator_swings(game).map(|(sv, w)| (sv, Some(w))),
        Backend::Singleton => singleton_swings(game).map(|(sv, w)| (sv, Some(w))),
        Backend::Unanimity => unanimity_swings(game).map(|(sv, w)| (sv, Some(w))),
        Backend::Equal => {
            let cg = game.compress();
            if cg.k() != 1 {
                return Err(BackendError::Precondition {
                    backend: "equal-weight",
                    reason: "weights are not all equal".into(),
                });
            }
            equal_weight_swings(game.n(), &game.weights()[0], game.quota())
                .map(|(sv, w)| (sv, Some(w)))
        }
        Backend::OneDistinct => one_distinct_swings(&game.compress()).map(|sv| (sv, None)),
        Backend::Unbalanced => {
            let t = unbalanced_threshold(game)?;
            let sv = unbalanced_swings(game)?;
            Ok((sv, Some(t.winning_count())))
        }
        Backend::TwoValue => two_value_swings(&game.compress()).map(|sv| (sv, None)),
        Backend::KValue => {
            let cg = game.compress();
            over_budget(kv_estimate(&cg), "k-value")?;
            k_value_swings(&cg).map(|sv| (sv, None))
        }
        Backend::Dp => {
            let (quota, _) = rescaled_quota_and_total(game);
            if let Some(q) = quota.to_u128() {
                let est = (game.n() as u128)
                    .checked_mul(game.n() as u128)
                    .and_then(|nn| nn.checked_mul(q));
                over_budget(est, "dynamic-program")?;
            }
            dp_swings(game, limits).map(|(sv, w)| (sv, Some(w)))
        }
        Backend::Gf => {
            let (_, total) = rescaled_quota_and_total(game);
            over_budget(gf_estimate(game.n(), &total), "polynomial-product")?;
            gf_swings(game).map(|(sv, w)| (sv, Some(w)))
        }
        Backend::Brute => brute_force_swings(game, limits.brute_cap).map(|(sv, w)| (sv, Some(w))),
    }
}

fn plan_stripped(
    stripped: &WeightedGame,
    zeros: usize,
    profile: &ClassProfile,
    options: &ComputeOptions,
) -> Result<DispatchPlan, DispatchError> {
    let mut rationale: Vec<(String, String)> = Vec::new();
    if zeros > 0 {
        rationale.push((
            "dummies".into(),
            format!("{zeros} zero-weight players set aside"),
        ));
    }
    if let Some(forced) = options.forced {
        rationale.push(("forced".into(), forced.name().into()));
        let cost_estimate = applicable_inner(stripped, profile, &options.limits)
            .into_iter()
            .find(|&(b, _)| b == forced)
            .and_then(|(_, e)| e);
        return Ok(DispatchPlan {
            backend: forced,
            rationale,
            cost_estimate,
        });
    }
    let list = applicable_inner(stripped, profile, &options.limits);
    for (b, est) in &list {
        if let Some(e) = est {
            rationale.push((format!("estimate {}", b.name()), e.to_string()));
        }
    }
    match list.first() {
        Some(&(backend, cost_estimate)) => {
            rationale.push((backend.name().into(), backend.why().into()));
            Ok(DispatchPlan {
                backend,
                rationale,
                cost_estimate,
            })
        }
        None => Err(DispatchError::NoApplicableBackend {
            reason: format!(
                "{} players exceed the enumeration cap {} and every counting estimate is over the work budget {}",
                stripped.n(),
                options.limits.brute_cap,
                options.limits.work_budget
            ),
            hint: "raise the work budget or the enumeration cap, or force a backend".into(),
        }),
    }
}

/// Chooses the backend `compute` would run for this game, with rationale.
pub fn plan(game: &WeightedGame, options: &ComputeOptions) -> Result<DispatchPlan, DispatchError> {
    let (stripped, zeros) = strip_zero_weights(game);
    let profile = detect_classes(&stripped);
    plan_stripped(&stripped, zeros, &profile, options)
}

/// Full pipeline: set dummies aside, plan, run, optionally cross-check
/// against the next applicable backend, fold dummies back in, and report
/// in the caller's player order.
pub fn compute(
    game: &WeightedGame,
    options: &ComputeOptions,
) -> Result<ComputeOutcome, DispatchError> {
    let (stripped, zeros) = strip_zero_weights(game);
    let profile = detect_classes(&stripped);
    let plan = plan_stripped(&stripped, zeros, &profile, options)?;
    let (sv, mut winning) = execute(&stripped, plan.backend, &options.limits)?;

    let mut crosschecked_with = None;
    if options.crosscheck {
        let second = applicable_inner(&stripped, &profile, &options.limits)
            .into_iter()
            .map(|(b, _)| b)
            .find(|&b| b != plan.backend);
        if let Some(second) = second {
            let (sv2, winning2) = execute(&stripped, second, &options.limits)?;
            if sv2 != sv {
                let i = (0..sv.len())
                    .find(|&i| sv.get(i) != sv2.get(i))
                    .expect("vectors differ");
                return Err(DispatchError::CrosscheckMismatch {
                    primary: plan.backend.name().into(),
                    secondary: second.name().into(),
                    detail: format!(
                        "swing counts differ at canonical position {}: {} vs {}",
                        i + 1,
                        sv.get(i),
                        sv2.get(i)
                    ),
                });
            }
            if let (Some(a), Some(b)) = (&winning, &winning2) {
                if a != b {
                    return Err(DispatchError::CrosscheckMismatch {
                        primary: plan.backend.name().into(),
                        secondary: second.name().into(),
                        detail: format!("winning-coalition counts differ: {a} vs {b}"),
                    });
                }
            }
            winning = winning.or(winning2);
            crosschecked_with = Some(second);
        }
    }

    let mut full: Vec<BigUint> = sv.iter().map(|s| s << zeros).collect();
    full.extend(std::iter::repeat(BigUint::zero()).take(zeros));
    let winning = winning.map(|w| w << zeros);
    let report = assemble_report(game, &SwingVector::new(full), winning)?;
    Ok(ComputeOutcome {
        report,
        plan,
        profile,
        crosschecked_with,
    })
}
