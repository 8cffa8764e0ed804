//! Built-in benchmark ladders, one per counting backend. Purely
//! observational: rows report the planner's work estimate next to the
//! measured wall time, never a pass/fail verdict.

use std::time::Instant;

use clap::ValueEnum;

use banzhaf_core::counting::{gf_full_polynomial, WorkLimits};
use banzhaf_core::{applicable_backends, execute, gen_3game, Backend, WeightedGame};

use crate::Failure;

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    /// Three weight classes, player counts 30 to 1000.
    Kvalue,
    /// 100 players, quotas 1e3 to 1e5.
    Dp,
    /// Paired power-of-three games, 8 to 20 players.
    Gf,
}

fn estimate(game: &WeightedGame, backend: Backend, limits: &WorkLimits) -> String {
    applicable_backends(game, limits)
        .into_iter()
        .find(|(b, _)| *b == backend)
        .and_then(|(_, est)| est)
        .map(|e| e.to_string())
        .unwrap_or_default()
}

fn row(
    suite: &str,
    backend: Backend,
    size: impl ToString,
    game: &WeightedGame,
    c_terms: Option<usize>,
    limits: &WorkLimits,
) -> Result<String, Failure> {
    let est = estimate(game, backend, limits);
    let start = Instant::now();
    execute(game, backend, limits).map_err(Failure::no_backend)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let c = c_terms.map(|c| c.to_string()).unwrap_or_default();
    Ok(format!(
        "{suite},{},{},{est},{wall_ms:.3},{c}",
        backend.name(),
        size.to_string(),
    ))
}

/// Three classes with values 3, 2, 1 in near-equal counts, quota just
/// past half the total.
fn three_class_game(n: usize) -> WeightedGame {
    let k = n / 3;
    let mut ws = vec![3u64; n - 2 * k];
    ws.extend(vec![2u64; k]);
    ws.extend(vec![1u64; k]);
    let total: u64 = ws.iter().sum();
    WeightedGame::from_integers(total / 2 + 1, &ws).expect("ladder game is valid")
}

/// Fixed spread of weights around 2000 so every ladder quota is reachable.
fn dp_ladder_game(n: usize, quota: u64) -> WeightedGame {
    let ws: Vec<u64> = (0..n).map(|i| 1000 + (i as u64 * 37) % 2001).collect();
    WeightedGame::from_integers(quota, &ws).expect("ladder game is valid")
}

pub fn run(suite: Suite) -> Result<String, Failure> {
    let limits = WorkLimits::default();
    let mut lines = vec!["suite,backend,size,est_ops,wall_ms,c_terms".to_string()];
    match suite {
        Suite::Kvalue => {
            for n in [30usize, 100, 300, 1000] {
                let game = three_class_game(n);
                lines.push(row("kvalue", Backend::KValue, n, &game, None, &limits)?);
            }
        }
        Suite::Dp => {
            for quota in [1_000u64, 10_000, 100_000] {
                let game = dp_ladder_game(100, quota);
                lines.push(row("dp", Backend::Dp, quota, &game, None, &limits)?);
            }
        }
        Suite::Gf => {
            for m in 4..=10usize {
                let game = gen_3game(m)?;
                let c_terms = gf_full_polynomial(&game).term_count();
                lines.push(row("gf", Backend::Gf, m, &game, Some(c_terms), &limits)?);
            }
        }
    }
    Ok(lines.join("\n"))
}
