//! Report rendering. Every number is exact; decimal columns appear only
//! on request and are explicitly marked approximate.

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Value};

use banzhaf_core::{ComputeOutcome, Rational, WeightedGame};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Rounds a nonnegative rational to `places` digits, half away from zero.
fn decimal(r: &Rational, places: u32) -> String {
    let ten = BigUint::from(10u32).pow(places);
    let num = r.numer().magnitude() * &ten;
    let den = r.denom().magnitude();
    let rounded = (&num + den / 2u32) / den;
    let whole = &rounded / &ten;
    let frac = &rounded % &ten;
    if places == 0 {
        whole.to_string()
    } else {
        format!("{whole}.{frac:0>width$}", width = places as usize)
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn render(
    game: &WeightedGame,
    outcome: &ComputeOutcome,
    format: Format,
    places: Option<u32>,
) -> String {
    match format {
        Format::Json => render_json(outcome, places).to_string(),
        Format::Csv => render_csv(game, outcome, places),
        Format::Table => render_table(game, outcome, places),
    }
}

fn render_json(outcome: &ComputeOutcome, places: Option<u32>) -> Value {
    let report = &outcome.report;
    let mut obj = json!({
        "backend": outcome.plan.backend.name(),
        "swings": strings(&report.swings),
        "total_swings": report.total_swings.to_string(),
        "banzhaf": strings(&report.banzhaf),
        "prob_banzhaf": strings(&report.prob_banzhaf),
        "winning_count": report.winning_count.as_ref().map(|w| w.to_string()),
        "coleman_a": report.coleman_a.as_ref().map(|a| a.to_string()),
        "classes": outcome.profile.to_json(),
    });
    let map = obj.as_object_mut().expect("report object");
    if let Some(second) = outcome.crosschecked_with {
        map.insert("crosschecked_with".into(), json!(second.name()));
    }
    if let Some(p) = places {
        map.insert(
            "approx".into(),
            json!({
                "decimal_places": p,
                "banzhaf": report.banzhaf.iter().map(|b| decimal(b, p)).collect::<Vec<_>>(),
                "prob_banzhaf": report.prob_banzhaf.iter().map(|b| decimal(b, p)).collect::<Vec<_>>(),
                "coleman_a": report.coleman_a.as_ref().map(|a| decimal(a, p)),
            }),
        );
    }
    obj
}

fn render_csv(game: &WeightedGame, outcome: &ComputeOutcome, places: Option<u32>) -> String {
    let report = &outcome.report;
    let weights = game.caller_weights();
    let mut lines = Vec::with_capacity(report.n + 1);
    let mut header = "player,weight,swings,banzhaf,prob_banzhaf".to_string();
    if places.is_some() {
        header.push_str(",banzhaf_approx,prob_banzhaf_approx");
    }
    lines.push(header);
    for i in 0..report.n {
        let mut row = format!(
            "{},{},{},{},{}",
            i + 1,
            weights[i],
            report.swings[i],
            report.banzhaf[i],
            report.prob_banzhaf[i],
        );
        if let Some(p) = places {
            row.push_str(&format!(
                ",{},{}",
                decimal(&report.banzhaf[i], p),
                decimal(&report.prob_banzhaf[i], p)
            ));
        }
        lines.push(row);
    }
    lines.join("\n")
}

fn render_table(game: &WeightedGame, outcome: &ComputeOutcome, places: Option<u32>) -> String {
    let report = &outcome.report;
    let weights = game.caller_weights();
    let approx = |r: &Rational| match places {
        Some(p) => format!("{r} (~{})", decimal(r, p)),
        None => r.to_string(),
    };

    let mut head = format!("backend: {}", outcome.plan.backend.name());
    if let Some(second) = outcome.crosschecked_with {
        head.push_str(&format!(" (cross-checked with {})", second.name()));
    }
    let mut lines = vec![head];
    if let Some(w) = &report.winning_count {
        let den = BigUint::from(1u32) << report.n;
        lines.push(format!("winning coalitions: {w} / {den}"));
    }
    if let Some(a) = &report.coleman_a {
        lines.push(format!("collectivity to act: {}", approx(a)));
    }
    lines.push(format!("total swings: {}", report.total_swings));
    lines.push(String::new());

    let headers = ["player", "weight", "swings", "banzhaf", "prob_banzhaf"];
    let mut rows: Vec<[String; 5]> = Vec::with_capacity(report.n);
    for i in 0..report.n {
        rows.push([
            (i + 1).to_string(),
            weights[i].to_string(),
            report.swings[i].to_string(),
            approx(&report.banzhaf[i]),
            approx(&report.prob_banzhaf[i]),
        ]);
    }
    let width = |c: usize| {
        rows.iter()
            .map(|r| r[c].len())
            .chain([headers[c].len()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..5).map(width).collect();
    let fmt_row = |cells: [&str; 5]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    lines.push(fmt_row([
        headers[0], headers[1], headers[2], headers[3], headers[4],
    ]));
    for r in &rows {
        lines.push(fmt_row([&r[0], &r[1], &r[2], &r[3], &r[4]]));
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::decimal;
    use banzhaf_core::parse_exact_numeral;

    #[test]
    fn decimals_round_half_away_from_zero() {
        let r = parse_exact_numeral("3/5").unwrap();
        assert_eq!(decimal(&r, 3), "0.600");
        let r = parse_exact_numeral("1/3").unwrap();
        assert_eq!(decimal(&r, 4), "0.3333");
        let r = parse_exact_numeral("1/8").unwrap();
        assert_eq!(decimal(&r, 2), "0.13");
        let r = parse_exact_numeral("5/2").unwrap();
        assert_eq!(decimal(&r, 0), "3");
        let r = parse_exact_numeral("999/1000").unwrap();
        assert_eq!(decimal(&r, 2), "1.00");
    }
}
