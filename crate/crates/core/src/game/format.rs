//! Text and JSON formats for games.
//!
//! Text: `q; w1, w2, ...`. JSON: `{"quota": q, "weights": [w1, ...]}`.
//! Numerals are exact: integers, decimals, or `p/q` fractions, as strings or
//! JSON integers. Float literals are rejected rather than rounded.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::Value;

use super::{Rational, WeightedGame};
use crate::error::GameError;

/// Parses an exact numeral: `123`, `-4`, `1.25`, or `3/2`.
pub fn parse_exact_numeral(s: &str) -> Result<Rational, GameError> {
    let raw = s.trim();
    let err = || GameError::MalformedNumeral(raw.to_string());
    let (neg, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw.strip_prefix('+').unwrap_or(raw)),
    };
    let body = body.trim();
    if body.is_empty() {
        return Err(err());
    }
    let digits = |p: &str| -> Result<BigInt, GameError> {
        if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        p.parse::<BigInt>().map_err(|_| err())
    };
    let mag = if let Some((num, den)) = body.split_once('/') {
        let num = digits(num.trim())?;
        let den = digits(den.trim())?;
        if den.is_zero() {
            return Err(err());
        }
        Rational::new(num, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        // At least one side must carry digits; "1." and ".5" both read fine.
        if int.is_empty() && frac.is_empty() {
            return Err(err());
        }
        let int = if int.is_empty() {
            BigInt::zero()
        } else {
            digits(int)?
        };
        let (frac, scale) = if frac.is_empty() {
            (BigInt::zero(), BigInt::from(1))
        } else {
            (digits(frac)?, BigInt::from(10).pow(frac.len() as u32))
        };
        Rational::new(int * &scale + frac, scale)
    } else {
        Rational::from_integer(digits(body)?)
    };
    Ok(if neg { -mag } else { mag })
}

/// Parses a game from either supported format, deciding by the first
/// non-whitespace character.
pub fn parse_game(text: &str) -> Result<WeightedGame, GameError> {
    if text.trim_start().starts_with('{') {
        parse_game_json(text)
    } else {
        parse_game_text(text)
    }
}

/// Parses the `q; w1, w2, ...` form.
pub fn parse_game_text(text: &str) -> Result<WeightedGame, GameError> {
    let text = text.trim();
    let (q, ws) = text
        .split_once(';')
        .ok_or_else(|| GameError::MalformedGame("expected `quota; w1, w2, ...`".into()))?;
    let quota = parse_exact_numeral(q)?;
    let ws = ws.trim();
    if ws.is_empty() {
        return Err(GameError::EmptyPlayers);
    }
    let weights = ws
        .split(',')
        .map(parse_exact_numeral)
        .collect::<Result<Vec<_>, _>>()?;
    WeightedGame::new(quota, weights)
}

fn numeral_from_value(v: &Value) -> Result<Rational, GameError> {
    match v {
        Value::String(s) => parse_exact_numeral(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(BigInt::from(u)))
            } else {
                // A float literal has no exact reading; require a string.
                Err(GameError::MalformedNumeral(n.to_string()))
            }
        }
        other => Err(GameError::MalformedNumeral(other.to_string())),
    }
}

/// Parses the JSON object form.
pub fn parse_game_json(text: &str) -> Result<WeightedGame, GameError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| GameError::MalformedGame(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| GameError::MalformedGame("expected a JSON object".into()))?;
    let quota = numeral_from_value(
        obj.get("quota")
            .ok_or_else(|| GameError::MalformedGame("missing \"quota\"".into()))?,
    )?;
    let ws = obj
        .get("weights")
        .ok_or_else(|| GameError::MalformedGame("missing \"weights\"".into()))?
        .as_array()
        .ok_or_else(|| GameError::MalformedGame("\"weights\" must be an array".into()))?;
    let weights = ws
        .iter()
        .map(numeral_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    WeightedGame::new(quota, weights)
}

/// Renders a game in the text form, canonical order.
pub fn game_to_text(game: &WeightedGame) -> String {
    let ws: Vec<String> = game.weights().iter().map(|w| w.to_string()).collect();
    format!("{}; {}", game.quota(), ws.join(", "))
}

/// Renders a game in the JSON form, canonical order, numerals as strings.
pub fn game_to_json(game: &WeightedGame) -> Value {
    Value::Object(
        [
            ("quota".to_string(), Value::String(game.quota().to_string())),
            (
                "weights".to_string(),
                Value::Array(
                    game.weights()
                        .iter()
                        .map(|w| Value::String(w.to_string()))
                        .collect(),
                ),
            ),
        ]
        .into_iter()
        .collect(),
    )
}
