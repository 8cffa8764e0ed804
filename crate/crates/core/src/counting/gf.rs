//! Generating-function backend. The product of (1 + x^w) over a set of
//! players expands to a polynomial whose coefficient at e counts the
//! subsets weighing exactly e, so swing windows and winning counts become
//! coefficient sums. Polynomials stay sparse: only exponents that are
//! actual subset sums ever appear.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::BackendError;
use crate::game::{SwingVector, WeightedGame};

/// Polynomial with non-negative big-integer exponents and coefficients,
/// kept as term pairs sorted by ascending exponent, zero coefficients
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    terms: Vec<(BigUint, BigUint)>,
}

impl SparsePolynomial {
    /// The constant polynomial 1.
    pub fn one() -> Self {
        SparsePolynomial {
            terms: vec![(BigUint::zero(), BigUint::one())],
        }
    }

    pub fn terms(&self) -> &[(BigUint, BigUint)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Highest exponent, None for the zero polynomial.
    pub fn degree(&self) -> Option<&BigUint> {
        self.terms.last().map(|(e, _)| e)
    }

    pub fn coefficient(&self, e: &BigUint) -> BigUint {
        match self.terms.binary_search_by(|(te, _)| te.cmp(e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigUint::zero(),
        }
    }

    /// Sum of all coefficients; the subset count, 2^(players folded in).
    pub fn coeff_total(&self) -> BigUint {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Sum of coefficients with exponent in [lo, hi).
    pub fn window_sum(&self, lo: &BigUint, hi: &BigUint) -> BigUint {
        self.terms
            .iter()
            .skip_while(|(e, _)| e < lo)
            .take_while(|(e, _)| e < hi)
            .map(|(_, c)| c)
            .sum()
    }

    /// Sum of coefficients with exponent at least lo.
    pub fn tail_sum(&self, lo: &BigUint) -> BigUint {
        self.terms
            .iter()
            .rev()
            .take_while(|(e, _)| e >= lo)
            .map(|(_, c)| c)
            .sum()
    }

    /// Multiplies by (1 + x^w): a sorted merge of the terms with their
    /// w-shifted copies. Weight zero lands every term on itself, doubling.
    pub fn mul_one_plus_pow(&mut self, w: &BigUint) {
        if w.is_zero() {
            for (_, c) in &mut self.terms {
                *c <<= 1;
            }
            return;
        }
        let old = std::mem::take(&mut self.terms);
        let mut merged: Vec<(BigUint, BigUint)> = Vec::with_capacity(old.len() * 2);
        let mut shifted = old.iter().map(|(e, c)| (e + w, c.clone())).peekable();
        let mut plain = old.iter().peekable();
        loop {
            use std::cmp::Ordering;
            let order = match (plain.peek(), shifted.peek()) {
                (Some(p), Some(s)) => p.0.cmp(&s.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match order {
                Ordering::Less => {
                    let (e, c) = plain.next().unwrap();
                    merged.push((e.clone(), c.clone()));
                }
                Ordering::Greater => merged.push(shifted.next().unwrap()),
                Ordering::Equal => {
                    let (e, c) = plain.next().unwrap();
                    let (_, sc) = shifted.next().unwrap();
                    merged.push((e.clone(), c + sc));
                }
            }
        }
        self.terms = merged;
    }

    /// Divides by (1 + x^w) exactly, the inverse of `mul_one_plus_pow`.
    /// Runs the recurrence ascending; underflow would mean the divisor was
    /// never a factor, which the exact subtraction catches.
    fn div_one_plus_pow(&self, w: &BigUint) -> SparsePolynomial {
        if w.is_zero() {
            let terms = self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c >> 1))
                .collect();
            return SparsePolynomial { terms };
        }
        let mut out: Vec<(BigUint, BigUint)> = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            if *e >= *w {
                let target = e - w;
                if let Ok(i) = out.binary_search_by(|(oe, _)| oe.cmp(&target)) {
                    let prev = out[i].1.clone();
                    coeff -= prev;
                }
            }
            if !coeff.is_zero() {
                out.push((e.clone(), coeff));
            }
        }
        SparsePolynomial { terms: out }
    }
}

fn integer_weights(game: &WeightedGame) -> (BigUint, Vec<BigUint>) {
    let (scaled, _) = game.integer_rescale();
    scaled
        .integer_parts()
        .expect("rescaled game has integer parts")
}

/// Product of (1 + x^w) over all players except `skip` (pass n to keep all).
fn product_skipping(weights: &[BigUint], skip: usize) -> SparsePolynomial {
    let mut poly = SparsePolynomial::one();
    for (j, w) in weights.iter().enumerate() {
        if j != skip {
            poly.mul_one_plus_pow(w);
        }
    }
    poly
}

/// Integer weights in the game's own units: denominators are cleared but
/// no common factor is divided out, so an integer game keeps its exponents.
fn natural_integer_weights(game: &WeightedGame) -> Vec<BigUint> {
    if let Some((_, ws)) = game.integer_parts() {
        return ws;
    }
    let mut lcd = game.quota().denom().clone();
    for w in game.weights() {
        lcd = num_integer::Integer::lcm(&lcd, w.value().denom());
    }
    let factor = crate::game::Rational::from_integer(lcd);
    let (_, ws) = game
        .scale(&factor)
        .expect("least common denominator is positive")
        .integer_parts()
        .expect("denominators cleared");
    ws
}

/// Subset-sum polynomial of everyone but canonical player i. Exponents are
/// in the game's own units (denominators cleared if any).
pub fn gf_player_polynomial(game: &WeightedGame, i: usize) -> SparsePolynomial {
    product_skipping(&natural_integer_weights(game), i)
}

/// Subset-sum polynomial of the whole game, same units as per player.
pub fn gf_full_polynomial(game: &WeightedGame) -> SparsePolynomial {
    let ws = natural_integer_weights(game);
    product_skipping(&ws, ws.len())
}

/// Swings and winning count from per-player polynomial products. Player i
/// swings for the subsets of the others weighing in [q - w_i, q).
pub fn gf_swings(game: &WeightedGame) -> Result<(SwingVector, BigUint), BackendError> {
    let (q, ws) = integer_weights(game);
    let n = ws.len();
    let mut swings = Vec::with_capacity(n);
    for i in 0..n {
        let poly = product_skipping(&ws, i);
        let lo = if ws[i] >= q {
            BigUint::zero()
        } else {
            &q - &ws[i]
        };
        swings.push(poly.window_sum(&lo, &q));
    }
    let full = product_skipping(&ws, n);
    Ok((SwingVector::new(swings), full.tail_sum(&q)))
}

/// Same swings from a single full product, dividing each player's factor
/// back out instead of rebuilding without it.
pub fn gf_swings_via_division(game: &WeightedGame) -> Result<(SwingVector, BigUint), BackendError> {
    let (q, ws) = integer_weights(game);
    let full = product_skipping(&ws, ws.len());
    let mut swings = Vec::with_capacity(ws.len());
    for w in &ws {
        let poly = full.div_one_plus_pow(w);
        let lo = if w >= &q { BigUint::zero() } else { &q - w };
        swings.push(poly.window_sum(&lo, &q));
    }
    let winning = full.tail_sum(&q);
    Ok((SwingVector::new(swings), winning))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::brute_force_swings;
    use crate::game::parse_game;

    fn terms_u64(p: &SparsePolynomial) -> Vec<(u64, u64)> {
        p.terms()
            .iter()
            .map(|(e, c)| {
                (
                    e.to_u64_digits().first().copied().unwrap_or(0),
                    c.to_u64_digits().first().copied().unwrap_or(0),
                )
            })
            .collect()
    }

    #[test]
    fn player_polynomials_of_the_worked_example() {
        let game = parse_game("6; 5, 4, 1").unwrap();
        let b1 = gf_player_polynomial(&game, 0);
        assert_eq!(terms_u64(&b1), vec![(0, 1), (1, 1), (4, 1), (5, 1)]);
        let b2 = gf_player_polynomial(&game, 1);
        assert_eq!(terms_u64(&b2), vec![(0, 1), (1, 1), (5, 1), (6, 1)]);
        let b3 = gf_player_polynomial(&game, 2);
        assert_eq!(terms_u64(&b3), vec![(0, 1), (4, 1), (5, 1), (9, 1)]);

        let (sv, w) = gf_swings(&game).unwrap();
        let got: Vec<u64> = sv
            .iter()
            .map(|s| s.to_u64_digits().first().copied().unwrap_or(0))
            .collect();
        assert_eq!(got, vec![3, 1, 1]);
        assert_eq!(w, BigUint::from(3u32));
    }

    #[test]
    fn repeated_weights_accumulate_coefficients() {
        let game = parse_game("4; 3, 2, 2, 2").unwrap();
        let full = gf_full_polynomial(&game);
        // (1+x^3)(1+x^2)^3 has coefficient 3 at x^2 and at x^4.
        assert_eq!(full.coefficient(&BigUint::from(2u32)), BigUint::from(3u32));
        assert_eq!(full.coefficient(&BigUint::from(4u32)), BigUint::from(3u32));
        assert_eq!(full.coeff_total(), BigUint::from(16u32));
    }

    #[test]
    fn normalization_and_degree() {
        let game = parse_game("12; 9, 5, 3, 2, 2, 1").unwrap();
        let total = BigUint::from(22u32);
        let (_, ws) = game.integer_parts().unwrap();
        for i in 0..game.n() {
            let p = gf_player_polynomial(&game, i);
            assert_eq!(p.coeff_total(), BigUint::from(32u32));
            assert_eq!(p.degree().unwrap(), &(&total - &ws[i]));
        }
    }

    #[test]
    fn division_matches_rebuild() {
        for text in [
            "6; 5, 4, 1",
            "4; 3, 2, 2, 2",
            "12; 9, 5, 3, 2, 2, 1",
            "3; 2, 2, 0",
        ] {
            let game = parse_game(text).unwrap();
            let (a, wa) = gf_swings(&game).unwrap();
            let (b, wb) = gf_swings_via_division(&game).unwrap();
            assert_eq!(a, b, "{text}");
            assert_eq!(wa, wb, "{text}");
            let (bsv, bw) = brute_force_swings(&game, 25).unwrap();
            assert_eq!(a, bsv, "{text}");
            assert_eq!(wa, bw, "{text}");
        }
    }

    #[test]
    fn zero_weights_double_without_new_terms() {
        let game = parse_game("3; 2, 2, 0").unwrap();
        let full = gf_full_polynomial(&game);
        assert_eq!(terms_u64(&full), vec![(0, 2), (2, 4), (4, 2)]);
        let (sv, w) = gf_swings(&game).unwrap();
        let got: Vec<u64> = sv
            .iter()
            .map(|s| s.to_u64_digits().first().copied().unwrap_or(0))
            .collect();
        assert_eq!(got, vec![2, 2, 0]);
        assert_eq!(w, BigUint::from(2u32));
    }

    #[test]
    fn rational_games_rescale_first() {
        let game = parse_game("3; 5/2, 2, 1/2").unwrap();
        let (sv, w) = gf_swings(&game).unwrap();
        let got: Vec<u64> = sv
            .iter()
            .map(|s| s.to_u64_digits().first().copied().unwrap_or(0))
            .collect();
        assert_eq!(got, vec![3, 1, 1]);
        assert_eq!(w, BigUint::from(3u32));
    }

    #[test]
    fn window_and_tail_sums() {
        let game = parse_game("6; 5, 4, 1").unwrap();
        let full = gf_full_polynomial(&game);
        // Full product: 1 + x + x^4 + x^5 + x^5 + x^6 + x^9 + x^10.
        assert_eq!(full.tail_sum(&BigUint::from(6u32)), BigUint::from(3u32));
        assert_eq!(
            full.window_sum(&BigUint::from(4u32), &BigUint::from(6u32)),
            BigUint::from(3u32)
        );
        assert_eq!(full.tail_sum(&BigUint::zero()), BigUint::from(8u32));
        assert_eq!(full.coefficient(&BigUint::from(5u32)), BigUint::from(2u32));
    }
}
