//! Algebraic laws that must hold on arbitrary games, checked against
//! randomly drawn inputs. The enumeration backend is the reference
//! everywhere a second opinion is needed.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use banzhaf_core::closed_form::unbalanced_threshold;
use banzhaf_core::counting::{
    brute_force_swings, dp_swings, dp_swings_downdating, gf_player_polynomial, gf_swings,
    WorkLimits,
};
use banzhaf_core::{
    detect_classes, game_to_json, game_to_text, parse_game, parse_game_json, random_game,
    GameShape, Rational, WeightedGame,
};

fn integer_game(max_n: usize, max_w: u64) -> impl Strategy<Value = WeightedGame> {
    prop::collection::vec(1..=max_w, 1..=max_n)
        .prop_flat_map(|ws| {
            let total: u64 = ws.iter().sum();
            (Just(ws), 1..=total)
        })
        .prop_map(|(ws, q)| WeightedGame::from_integers(q, &ws).unwrap())
}

/// Like `integer_game` but some players may carry zero weight.
fn game_with_dummies() -> impl Strategy<Value = WeightedGame> {
    prop::collection::vec(0..=20u64, 1..=10)
        .prop_filter("need positive total", |ws| ws.iter().sum::<u64>() > 0)
        .prop_flat_map(|ws| {
            let total: u64 = ws.iter().sum();
            (Just(ws), 1..=total)
        })
        .prop_map(|(ws, q)| WeightedGame::from_integers(q, &ws).unwrap())
}

proptest! {
    /// Multiplying every weight and the quota by one positive rational
    /// changes nothing about who swings where.
    #[test]
    fn swings_are_scale_invariant(
        game in integer_game(9, 25),
        num in 1..=12i64,
        den in 1..=12i64,
    ) {
        let c = Rational::new(BigInt::from(num), BigInt::from(den));
        let scaled = game.scale(&c).unwrap();
        let (sv, w) = brute_force_swings(&game, 25).unwrap();
        let (ssv, sw) = brute_force_swings(&scaled, 25).unwrap();
        prop_assert_eq!(sv.as_slice(), ssv.as_slice());
        prop_assert_eq!(w, sw);
    }

    /// Players of equal weight are interchangeable, and a heavier player
    /// never swings less often than a lighter one. In canonical order the
    /// swing vector is therefore non-increasing.
    #[test]
    fn swings_follow_the_weight_order(game in integer_game(10, 30)) {
        let (sv, _) = brute_force_swings(&game, 25).unwrap();
        for i in 1..game.n() {
            prop_assert!(sv.get(i - 1) >= sv.get(i));
            if game.weight(i - 1) == game.weight(i) {
                prop_assert_eq!(sv.get(i - 1), sv.get(i));
            }
        }
    }

    /// Weightless players never swing and never change anyone else's
    /// count: dropping them leaves the others' swings intact.
    #[test]
    fn zero_weight_players_are_powerless(game in game_with_dummies()) {
        let (sv, _) = brute_force_swings(&game, 25).unwrap();
        let caller_ws = game.caller_weights();
        let caller_sv = game.to_caller_order(sv.as_slice());
        let kept: Vec<u64> = caller_ws
            .iter()
            .filter(|w| !w.is_zero())
            .map(|w| w.to_integer().to_u64().unwrap())
            .collect();
        let zeros = caller_ws.len() - kept.len();
        for (w, s) in caller_ws.iter().zip(&caller_sv) {
            if w.is_zero() {
                prop_assert_eq!(s, &BigUint::zero());
            }
        }
        if !kept.is_empty() {
            let q = game.quota().to_integer().to_u64().unwrap();
            let sub = WeightedGame::from_integers(q, &kept).unwrap();
            let (sub_sv, _) = brute_force_swings(&sub, 25).unwrap();
            let sub_caller = sub.to_caller_order(sub_sv.as_slice());
            let survivors: Vec<&BigUint> = caller_ws
                .iter()
                .zip(&caller_sv)
                .filter(|(w, _)| !w.is_zero())
                .map(|(_, s)| s)
                .collect();
            // Each dummy doubles the number of swing coalitions.
            for (full, small) in survivors.iter().zip(&sub_caller) {
                prop_assert_eq!((*full).clone(), small.clone() << zeros);
            }
        }
    }

    /// Every per-player coalition polynomial enumerates all coalitions of
    /// the others: coefficients total 2^(n-1) and the degree is the
    /// others' combined weight.
    #[test]
    fn player_polynomials_are_normalized(game in integer_game(10, 30)) {
        let n = game.n();
        let total: u64 = game
            .weights()
            .iter()
            .map(|w| w.value().to_integer().to_u64().unwrap())
            .sum();
        for i in 0..n {
            let b = gf_player_polynomial(&game, i);
            prop_assert_eq!(b.coeff_total(), BigUint::from(1u32) << (n - 1));
            let w_i = game.weight(i).to_integer().to_u64().unwrap();
            let degree = b.degree().cloned().unwrap_or_default();
            prop_assert_eq!(degree, BigUint::from(total - w_i));
        }
    }

    /// The table and polynomial backends agree with enumeration, and the
    /// shared-table removal pass agrees with per-player rebuilds.
    #[test]
    fn counting_backends_agree(game in integer_game(12, 30)) {
        let limits = WorkLimits::default();
        let (bsv, bw) = brute_force_swings(&game, 25).unwrap();
        let (dsv, dw) = dp_swings(&game, &limits).unwrap();
        let (rsv, rw) = dp_swings_downdating(&game, &limits).unwrap();
        let (gsv, gw) = gf_swings(&game).unwrap();
        prop_assert_eq!(bsv.as_slice(), dsv.as_slice());
        prop_assert_eq!(bsv.as_slice(), rsv.as_slice());
        prop_assert_eq!(bsv.as_slice(), gsv.as_slice());
        prop_assert_eq!(&bw, &dw);
        prop_assert_eq!(&bw, &rw);
        prop_assert_eq!(&bw, &gw);
    }

    /// Text and JSON forms reproduce the game exactly.
    #[test]
    fn serialization_round_trips(game in integer_game(10, 50)) {
        let text = game_to_text(&game);
        let back = parse_game(&text).unwrap();
        prop_assert_eq!(back.quota(), game.quota());
        prop_assert_eq!(back.weights(), game.weights());

        let json = game_to_json(&game).to_string();
        let back = parse_game_json(&json).unwrap();
        prop_assert_eq!(back.quota(), game.quota());
        prop_assert_eq!(back.weights(), game.weights());
    }

    /// For self-dominating weights the winners are exactly the coalitions
    /// at or above the threshold pattern in place value, so the pattern is
    /// the minimum-value winning coalition.
    #[test]
    fn threshold_is_the_least_winning_pattern(
        seed in 0..2000u64,
        n in 2..=12usize,
    ) {
        let shaped = random_game(n, u64::MAX, seed, &GameShape::Unbalanced).unwrap();
        let tv = unbalanced_threshold(&shaped).unwrap();
        let t_value = tv.value().to_u64().unwrap();
        let ws: Vec<u64> = shaped
            .weights()
            .iter()
            .map(|w| w.value().to_integer().to_u64().unwrap())
            .collect();
        let q = shaped.quota().to_integer().to_u64().unwrap();
        let mut winners = 0u64;
        for mask in 0..(1u64 << n) {
            // Place value: the heaviest player is the top bit.
            let mut sum = 0u64;
            let mut value = 0u64;
            for (j, w) in ws.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    sum += w;
                    value += 1 << (n - 1 - j);
                }
            }
            prop_assert_eq!(sum >= q, value >= t_value, "mask {}", mask);
            if sum >= q {
                winners += 1;
            }
        }
        prop_assert_eq!(tv.winning_count().to_u64().unwrap(), winners);
    }

    /// Weight ratios of at least two force self-domination outright.
    #[test]
    fn doubling_ratios_imply_self_domination(seed in 0..2000u64, n in 2..=16usize) {
        let two = Rational::from_integer(BigInt::from(2));
        let g = random_game(n, u64::MAX, seed, &GameShape::Geometric(two)).unwrap();
        prop_assert_eq!(detect_classes(&g).min_unbalance_order, Some(1));
    }
}
