//! Finite strategic-form games and their static solution concepts.
//!
//! A [`Game`] couples per-player decision utilities with a separate welfare
//! tensor. The welfare tensor is never touched by reductions, so quality
//! metrics always evaluate the nominal objective even after utilities have
//! been replaced by proxies. Players are indexed from 0 internally; reports
//! print 1-based labels.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::rational::Rational;
use crate::space::{ActionProfile, ProfileSpace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("expected {expected} utility tensors, got {got}")]
    WrongUtilityCount { expected: usize, got: usize },
    #[error("utility tensor for player {player} has {got} entries, expected {expected}")]
    WrongTensorLength {
        player: usize,
        expected: usize,
        got: usize,
    },
    #[error("welfare tensor has {got} entries, expected {expected}")]
    WrongWelfareLength { expected: usize, got: usize },
    #[error("welfare marked normalized but {reason}")]
    NotNormalized { reason: String },
    #[error("player index {player} out of range for {players} players")]
    PlayerOutOfRange { player: usize, players: usize },
    #[error("partial profile has {got} entries, expected {expected}")]
    WrongPartialArity { expected: usize, got: usize },
    #[error("action {action} out of range for player {player}")]
    ActionOutOfRange { player: usize, action: usize },
    #[error("players must differ, both are {player}")]
    SamePlayer { player: usize },
}

/// Common read surface shared by nominal games and reduced games, so the
/// dynamics and analysis code runs unchanged on either.
pub trait StrategicGame {
    fn space(&self) -> &ProfileSpace;
    /// Decision utility of `player` at the joint profile `flat`.
    fn utility(&self, player: usize, flat: usize) -> &Rational;
    /// Nominal welfare at `flat`; reductions never alter this.
    fn welfare(&self, flat: usize) -> &Rational;

    fn num_players(&self) -> usize {
        self.space().num_players()
    }

    fn action_counts(&self) -> &[usize] {
        self.space().counts()
    }
}

/// An immutable finite strategic-form game with exact rational payoffs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    space: ProfileSpace,
    utilities: Vec<Vec<Rational>>,
    welfare: Vec<Rational>,
    normalized: bool,
}

impl Game {
    /// Validate shapes (and the normalization contract when `normalized` is
    /// set: welfare minimum >= 0 and maximum exactly 1) and freeze the game.
    pub fn new(
        action_counts: &[usize],
        utilities: Vec<Vec<Rational>>,
        welfare: Vec<Rational>,
        normalized: bool,
    ) -> Result<Game, GameError> {
        let space = ProfileSpace::new(action_counts);
        let n = space.num_players();
        if utilities.len() != n {
            return Err(GameError::WrongUtilityCount {
                expected: n,
                got: utilities.len(),
            });
        }
        for (player, tensor) in utilities.iter().enumerate() {
            if tensor.len() != space.len() {
                return Err(GameError::WrongTensorLength {
                    player,
                    expected: space.len(),
                    got: tensor.len(),
                });
            }
        }
        if welfare.len() != space.len() {
            return Err(GameError::WrongWelfareLength {
                expected: space.len(),
                got: welfare.len(),
            });
        }
        if normalized {
            let min = welfare.iter().min().expect("nonempty welfare");
            let max = welfare.iter().max().expect("nonempty welfare");
            if min < &Rational::from_integer(0.into()) {
                return Err(GameError::NotNormalized {
                    reason: format!("minimum welfare {min} is negative"),
                });
            }
            if max != &Rational::from_integer(1.into()) {
                return Err(GameError::NotNormalized {
                    reason: format!("maximum welfare {max} is not exactly 1"),
                });
            }
        }
        Ok(Game {
            space,
            utilities,
            welfare,
            normalized,
        })
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn utilities(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    pub fn welfare_tensor(&self) -> &[Rational] {
        &self.welfare
    }

    pub fn utility_at(&self, player: usize, profile: &[usize]) -> &Rational {
        &self.utilities[player][self.space.flatten(profile)]
    }

    pub fn welfare_at(&self, profile: &[usize]) -> &Rational {
        &self.welfare[self.space.flatten(profile)]
    }

    /// Copy of this game with every player's utility overwritten by welfare.
    pub fn identical_interest_twin(&self) -> Game {
        Game {
            space: self.space.clone(),
            utilities: vec![self.welfare.clone(); self.space.num_players()],
            welfare: self.welfare.clone(),
            normalized: self.normalized,
        }
    }
}

impl StrategicGame for Game {
    fn space(&self) -> &ProfileSpace {
        &self.space
    }

    fn utility(&self, player: usize, flat: usize) -> &Rational {
        &self.utilities[player][flat]
    }

    fn welfare(&self, flat: usize) -> &Rational {
        &self.welfare[flat]
    }
}

fn check_player<G: StrategicGame + ?Sized>(g: &G, player: usize) -> Result<(), GameError> {
    if player >= g.num_players() {
        return Err(GameError::PlayerOutOfRange {
            player,
            players: g.num_players(),
        });
    }
    Ok(())
}

/// Argmax of `player`'s utility over its own actions, holding everyone else
/// at `others` (one action per opponent, in player order with `player`
/// skipped). Ties are all included; comparisons are exact.
pub fn best_response_set<G: StrategicGame + ?Sized>(
    g: &G,
    player: usize,
    others: &[usize],
) -> Result<BTreeSet<usize>, GameError> {
    check_player(g, player)?;
    let n = g.num_players();
    if others.len() != n - 1 {
        return Err(GameError::WrongPartialArity {
            expected: n - 1,
            got: others.len(),
        });
    }
    let mut profile = Vec::with_capacity(n);
    let mut it = others.iter();
    for i in 0..n {
        if i == player {
            profile.push(0);
        } else {
            let &a = it.next().expect("arity checked");
            if a >= g.action_counts()[i] {
                return Err(GameError::ActionOutOfRange { player: i, action: a });
            }
            profile.push(a);
        }
    }
    let base = g.space().flatten(&profile);
    Ok(best_response_set_at(g, player, base))
}

/// Best responses of `player` against the opponent profile embedded in the
/// joint offset `context` (the player's own coordinate in `context` is
/// irrelevant).
pub fn best_response_set_at<G: StrategicGame + ?Sized>(
    g: &G,
    player: usize,
    context: usize,
) -> BTreeSet<usize> {
    let space = g.space();
    let mut best: Option<&Rational> = None;
    let mut set = BTreeSet::new();
    for action in 0..space.counts()[player] {
        let flat = space.with_coord(context, player, action);
        let u = g.utility(player, flat);
        match best {
            Some(b) if u < b => {}
            Some(b) if u == b => {
                set.insert(action);
            }
            _ => {
                best = Some(u);
                set.clear();
                set.insert(action);
            }
        }
    }
    set
}

/// Exhaustively enumerate the profiles at which every player is playing a
/// best response. Returned as flat offsets in increasing order.
pub fn pure_nash_equilibria<G: StrategicGame + ?Sized>(g: &G) -> BTreeSet<usize> {
    let space = g.space();
    let mut out = BTreeSet::new();
    'profiles: for flat in space.flats() {
        for player in 0..space.num_players() {
            let own = space.coord(flat, player);
            let u = g.utility(player, flat);
            for action in 0..space.counts()[player] {
                if action == own {
                    continue;
                }
                if g.utility(player, space.with_coord(flat, player, action)) > u {
                    continue 'profiles;
                }
            }
        }
        out.insert(flat);
    }
    out
}

/// Smallest eps such that a unilateral action change by `j` moves `i`'s
/// utility by at most eps: the maximum spread of `i`'s utility along `j`'s
/// coordinate over all contexts.
pub fn inconsequentiality<G: StrategicGame + ?Sized>(
    g: &G,
    i: usize,
    j: usize,
) -> Result<Rational, GameError> {
    check_player(g, i)?;
    check_player(g, j)?;
    if i == j {
        return Err(GameError::SamePlayer { player: i });
    }
    let space = g.space();
    let mut worst = Rational::from_integer(0.into());
    for flat in space.flats() {
        // Visit each fiber along j once, at its zero coordinate.
        if space.coord(flat, j) != 0 {
            continue;
        }
        let mut min = g.utility(i, flat);
        let mut max = min;
        for a in 1..space.counts()[j] {
            let u = g.utility(i, space.with_coord(flat, j, a));
            if u < min {
                min = u;
            }
            if u > max {
                max = u;
            }
        }
        let spread = max - min;
        if spread > worst {
            worst = spread;
        }
    }
    Ok(worst)
}

/// Result of checking the potential-game identity against the welfare tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialCheck {
    pub holds: bool,
    /// Largest absolute discrepancy between a unilateral utility change and
    /// the matching welfare change; zero exactly when `holds`.
    pub max_violation: Rational,
}

/// Check, for every player and every unilateral deviation, that the change in
/// the player's utility equals the change in welfare. Equivalent to the
/// difference `U_i - W` being constant along player i's own coordinate.
pub fn verify_potential<G: StrategicGame + ?Sized>(g: &G) -> PotentialCheck {
    let space = g.space();
    let mut worst = Rational::from_integer(0.into());
    for player in 0..space.num_players() {
        for flat in space.flats() {
            if space.coord(flat, player) != 0 {
                continue;
            }
            let mut min: Option<Rational> = None;
            let mut max: Option<Rational> = None;
            for a in 0..space.counts()[player] {
                let at = space.with_coord(flat, player, a);
                let d = g.utility(player, at) - g.welfare(at);
                match (&mut min, &mut max) {
                    (Some(lo), Some(hi)) => {
                        if d < *lo {
                            *lo = d;
                        } else if d > *hi {
                            *hi = d;
                        }
                    }
                    _ => {
                        min = Some(d.clone());
                        max = Some(d);
                    }
                }
            }
            let spread = max.unwrap() - min.unwrap();
            if spread > worst {
                worst = spread;
            }
        }
    }
    PotentialCheck {
        holds: worst == Rational::from_integer(0.into()),
        max_violation: worst,
    }
}

/// True iff every player's utility tensor equals the welfare tensor
/// entrywise.
pub fn is_identical_interest<G: StrategicGame + ?Sized>(g: &G) -> bool {
    let space = g.space();
    (0..space.num_players())
        .all(|p| space.flats().all(|flat| g.utility(p, flat) == g.welfare(flat)))
}

/// Render a flat offset as a profile for error messages and reports.
pub fn profile_of<G: StrategicGame + ?Sized>(g: &G, flat: usize) -> ActionProfile {
    g.space().unflatten(flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper_games::{intro_game, staggered_potential_game};
    use crate::rational::{int, rat, zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn one_player_increasing() -> Game {
        Game::new(
            &[3],
            vec![vec![int(1), int(2), int(3)]],
            vec![rat(1, 3), rat(2, 3), int(1)],
            true,
        )
        .unwrap()
    }

    #[test]
    fn construction_validates_shapes() {
        let err = Game::new(&[2, 2], vec![vec![zero(); 4]], vec![zero(); 4], false);
        assert_eq!(
            err.unwrap_err(),
            GameError::WrongUtilityCount { expected: 2, got: 1 }
        );
        let err = Game::new(
            &[2, 2],
            vec![vec![zero(); 3], vec![zero(); 4]],
            vec![zero(); 4],
            false,
        );
        assert!(matches!(
            err.unwrap_err(),
            GameError::WrongTensorLength { player: 0, .. }
        ));
    }

    #[test]
    fn normalization_flag_is_checked_exactly() {
        let err = Game::new(
            &[2],
            vec![vec![zero(), zero()]],
            vec![zero(), rat(999, 1000)],
            true,
        );
        assert!(matches!(err.unwrap_err(), GameError::NotNormalized { .. }));
        let ok = Game::new(&[2], vec![vec![zero(), zero()]], vec![zero(), int(1)], true);
        assert!(ok.is_ok());
    }

    #[test]
    fn intro_game_best_response_example() {
        // Player 1 facing (P2: A, P3: left) prefers A: 0.9 beats 0.1.
        let g = intro_game(&rat(1, 10)).unwrap();
        let br = best_response_set(&g, 0, &[0, 0]).unwrap();
        assert_eq!(br, BTreeSet::from([0]));
        assert_eq!(g.utility_at(0, &[0, 0, 0]), &rat(9, 10));
        assert_eq!(g.utility_at(0, &[1, 0, 0]), &rat(1, 10));
    }

    #[test]
    fn constant_utility_ties_give_full_action_set() {
        let g = Game::new(
            &[4, 2],
            vec![vec![int(5); 8], vec![zero(); 8]],
            vec![zero(); 8],
            false,
        )
        .unwrap();
        let br = best_response_set(&g, 0, &[1]).unwrap();
        assert_eq!(br, BTreeSet::from([0, 1, 2, 3]));
    }

    #[test]
    fn staggered_best_response_matches_independent_scan() {
        let g = staggered_potential_game(&rat(1, 10)).unwrap();
        // Player 3 facing (P1: 1, P2: 0): scan its utility column directly.
        let br = best_response_set(&g, 2, &[1, 0]).unwrap();
        let mut best_by_scan = BTreeSet::new();
        let mut best: Option<Rational> = None;
        for a3 in 0..g.action_counts()[2] {
            let u = g.utility_at(2, &[1, 0, a3]).clone();
            match &best {
                Some(b) if &u < b => {}
                Some(b) if &u == b => {
                    best_by_scan.insert(a3);
                }
                _ => {
                    best = Some(u);
                    best_by_scan.clear();
                    best_by_scan.insert(a3);
                }
            }
        }
        assert_eq!(br, best_by_scan);
    }

    #[test]
    fn best_response_rejects_bad_input() {
        let g = one_player_increasing();
        assert!(matches!(
            best_response_set(&g, 1, &[]),
            Err(GameError::PlayerOutOfRange { .. })
        ));
        let g2 = intro_game(&rat(1, 10)).unwrap();
        assert!(matches!(
            best_response_set(&g2, 0, &[0]),
            Err(GameError::WrongPartialArity { .. })
        ));
        assert!(matches!(
            best_response_set(&g2, 0, &[0, 5]),
            Err(GameError::ActionOutOfRange { .. })
        ));
    }

    #[test]
    fn one_player_game_nash_is_top_action() {
        let g = one_player_increasing();
        assert_eq!(pure_nash_equilibria(&g), BTreeSet::from([2]));
    }

    #[test]
    fn intro_game_has_unique_nash_at_upper_left() {
        let g = intro_game(&rat(1, 10)).unwrap();
        let pne = pure_nash_equilibria(&g);
        assert_eq!(pne, BTreeSet::from([g.space().flatten(&[0, 0, 0])]));
    }

    #[test]
    fn staggered_game_has_unique_nash_at_origin() {
        let g = staggered_potential_game(&rat(1, 10)).unwrap();
        let pne = pure_nash_equilibria(&g);
        assert_eq!(pne, BTreeSet::from([g.space().flatten(&[0, 0, 0])]));
    }

    /// Independent double-loop oracle: a profile is a PNE iff no unilateral
    /// deviation strictly improves the deviator.
    fn pne_oracle(g: &Game) -> BTreeSet<usize> {
        let space = g.space();
        let mut out = BTreeSet::new();
        for flat in space.flats() {
            let profile = space.unflatten(flat);
            let mut is_pne = true;
            for player in 0..space.num_players() {
                for action in 0..space.counts()[player] {
                    let mut dev = profile.clone();
                    dev[player] = action;
                    if g.utility_at(player, &dev) > g.utility(player, flat) {
                        is_pne = false;
                    }
                }
            }
            if is_pne {
                out.insert(flat);
            }
        }
        out
    }

    fn random_small_game(seed: u64, counts: &[usize]) -> Game {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let space = ProfileSpace::new(counts);
        let tensor = |rng: &mut rand_chacha::ChaCha8Rng| {
            (0..space.len())
                .map(|_| rat(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=4)))
                .collect::<Vec<_>>()
        };
        let utilities = (0..counts.len()).map(|_| tensor(&mut rng)).collect();
        let welfare = tensor(&mut rng);
        Game::new(counts, utilities, welfare, false).unwrap()
    }

    #[test]
    fn nash_agrees_with_double_loop_oracle_on_random_games() {
        let shapes: [&[usize]; 4] = [&[4, 4, 4], &[2, 3, 4], &[8, 8], &[2, 2, 2, 2, 2]];
        for (i, counts) in shapes.iter().enumerate() {
            for seed in 0..12u64 {
                let g = random_small_game(seed * 31 + i as u64, counts);
                assert_eq!(pure_nash_equilibria(&g), pne_oracle(&g));
            }
        }
    }

    #[test]
    fn inconsequentiality_of_staggered_game_is_six_eps() {
        let g = staggered_potential_game(&rat(1, 10)).unwrap();
        assert_eq!(inconsequentiality(&g, 0, 1).unwrap(), rat(6, 10));
    }

    #[test]
    fn inconsequentiality_zero_when_player_ignored() {
        // U_0 does not depend on player 1's coordinate.
        let space = ProfileSpace::new(&[2, 3]);
        let mut u0 = vec![zero(); space.len()];
        for flat in space.flats() {
            u0[flat] = int(space.coord(flat, 0) as i64);
        }
        let g = Game::new(
            &[2, 3],
            vec![u0, vec![zero(); space.len()]],
            vec![zero(); space.len()],
            false,
        )
        .unwrap();
        assert_eq!(inconsequentiality(&g, 0, 1).unwrap(), zero());
        assert_eq!(
            inconsequentiality(&g, 0, 0).unwrap_err(),
            GameError::SamePlayer { player: 0 }
        );
    }

    #[test]
    fn inconsequentiality_zero_preserves_best_responses_across_contexts() {
        // With zero spread, the argmax of U_0 cannot depend on player 1.
        for seed in 0..8u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(900 + seed);
            let space = ProfileSpace::new(&[3, 3, 2]);
            let mut u0 = vec![zero(); space.len()];
            for flat in space.flats() {
                // Depends on players 0 and 2 only.
                if space.coord(flat, 1) == 0 {
                    let v = rat(rng.gen_range(-5i64..=5), 2);
                    for a1 in 0..3 {
                        u0[space.with_coord(flat, 1, a1)] = v.clone();
                    }
                }
            }
            let filler = vec![zero(); space.len()];
            let g = Game::new(
                &[3, 3, 2],
                vec![u0, filler.clone(), filler.clone()],
                filler,
                false,
            )
            .unwrap();
            assert_eq!(inconsequentiality(&g, 0, 1).unwrap(), zero());
            for a2 in 0..2 {
                let reference = best_response_set(&g, 0, &[0, a2]).unwrap();
                for a1 in 1..3 {
                    assert_eq!(best_response_set(&g, 0, &[a1, a2]).unwrap(), reference);
                }
            }
        }
    }

    #[test]
    fn staggered_game_is_a_potential_game() {
        let g = staggered_potential_game(&rat(1, 10)).unwrap();
        let check = verify_potential(&g);
        assert!(check.holds);
        assert_eq!(check.max_violation, zero());
    }

    #[test]
    fn intro_game_is_not_a_potential_game() {
        let g = intro_game(&rat(1, 10)).unwrap();
        let check = verify_potential(&g);
        // Independent brute force over all unilateral deviations.
        let space = g.space().clone();
        let mut worst = zero();
        for flat in space.flats() {
            for player in 0..3 {
                for action in 0..space.counts()[player] {
                    let to = space.with_coord(flat, player, action);
                    let lhs = g.utility(player, to) - g.utility(player, flat);
                    let rhs = g.welfare(to) - g.welfare(flat);
                    let gap = if lhs > rhs { lhs - rhs } else { rhs - lhs };
                    if gap > worst {
                        worst = gap;
                    }
                }
            }
        }
        assert_eq!(check.max_violation, worst);
        assert!(!check.holds);
        assert!(worst > zero());
    }

    #[test]
    fn identical_interest_detection() {
        let g = intro_game(&rat(1, 10)).unwrap();
        assert!(!is_identical_interest(&g));
        let twin = g.identical_interest_twin();
        assert!(is_identical_interest(&twin));
        assert!(verify_potential(&twin).holds);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn best_responses_nonempty_and_in_range(seed in 0u64..500) {
            let g = random_small_game(seed, &[3, 2, 4]);
            let space = g.space();
            for player in 0..3 {
                for flat in space.flats() {
                    let br = best_response_set_at(&g, player, flat);
                    prop_assert!(!br.is_empty());
                    prop_assert!(br.iter().all(|&a| a < space.counts()[player]));
                }
            }
        }

        #[test]
        fn identical_interest_games_verify_as_potential(seed in 0u64..500) {
            let g = random_small_game(seed, &[2, 3, 2]).identical_interest_twin();
            prop_assert!(verify_potential(&g).holds);
        }
    }
}
