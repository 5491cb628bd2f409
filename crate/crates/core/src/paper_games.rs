//! Exact game generators: the fixed pathology constructions and seeded
//! random families.
//!
//! The block identical-interest construction is rebuilt from structural
//! constraints rather than copied numbers, so it is validated property by
//! property at construction time and refuses to return a game that fails any
//! of them.


use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dynamics::{abr_transition_matrix, best_reply_graph, recurrent_classes};
use crate::evaluators::{reduce_game, Evaluator};
use crate::game::{inconsequentiality, is_identical_interest, Game, GameError, StrategicGame};
use crate::rational::{int, one, rat, zero, Rational};
use crate::space::ProfileSpace;
use std::collections::BTreeSet;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("delta must satisfy 0 < delta < 1/2, got {0}")]
    BadDelta(String),
    #[error("eps must lie in ({lo}, {hi}) for this construction, got {got}")]
    EpsOutOfRange {
        lo: &'static str,
        hi: &'static str,
        got: String,
    },
    #[error("eps must be nonnegative, got {0}")]
    NegativeEps(String),
    #[error("need at least {needed} players, got {got}")]
    TooFewPlayers { needed: usize, got: usize },
    #[error("action_counts has {got} entries for {expected} players")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("block construction failed validation ({property}): {detail}")]
    BlockValidation { property: char, detail: String },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// The 3-player, 2-action motivating game: players 2 and 3 share a utility
/// function, and the welfare is the player sum normalized so its maximum is
/// exactly 1. Action indices: player 1 rows {A=0, B=1}, player 2 columns
/// {A=0, B=1}, player 3 matrices {left=0, right=1}.
pub fn intro_game(delta: &Rational) -> Result<Game, GeneratorError> {
    if delta <= &zero() || delta >= &rat(1, 2) {
        return Err(GeneratorError::BadDelta(delta.to_string()));
    }
    let d = delta.clone();
    let counts = [2usize, 2, 2];
    let space = ProfileSpace::new(&counts);
    let mut u1 = vec![zero(); space.len()];
    let mut u23 = vec![zero(); space.len()];
    let set = |tensor: &mut Vec<Rational>, profile: [usize; 3], value: Rational| {
        tensor[space.flatten(&profile)] = value;
    };
    // Left matrix (player 3 = 0).
    set(&mut u1, [0, 0, 0], one() - &d);
    set(&mut u23, [0, 0, 0], one());
    set(&mut u1, [0, 1, 0], zero());
    set(&mut u23, [0, 1, 0], zero());
    set(&mut u1, [1, 0, 0], d.clone());
    set(&mut u23, [1, 0, 0], zero());
    set(&mut u1, [1, 1, 0], one());
    set(&mut u23, [1, 1, 0], zero());
    // Right matrix (player 3 = 1).
    set(&mut u1, [0, 0, 1], zero());
    set(&mut u23, [0, 0, 1], int(2) * &d);
    set(&mut u1, [0, 1, 1], int(2) * &d);
    set(&mut u23, [0, 1, 1], zero());
    set(&mut u1, [1, 0, 1], int(3) * &d);
    set(&mut u23, [1, 0, 1], d.clone());
    set(&mut u1, [1, 1, 1], d.clone());
    set(&mut u23, [1, 1, 1], int(2) * &d);

    let scale = int(3) - &d;
    let welfare: Vec<Rational> = space
        .flats()
        .map(|flat| (&u1[flat] + &u23[flat] + &u23[flat]) / &scale)
        .collect();
    Ok(Game::new(
        &counts,
        vec![u1, u23.clone(), u23],
        welfare,
        true,
    )?)
}

/// Integer `m` with `lo <= m` and `m < lo + 1` for `lo = bound`: the ceiling
/// of a rational, clamped to be nonnegative.
fn ceil_to_usize(bound: &Rational) -> usize {
    let c = bound.ceil().to_integer();
    if c.is_negative() {
        0
    } else {
        c.to_usize().expect("construction size fits in usize")
    }
}

/// Derived size parameter of the staggered construction: the integer with
/// `1/eps - 8 <= M < 1/eps - 7`.
pub fn staggered_level_count(eps: &Rational) -> usize {
    ceil_to_usize(&(eps.recip() - int(8)))
}

/// The staggered potential game: action sets {0..M+1} x {0,1,2} x {0..M}
/// with M the integer in [1/eps - 8, 1/eps - 7). Player 3's action indexes a
/// level; each level tabulates three adjacent player-1 rows and fills the
/// rest with a fixed low-utility row. Players 2 and 3 share the welfare as
/// utility, and player 1's utility differs from welfare by a function of the
/// other players only, so the game is an exact potential game with a unique
/// equilibrium at the origin.
pub fn staggered_potential_game(eps: &Rational) -> Result<Game, GeneratorError> {
    if eps <= &zero() || eps >= &rat(1, 7) {
        return Err(GeneratorError::EpsOutOfRange {
            lo: "0",
            hi: "1/7",
            got: eps.to_string(),
        });
    }
    let e = eps.clone();
    let m = staggered_level_count(eps);
    let counts = [m + 2, 3, m + 1];
    let space = ProfileSpace::new(&counts);

    // Welfare rows for offsets -1, 0, +1 from the current level, before the
    // per-level decay of eps per step.
    let row_below = [
        one() + &e / int(2),
        one() - rat(13, 2) * &e,
        one() - rat(7, 2) * &e,
    ];
    let row_at = [one(), one() - int(7) * &e, one() - int(4) * &e];
    let row_above = [one() - int(2) * &e, one() - int(3) * &e, one() - int(3) * &e];
    // Player 1's utility offset per column, independent of the row.
    let column_offset = [zero(), int(4) * &e, int(-2) * &e];

    let mut welfare = vec![zero(); space.len()];
    let mut u1 = vec![zero(); space.len()];
    for flat in space.flats() {
        let row = space.coord(flat, 0);
        let col = space.coord(flat, 1);
        let level = space.coord(flat, 2);
        let decay = int(level as i64) * &e;
        let w = if row + 1 == level {
            Some(row_below[col].clone())
        } else if row == level {
            Some(row_at[col].clone())
        } else if row == level + 1 {
            Some(row_above[col].clone())
        } else {
            None
        };
        let w = match w {
            Some(base) => base - decay,
            None => zero(),
        };
        u1[flat] = &w + int(level as i64) * &e + &column_offset[col];
        welfare[flat] = w;
    }
    let u2 = welfare.clone();
    let u3 = welfare.clone();
    Ok(Game::new(&counts, vec![u1, u2, u3], welfare, true)?)
}

/// Derived block count of the block identical-interest construction: the
/// integer with `1/eps - 3 <= M < 1/eps - 2`.
pub fn block_count(eps: &Rational) -> usize {
    ceil_to_usize(&(eps.recip() - int(3)))
}

/// The two escape states of block `k`: `(2k+2, 0, 2k+1)` and
/// `(2k+2, 1, 2k+1)`.
pub fn block_escape_states(g: &Game, k: usize) -> BTreeSet<usize> {
    let space = g.space();
    BTreeSet::from([
        space.flatten(&[2 * k + 2, 0, 2 * k + 1]),
        space.flatten(&[2 * k + 2, 1, 2 * k + 1]),
    ])
}

/// Identical-interest game built from M+1 fundamental blocks on action sets
/// {0..2M+2} x {0,1} x {0..2M+1}, M the integer in [1/eps - 3, 1/eps - 2).
/// Block k's welfare maximizers sit at level 2k with value 1 - k*eps; the
/// two player-1 rows of a block carry equal sorted payoff lists, forcing
/// indifference under any acceptable evaluator, and the transition level
/// funnels best replies into the escape pair whose only exit increments
/// player 3's action. The construction is checked against properties (a)-(g)
/// below and aborts if any fails.
pub fn block_identical_interest_game(eps: &Rational) -> Result<Game, GeneratorError> {
    if eps <= &zero() || eps >= &rat(1, 3) {
        return Err(GeneratorError::EpsOutOfRange {
            lo: "0",
            hi: "1/3",
            got: eps.to_string(),
        });
    }
    let e = eps.clone();
    let m = block_count(eps);
    let counts = [2 * m + 3, 2, 2 * m + 2];
    let space = ProfileSpace::new(&counts);
    let mut welfare = vec![zero(); space.len()];
    {
        let mut set = |profile: [usize; 3], value: Rational| {
            welfare[space.flatten(&profile)] = value;
        };
        for k in 0..=m {
            let kr = int(k as i64);
            let peak = one() - &kr * &e;
            let low = one() - (&kr + int(2)) * &e;
            let landing = one() - (&kr + rat(3, 2)) * &e;
            let escape = one() - (&kr + rat(5, 4)) * &e;
            // Main level 2k: anti-diagonal peaks, so both rows carry the
            // same sorted payoff list {low, peak}.
            set([2 * k, 0, 2 * k], peak.clone());
            set([2 * k, 1, 2 * k], low.clone());
            set([2 * k + 1, 0, 2 * k], low.clone());
            set([2 * k + 1, 1, 2 * k], peak.clone());
            // Transition level 2k+1: the landing row and the escape pair.
            set([2 * k + 1, 0, 2 * k + 1], landing.clone());
            set([2 * k + 1, 1, 2 * k + 1], landing);
            set([2 * k + 2, 0, 2 * k + 1], escape.clone());
            set([2 * k + 2, 1, 2 * k + 1], escape);
        }
    }
    let utilities = vec![welfare.clone(), welfare.clone(), welfare.clone()];
    let game = Game::new(&counts, utilities, welfare, true)?;
    validate_block_construction(&game, &e, m)?;
    Ok(game)
}

fn block_fail(property: char, detail: String) -> GeneratorError {
    GeneratorError::BlockValidation { property, detail }
}

/// Properties (a)-(g) the block construction must satisfy. Failing any is a
/// construction bug, never silently tolerated.
fn validate_block_construction(g: &Game, e: &Rational, m: usize) -> Result<(), GeneratorError> {
    let space = g.space();

    // (a) Identical interest.
    if !is_identical_interest(g) {
        return Err(block_fail('a', "utilities differ from welfare".into()));
    }

    // (b) Player 2 exactly 2*eps-inconsequential to player 1.
    let measured = inconsequentiality(g, 0, 1).expect("distinct players");
    let two_eps = int(2) * e;
    if measured != two_eps {
        return Err(block_fail(
            'b',
            format!("inconsequentiality {measured}, expected {two_eps}"),
        ));
    }

    // (c) Block maximizers and the overall argmax pair.
    for k in 0..=m {
        let peak = one() - int(k as i64) * e;
        for profile in [[2 * k, 0, 2 * k], [2 * k + 1, 1, 2 * k]] {
            if g.welfare_at(&profile) != &peak {
                return Err(block_fail('c', format!("block {k} peak mismatch")));
            }
        }
    }
    let max = space.flats().map(|f| g.welfare(f)).max().unwrap().clone();
    let argmax: BTreeSet<usize> = space.flats().filter(|&f| g.welfare(f) == &max).collect();
    let expected_argmax =
        BTreeSet::from([space.flatten(&[0, 0, 0]), space.flatten(&[1, 1, 0])]);
    if max != one() || argmax != expected_argmax {
        return Err(block_fail('c', "overall maximizers are not the block-0 pair".into()));
    }

    let sorted_fiber = |row: usize, level: usize| -> Vec<Rational> {
        let mut fiber: Vec<Rational> = (0..2)
            .map(|a2| g.utility_at(0, &[row, a2, level]).clone())
            .collect();
        fiber.sort();
        fiber
    };

    // (d) Equal sorted lists for the two block rows at the main level.
    for k in 0..=m {
        let a = sorted_fiber(2 * k, 2 * k);
        let b = sorted_fiber(2 * k + 1, 2 * k);
        let expected = {
            let mut v = vec![
                one() - int(k as i64 + 2) * e,
                one() - int(k as i64) * e,
            ];
            v.sort();
            v
        };
        if a != b || a != expected {
            return Err(block_fail('d', format!("block {k} sorted rows differ")));
        }
    }

    // (e) Strict elementwise dominance of the escape row at the transition
    // level, so every acceptable evaluator prefers it.
    for k in 0..=m {
        let lower = sorted_fiber(2 * k + 1, 2 * k + 1);
        let upper = sorted_fiber(2 * k + 2, 2 * k + 1);
        if !upper.iter().zip(&lower).all(|(u, l)| u > l) {
            return Err(block_fail('e', format!("no strict dominance at block {k}")));
        }
    }

    // (f)/(g) Reduced-game structure under each built-in evaluator.
    let all_escapes: BTreeSet<usize> = (0..=m)
        .flat_map(|k| block_escape_states(g, k))
        .collect();
    for f in Evaluator::builtins() {
        let reduced = reduce_game(g, 0, 1, &f).expect("valid reduction");

        // (f.i) Every state has a best-reply path into some escape pair.
        let graph = best_reply_graph(&reduced);
        let mut reverse = vec![Vec::new(); space.len()];
        for (from, targets) in graph.iter().enumerate() {
            for &to in targets {
                reverse[to].push(from);
            }
        }
        let mut reachable = vec![false; space.len()];
        let mut queue: Vec<usize> = all_escapes.iter().copied().collect();
        for &s in &queue {
            reachable[s] = true;
        }
        while let Some(s) = queue.pop() {
            for &p in &reverse[s] {
                if !reachable[p] {
                    reachable[p] = true;
                    queue.push(p);
                }
            }
        }
        if !reachable.iter().all(|&r| r) {
            return Err(block_fail(
                'f',
                format!("{}: some state cannot best-reply into an escape pair", f.name()),
            ));
        }

        // (f.ii) The only exit from an escape pair increments player 3.
        let chain = abr_transition_matrix(&reduced);
        for k in 0..=m {
            for &s in &block_escape_states(g, k) {
                for (t, _) in chain.row(s) {
                    if *t == s || block_escape_states(g, k).contains(t) {
                        continue;
                    }
                    if k == m {
                        return Err(block_fail(
                            'f',
                            format!("{}: terminal escape pair leaks", f.name()),
                        ));
                    }
                    if space.coord(*t, 2) != 2 * k + 2 {
                        return Err(block_fail(
                            'f',
                            format!("{}: escape from block {k} does not increment", f.name()),
                        ));
                    }
                }
            }
        }

        // (g) The reduced chain's unique recurrent class is the terminal
        // escape pair, and its welfare is at most 2*eps.
        let classes = recurrent_classes(&chain);
        let expected = block_escape_states(g, m);
        if classes.classes().len() != 1 || classes.classes()[0] != expected {
            return Err(block_fail(
                'g',
                format!("{}: recurrent set is not the terminal escape pair", f.name()),
            ));
        }
        for &s in &expected {
            if g.welfare(s) > &two_eps {
                return Err(block_fail('g', "terminal welfare exceeds 2*eps".into()));
            }
        }
    }
    Ok(())
}

fn fisher_yates(rng: &mut ChaCha8Rng, len: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

fn check_random_preconditions(
    n: usize,
    action_counts: &[usize],
    eps: &Rational,
) -> Result<(), GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::TooFewPlayers { needed: 3, got: n });
    }
    if action_counts.len() != n {
        return Err(GeneratorError::ShapeMismatch {
            expected: n,
            got: action_counts.len(),
        });
    }
    if eps < &zero() {
        return Err(GeneratorError::NegativeEps(eps.to_string()));
    }
    Ok(())
}

/// Welfare skeleton shared by both random families: a base value per joint
/// action of everyone except player 2 (index 1), quantized to eighths with a
/// small distinct jitter and one context forced to exactly 1, minus a
/// bounded perturbation along player 2's coordinate. The perturbation uses a
/// distinct-value permutation per context, so fibers have a strict argmax
/// whenever `magnitude > 0`.
fn random_welfare(
    space: &ProfileSpace,
    magnitude: &Rational,
    rng: &mut ChaCha8Rng,
) -> Vec<Rational> {
    let ctx_space = space.without(1);
    let ctx_len = ctx_space.len();
    let mut base: Vec<Rational> = (0..ctx_len)
        .map(|_| rat(rng.gen_range(1i64..=7), 8))
        .collect();
    let jitter_scale = int(64) * int(ctx_len as i64);
    let jitter = fisher_yates(rng, ctx_len);
    for (c, b) in base.iter_mut().enumerate() {
        *b -= int(jitter[c] as i64) / &jitter_scale;
    }
    let top = rng.gen_range(0..ctx_len);
    base[top] = one();

    let m2 = space.counts()[1];
    let fiber_div = int(m2.saturating_sub(1).max(1) as i64);
    let mut perturb: Vec<Vec<Rational>> = Vec::with_capacity(ctx_len);
    for _ in 0..ctx_len {
        let order = fisher_yates(rng, m2);
        perturb.push(
            order
                .into_iter()
                .map(|t| magnitude * int(t as i64) / &fiber_div)
                .collect(),
        );
    }

    space
        .flats()
        .map(|flat| {
            let ctx = space.project_without(flat, 1, &ctx_space);
            let a2 = space.coord(flat, 1);
            if magnitude.is_zero() {
                base[ctx].clone()
            } else {
                &base[ctx] - &perturb[ctx][a2]
            }
        })
        .collect()
}

/// Seeded random potential game in which player 2 is at most
/// eps-inconsequential to player 1. The welfare is a context-wise base minus
/// a perturbation along player 2's coordinate whose spread is capped so the
/// marginal-contribution utilities (baseline action 0) inherit the bound.
/// `eps = 0` removes the perturbation entirely, so player 2's coordinate has
/// no effect on any utility.
pub fn random_potential_game(
    n: usize,
    action_counts: &[usize],
    eps: &Rational,
    seed: u64,
) -> Result<Game, GeneratorError> {
    check_random_preconditions(n, action_counts, eps)?;
    let space = ProfileSpace::new(action_counts);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // U_1's spread along player 2 is at most twice the perturbation spread.
    let magnitude = (eps / int(4)).min(rat(1, 12));
    let welfare = random_welfare(&space, &magnitude, &mut rng);

    let mut utilities = Vec::with_capacity(n);
    for player in 0..n {
        let tensor: Vec<Rational> = space
            .flats()
            .map(|flat| {
                let baseline = space.with_coord(flat, player, 0);
                &welfare[flat] - &welfare[baseline]
            })
            .collect();
        utilities.push(tensor);
    }
    Ok(Game::new(action_counts, utilities, welfare, true)?)
}

/// Seeded random identical-interest game: every player's utility is the
/// welfare itself, whose spread along player 2's coordinate is capped by
/// eps, so player 2 is at most eps-inconsequential to every other player at
/// once.
pub fn random_identical_interest_game(
    n: usize,
    action_counts: &[usize],
    eps: &Rational,
    seed: u64,
) -> Result<Game, GeneratorError> {
    check_random_preconditions(n, action_counts, eps)?;
    let space = ProfileSpace::new(action_counts);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let magnitude = (eps / int(2)).min(rat(1, 12));
    let welfare = random_welfare(&space, &magnitude, &mut rng);
    let utilities = vec![welfare.clone(); n];
    Ok(Game::new(action_counts, utilities, welfare, true)?)
}
