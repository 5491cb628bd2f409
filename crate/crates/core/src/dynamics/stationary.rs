//! Stationary distributions at finite beta and the numeric stability sweep.

use std::collections::BTreeSet;

use thiserror::Error;

use super::recurrence::tarjan_scc;
use super::transition::{lll_transition_matrix, TransitionMatrix};
use crate::game::StrategicGame;

#[derive(Debug, Error)]
pub enum StationaryError {
    #[error("chain is not ergodic: {0}")]
    NotErgodic(String),
    #[error("linear solve residual {0:e} exceeds 1e-12")]
    SolveFailed(f64),
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("beta schedule must be nonempty and strictly increasing")]
    BadSchedule,
    #[error("mass threshold must lie strictly between 0 and 1, got {0}")]
    BadThreshold(f64),
    #[error("mass trend for state {state} did not converge: {detail}")]
    Inconclusive { state: usize, detail: String },
    #[error(transparent)]
    Stationary(#[from] StationaryError),
}

/// Solve `pi P = pi`, `sum pi = 1` for an ergodic chain. Absorbing chains
/// (for example any best-reply matrix with equilibria) are rejected rather
/// than given an arbitrary answer.
///
/// The elimination follows Grassmann, Taksar, and Heyman: states are folded
/// away one at a time using only additions, multiplications, and divisions
/// of nonnegative quantities. At large beta the chain is metastable and a
/// plain linear solve can misplace basin mass while still showing a tiny
/// residual; the subtraction-free elimination keeps every component
/// accurate in relative terms.
pub fn stationary_distribution(p: &TransitionMatrix) -> Result<Vec<f64>, StationaryError> {
    let n = p.size();
    let graph: Vec<Vec<usize>> = (0..n).map(|s| p.positive_targets(s)).collect();
    let comps = tarjan_scc(&graph);
    if comps.len() != 1 {
        return Err(StationaryError::NotErgodic(format!(
            "positive-transition digraph has {} strongly connected components",
            comps.len()
        )));
    }
    if n == 1 {
        return Ok(vec![1.0]);
    }

    let mut a = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for (j, prob) in p.float_row(i) {
            if i != j {
                a[i][j] += prob;
            }
        }
    }

    // Fold states n-1 .. 1 into the remaining chain.
    for k in (1..n).rev() {
        let exit: f64 = a[k][..k].iter().sum();
        if exit <= 0.0 {
            return Err(StationaryError::SolveFailed(f64::INFINITY));
        }
        for i in 0..k {
            a[i][k] /= exit;
        }
        for i in 0..k {
            let lift = a[i][k];
            if lift == 0.0 {
                continue;
            }
            for j in 0..k {
                if i != j {
                    a[i][j] += lift * a[k][j];
                }
            }
        }
    }

    // Unnormalized back-substitution, then normalize.
    let mut pi = vec![0.0f64; n];
    pi[0] = 1.0;
    for k in 1..n {
        let mut acc = 0.0;
        for i in 0..k {
            acc += pi[i] * a[i][k];
        }
        pi[k] = acc;
    }
    let total: f64 = pi.iter().sum();
    for value in pi.iter_mut() {
        *value /= total;
    }

    let mut residual: f64 = 0.0;
    let mut image = vec![0.0f64; n];
    for i in 0..n {
        for (j, prob) in p.float_row(i) {
            image[j] += pi[i] * prob;
        }
    }
    for j in 0..n {
        residual = residual.max((image[j] - pi[j]).abs());
    }
    residual = residual.max((pi.iter().sum::<f64>() - 1.0).abs());
    if residual > 1e-12 {
        return Err(StationaryError::SolveFailed(residual));
    }
    Ok(pi)
}

/// Numeric stability oracle: a state counts as stable when its stationary
/// mass at the largest beta exceeds `mass_threshold` times the uniform share
/// and its mass trend is nondecreasing along the schedule. A candidate with
/// a non-monotone trend is reported as inconclusive instead of being
/// silently classified. Used only to cross-validate the exact resistance
/// computation.
pub fn stochastically_stable_sweep<G: StrategicGame + ?Sized>(
    g: &G,
    beta_schedule: &[f64],
    mass_threshold: f64,
) -> Result<BTreeSet<usize>, SweepError> {
    if beta_schedule.is_empty() || beta_schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SweepError::BadSchedule);
    }
    if !(mass_threshold > 0.0 && mass_threshold < 1.0) {
        return Err(SweepError::BadThreshold(mass_threshold));
    }
    let size = g.space().len();
    let mut masses: Vec<Vec<f64>> = Vec::with_capacity(beta_schedule.len());
    for &beta in beta_schedule {
        let p = lll_transition_matrix(g, beta);
        masses.push(stationary_distribution(&p)?);
    }
    let cutoff = mass_threshold / size as f64;
    let last = masses.last().expect("nonempty schedule");
    let mut stable = BTreeSet::new();
    for state in 0..size {
        if last[state] < cutoff {
            continue;
        }
        let trend: Vec<f64> = masses.iter().map(|pi| pi[state]).collect();
        if trend.windows(2).any(|w| w[1] < w[0] - 1e-9) {
            return Err(SweepError::Inconclusive {
                state,
                detail: format!("mass sequence {trend:?} is not nondecreasing"),
            });
        }
        stable.insert(state);
    }
    Ok(stable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::abr_transition_matrix;
    use crate::game::Game;
    use crate::paper_games::{random_potential_game, staggered_potential_game};
    use crate::rational::{int, rat, zero};

    #[test]
    fn symmetric_two_state_chain_is_half_half() {
        let p = TransitionMatrix::from_float_rows(vec![
            vec![(0, 0.7), (1, 0.3)],
            vec![(0, 0.3), (1, 0.7)],
        ]);
        let pi = stationary_distribution(&p).unwrap();
        assert!((pi[0] - 0.5).abs() < 1e-13);
        assert!((pi[1] - 0.5).abs() < 1e-13);
    }

    #[test]
    fn absorbing_best_reply_matrix_is_rejected() {
        let g = staggered_potential_game(&rat(1, 10)).unwrap();
        let p = abr_transition_matrix(&g);
        assert!(matches!(
            stationary_distribution(&p),
            Err(StationaryError::NotErgodic(_))
        ));
    }

    #[test]
    fn potential_game_mass_concentrates_on_the_maximizer() {
        let g = random_potential_game(3, &[3, 2, 3], &zero(), 9).unwrap();
        let p = lll_transition_matrix(&g, 50.0);
        let pi = stationary_distribution(&p).unwrap();
        let top: f64 = g
            .space()
            .flats()
            .filter(|&f| g.welfare(f) == &int(1))
            .map(|f| pi[f])
            .sum();
        assert!(top > 0.99, "mass on welfare maximizers was {top}");
    }

    #[test]
    fn sweep_on_single_state_game_returns_that_state() {
        let g = Game::new(&[1], vec![vec![int(1)]], vec![int(1)], true).unwrap();
        let stable = stochastically_stable_sweep(&g, &[1.0, 10.0], 0.5).unwrap();
        assert_eq!(stable, BTreeSet::from([0]));
    }

    #[test]
    fn sweep_validates_inputs() {
        let g = Game::new(&[1], vec![vec![int(1)]], vec![int(1)], true).unwrap();
        assert!(matches!(
            stochastically_stable_sweep(&g, &[], 0.5),
            Err(SweepError::BadSchedule)
        ));
        assert!(matches!(
            stochastically_stable_sweep(&g, &[2.0, 1.0], 0.5),
            Err(SweepError::BadSchedule)
        ));
        assert!(matches!(
            stochastically_stable_sweep(&g, &[1.0, 2.0], 1.5),
            Err(SweepError::BadThreshold(_))
        ));
    }

    #[test]
    fn sweep_reports_nonmonotone_candidates_as_inconclusive() {
        // A transient state can ride high at moderate beta and decay by the
        // end of the schedule while still sitting above the cutoff; the
        // sweep must refuse to classify it instead of guessing.
        let g = random_potential_game(3, &[3, 2, 2], &rat(1, 8), 7).unwrap();
        let err = stochastically_stable_sweep(&g, &[1.0, 10.0, 50.0, 100.0], 0.5).unwrap_err();
        assert!(matches!(err, SweepError::Inconclusive { .. }));
        // A longer schedule lets the transient decay below the cutoff.
        let ok =
            stochastically_stable_sweep(&g, &[1.0, 10.0, 50.0, 100.0, 200.0, 400.0], 0.5);
        assert!(ok.is_ok());
    }

    #[test]
    fn sweep_on_block_game_finds_the_top_pair() {
        use crate::paper_games::block_identical_interest_game;
        let g = block_identical_interest_game(&rat(1, 4)).unwrap();
        let stable =
            stochastically_stable_sweep(&g, &[1.0, 5.0, 20.0, 60.0, 100.0], 0.5).unwrap();
        let expected: std::collections::BTreeSet<usize> = [
            g.space().flatten(&[0, 0, 0]),
            g.space().flatten(&[1, 1, 0]),
        ]
        .into();
        assert_eq!(stable, expected);
    }

    #[test]
    fn sweep_finds_the_potential_maximizers() {
        for seed in [2u64, 14, 31] {
            let g = random_potential_game(3, &[3, 3, 3], &zero(), seed).unwrap();
            let stable =
                stochastically_stable_sweep(&g, &[1.0, 5.0, 20.0, 60.0, 100.0], 0.5).unwrap();
            let argmax: BTreeSet<usize> = g
                .space()
                .flats()
                .filter(|&f| g.welfare(f) == &int(1))
                .collect();
            assert_eq!(stable, argmax);
        }
    }
}
