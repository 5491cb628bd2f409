//! Transition matrices for the two learning processes.

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::game::{best_response_set_at, StrategicGame};
use crate::rational::{to_f64, Rational};

enum Entries {
    Exact(Vec<Vec<(usize, Rational)>>),
    Float(Vec<Vec<(usize, f64)>>),
}

/// Row-stochastic matrix over the joint action space. Best-reply chains use
/// exact rational rows; log-linear chains at finite beta use floats.
pub struct TransitionMatrix {
    size: usize,
    entries: Entries,
}

impl TransitionMatrix {
    /// Build an exact matrix from sparse rows (column, probability).
    pub fn from_exact_rows(rows: Vec<Vec<(usize, Rational)>>) -> TransitionMatrix {
        let size = rows.len();
        TransitionMatrix {
            size,
            entries: Entries::Exact(rows),
        }
    }

    /// Build a float matrix from sparse rows (column, probability).
    pub fn from_float_rows(rows: Vec<Vec<(usize, f64)>>) -> TransitionMatrix {
        let size = rows.len();
        TransitionMatrix {
            size,
            entries: Entries::Float(rows),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, Entries::Exact(_))
    }

    /// Sparse exact row. Panics on a float matrix.
    pub fn row(&self, state: usize) -> &[(usize, Rational)] {
        match &self.entries {
            Entries::Exact(rows) => &rows[state],
            Entries::Float(_) => panic!("exact row requested from a float matrix"),
        }
    }

    /// Sparse float row, converting on the fly for exact matrices.
    pub fn float_row(&self, state: usize) -> Vec<(usize, f64)> {
        match &self.entries {
            Entries::Exact(rows) => rows[state]
                .iter()
                .map(|(j, p)| (*j, to_f64(p)))
                .collect(),
            Entries::Float(rows) => rows[state].clone(),
        }
    }

    /// Columns with strictly positive transition probability from `state`.
    pub fn positive_targets(&self, state: usize) -> Vec<usize> {
        match &self.entries {
            Entries::Exact(rows) => rows[state]
                .iter()
                .filter(|(_, p)| !p.is_zero())
                .map(|(j, _)| *j)
                .collect(),
            Entries::Float(rows) => rows[state]
                .iter()
                .filter(|(_, p)| *p > 0.0)
                .map(|(j, _)| *j)
                .collect(),
        }
    }

    /// Exact matrices must sum each row to exactly 1; float matrices within
    /// 1e-12.
    pub fn is_row_stochastic(&self) -> bool {
        match &self.entries {
            Entries::Exact(rows) => rows.iter().all(|row| {
                row.iter().map(|(_, p)| p).sum::<Rational>() == Rational::one()
            }),
            Entries::Float(rows) => rows.iter().all(|row| {
                let sum: f64 = row.iter().map(|(_, p)| p).sum();
                (sum - 1.0).abs() <= 1e-12
            }),
        }
    }
}

/// Exact transition matrix of the asynchronous best-reply process: a player
/// is drawn uniformly, then an action from its best-response set uniformly.
/// Repeating the current action when it is a best response contributes
/// self-loop mass.
pub fn abr_transition_matrix<G: StrategicGame + ?Sized>(g: &G) -> TransitionMatrix {
    let space = g.space();
    let n = space.num_players();
    let player_share = Rational::new(1.into(), (n as i64).into());
    let mut rows = Vec::with_capacity(space.len());
    for flat in space.flats() {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for player in 0..n {
            let br = best_response_set_at(g, player, flat);
            let share = &player_share / Rational::from_integer((br.len() as i64).into());
            for action in br {
                let target = space.with_coord(flat, player, action);
                *row.entry(target).or_insert_with(Rational::zero) += share.clone();
            }
        }
        rows.push(row.into_iter().collect());
    }
    TransitionMatrix {
        size: space.len(),
        entries: Entries::Exact(rows),
    }
}

/// Log-linear learning at rationality `beta`: the updating player picks each
/// action with probability proportional to `exp(beta * utility)`. At
/// `beta = 0` actions are uniform; as beta grows the chain approaches the
/// best-reply process.
pub fn lll_transition_matrix<G: StrategicGame + ?Sized>(g: &G, beta: f64) -> TransitionMatrix {
    assert!(beta >= 0.0 && beta.is_finite(), "beta must be a finite nonnegative float");
    let space = g.space();
    let n = space.num_players();
    let mut rows = Vec::with_capacity(space.len());
    for flat in space.flats() {
        let mut row: BTreeMap<usize, f64> = BTreeMap::new();
        for player in 0..n {
            let count = space.counts()[player];
            let utilities: Vec<f64> = (0..count)
                .map(|a| to_f64(g.utility(player, space.with_coord(flat, player, a))))
                .collect();
            let peak = utilities.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let weights: Vec<f64> = utilities.iter().map(|u| ((u - peak) * beta).exp()).collect();
            let z: f64 = weights.iter().sum();
            for (action, w) in weights.iter().enumerate() {
                let target = space.with_coord(flat, player, action);
                *row.entry(target).or_insert(0.0) += w / (z * n as f64);
            }
        }
        rows.push(row.into_iter().collect());
    }
    TransitionMatrix {
        size: space.len(),
        entries: Entries::Float(rows),
    }
}
