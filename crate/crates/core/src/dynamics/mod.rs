//! Online learning dynamics over a game's joint action space.
//!
//! Two processes are modeled. The asynchronous best-reply process picks a
//! player uniformly at random and lets it move to a uniformly random member
//! of its best-response set; its transition matrix is exact. Log-linear
//! learning replaces the argmax with a softmax at rationality parameter
//! beta; its matrices are floating point and feed the stationary
//! distribution cross-checks.
//!
//! Stochastic stability is computed two ways: exactly, via single-step
//! resistances, shortest resistance paths between recurrent classes, and
//! minimum-weight spanning arborescences; and numerically, via a beta sweep
//! of stationary distributions. The sweep exists only to cross-validate the
//! exact method.

mod recurrence;
mod resistance;
mod stationary;
mod transition;

pub use recurrence::{
    best_reply_graph, is_weakly_acyclic, recurrent_classes, tarjan_scc, RecurrentClassSet,
    WeakAcyclicity,
};
pub use resistance::{
    resistance_graph, single_step_resistance, stochastically_stable_exact, ResistanceGraph,
    StochasticStability,
};
pub use stationary::{
    stationary_distribution, stochastically_stable_sweep, StationaryError, SweepError,
};
pub use transition::{abr_transition_matrix, lll_transition_matrix, TransitionMatrix};
