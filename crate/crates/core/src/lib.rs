//! Exact toolkit for studying how proxy payoffs reshape finite strategic-form
//! games.
//!
//! The library models a multiagent system as a finite game with a global
//! welfare function, lets one or more observers replace their utilities with
//! evaluator-derived proxy payoffs for a hidden player, and then compares the
//! nominal and reduced games under three solution concepts: pure Nash
//! equilibria, recurrent classes of the asynchronous best-reply process, and
//! stochastically stable states of log-linear learning.
//!
//! All payoffs and comparisons use exact rational arithmetic; the only
//! floating-point code paths are the finite-temperature stationary
//! distributions used as a numeric cross-check.
//!
//! Module map:
//! - [`space`]: row-major indexing of joint action profiles
//! - [`game`]: the [`game::Game`] type and static solution concepts
//! - [`evaluators`]: payoff evaluators and reduced-game construction
//! - [`dynamics`]: best-reply and log-linear chains, recurrence, stochastic
//!   stability (exact via resistance trees, numeric via a beta sweep)
//! - [`analysis`]: quality ratios, closeness bounds, alignment certificates,
//!   and batched claim checkers
//! - [`paper_games`]: exact game generators (fixed constructions and seeded
//!   random families)

pub mod analysis;
pub mod dynamics;
pub mod evaluators;
pub mod game;
pub mod paper_games;
pub mod rational;
pub mod space;

pub use game::{Game, StrategicGame};
pub use rational::Rational;
