//! Payoff evaluators and reduced-game construction.
//!
//! An evaluator maps the multiset of payoffs an observer could receive across
//! the hidden player's actions to a single proxy payoff. Acceptability asks
//! for strict monotonicity under elementwise dominance of sorted lists and
//! for equal outputs on equal lists; a bounded evaluator additionally stays
//! within the range of its input. The four built-ins carry these properties
//! analytically; user-supplied tables are only ever checked by sampling.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::game::{Game, StrategicGame};
use crate::rational::Rational;
use crate::space::ProfileSpace;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvaluatorError {
    #[error("evaluator input must be a nonempty list")]
    EmptyInput,
    #[error("custom evaluator has no table entry for the sorted list {0:?}")]
    MissingTableEntry(Vec<String>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("observer and hidden player must differ, both are {0}")]
    ObserverIsHidden(usize),
    #[error("player index {player} out of range for {players} players")]
    PlayerOutOfRange { player: usize, players: usize },
    #[error("evaluator failed during reduction: {0}")]
    Evaluator(#[from] EvaluatorError),
    #[error("bounded evaluator produced {value} outside [{min}, {max}]")]
    BoundednessViolated {
        value: String,
        min: String,
        max: String,
    },
    #[error("game is not a potential game (max violation {max_violation})")]
    NotPotential { max_violation: String },
}

/// Table behind a custom evaluator: sorted payoff lists to proxy outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CustomTable {
    entries: BTreeMap<Vec<Rational>, Rational>,
}

impl CustomTable {
    /// Keys are sorted ascending on insertion so lookups are by multiset.
    pub fn new(entries: impl IntoIterator<Item = (Vec<Rational>, Rational)>) -> CustomTable {
        let mut map = BTreeMap::new();
        for (mut key, value) in entries {
            key.sort();
            map.insert(key, value);
        }
        CustomTable { entries: map }
    }

    pub fn keys(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.entries.keys()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum EvaluatorKind {
    Sum,
    Max,
    Min,
    Mean,
    Custom(CustomTable),
}

/// A named payoff evaluator plus its boundedness metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluator {
    kind: EvaluatorKind,
    bounded: bool,
}

impl Evaluator {
    pub fn sum() -> Evaluator {
        // Sum is acceptable but not bounded: f({1, 1}) = 2 leaves [1, 1].
        Evaluator {
            kind: EvaluatorKind::Sum,
            bounded: false,
        }
    }

    pub fn max() -> Evaluator {
        Evaluator {
            kind: EvaluatorKind::Max,
            bounded: true,
        }
    }

    pub fn min() -> Evaluator {
        Evaluator {
            kind: EvaluatorKind::Min,
            bounded: true,
        }
    }

    pub fn mean() -> Evaluator {
        Evaluator {
            kind: EvaluatorKind::Mean,
            bounded: true,
        }
    }

    /// A custom evaluator backed by an explicit table. `bounded` is the
    /// caller's declaration; it is enforced on every row actually evaluated
    /// during a reduction.
    pub fn custom(table: CustomTable, bounded: bool) -> Evaluator {
        Evaluator {
            kind: EvaluatorKind::Custom(table),
            bounded,
        }
    }

    /// The four built-ins by name.
    pub fn by_name(name: &str) -> Option<Evaluator> {
        match name {
            "sum" => Some(Evaluator::sum()),
            "max" => Some(Evaluator::max()),
            "min" => Some(Evaluator::min()),
            "mean" => Some(Evaluator::mean()),
            _ => None,
        }
    }

    /// All four built-in evaluators, in a fixed order.
    pub fn builtins() -> Vec<Evaluator> {
        vec![
            Evaluator::sum(),
            Evaluator::max(),
            Evaluator::min(),
            Evaluator::mean(),
        ]
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            EvaluatorKind::Sum => "sum",
            EvaluatorKind::Max => "max",
            EvaluatorKind::Min => "min",
            EvaluatorKind::Mean => "mean",
            EvaluatorKind::Custom(_) => "custom",
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    /// Apply the evaluator to the multiset of `values`.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational, EvaluatorError> {
        if values.is_empty() {
            return Err(EvaluatorError::EmptyInput);
        }
        match &self.kind {
            EvaluatorKind::Sum => Ok(values.iter().sum()),
            EvaluatorKind::Max => Ok(values.iter().max().unwrap().clone()),
            EvaluatorKind::Min => Ok(values.iter().min().unwrap().clone()),
            EvaluatorKind::Mean => {
                let total: Rational = values.iter().sum();
                Ok(total / Rational::from_integer(BigInt::from(values.len())))
            }
            EvaluatorKind::Custom(table) => {
                let mut key = values.to_vec();
                key.sort();
                table.entries.get(&key).cloned().ok_or_else(|| {
                    EvaluatorError::MissingTableEntry(
                        key.iter().map(|v| v.to_string()).collect(),
                    )
                })
            }
        }
    }
}

/// One counterexample found while sampling the acceptability axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
    pub lower_output: Rational,
    pub upper_output: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct AcceptabilityReport {
    /// Dominating sorted pairs where the output failed to strictly increase.
    pub axiom1_violations: Vec<AxiomViolation>,
    /// Equal multisets (up to permutation) that produced different outputs.
    pub axiom2_violations: Vec<AxiomViolation>,
    pub trials_run: usize,
}

impl AcceptabilityReport {
    pub fn clean(&self) -> bool {
        self.axiom1_violations.is_empty() && self.axiom2_violations.is_empty()
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-24i64..=24)),
        BigInt::from(rng.gen_range(1i64..=8)),
    )
}

/// Sample pairs of equal-length sorted lists and test both acceptability
/// axioms. For elementwise-dominating pairs the output must strictly
/// increase; for permuted copies of one list the output must not change.
/// Custom evaluators are sampled over their declared table keys instead of
/// fresh random lists.
pub fn check_acceptability(f: &Evaluator, trials: usize, rng_seed: u64) -> AcceptabilityReport {
    assert!(trials >= 1, "at least one trial required");
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut report = AcceptabilityReport::default();

    if let EvaluatorKind::Custom(table) = &f.kind {
        let keys: Vec<&Vec<Rational>> = table.keys().collect();
        for _ in 0..trials {
            if keys.len() < 2 {
                break;
            }
            let a = keys[rng.gen_range(0..keys.len())];
            let b = keys[rng.gen_range(0..keys.len())];
            if a.len() != b.len() || a == b {
                continue;
            }
            report.trials_run += 1;
            let (lower, upper) = if a.iter().zip(b).all(|(x, y)| x < y) {
                (a, b)
            } else if b.iter().zip(a).all(|(x, y)| x < y) {
                (b, a)
            } else {
                continue;
            };
            let lower_output = f.evaluate(lower).expect("table key");
            let upper_output = f.evaluate(upper).expect("table key");
            if upper_output <= lower_output {
                report.axiom1_violations.push(AxiomViolation {
                    lower: lower.clone(),
                    upper: upper.clone(),
                    lower_output,
                    upper_output,
                });
            }
        }
        return report;
    }

    for _ in 0..trials {
        report.trials_run += 1;
        let len = rng.gen_range(1..=6);
        let mut lower: Vec<Rational> = (0..len).map(|_| random_rational(&mut rng)).collect();
        lower.sort();
        // Elementwise dominance survives re-sorting: order statistics are
        // monotone under pointwise domination.
        let mut upper: Vec<Rational> = lower
            .iter()
            .map(|v| v + Rational::new(BigInt::from(rng.gen_range(1i64..=6)), BigInt::from(4)))
            .collect();
        upper.sort();

        let lower_output = f.evaluate(&lower).expect("nonempty");
        let upper_output = f.evaluate(&upper).expect("nonempty");
        if upper_output <= lower_output {
            report.axiom1_violations.push(AxiomViolation {
                lower: lower.clone(),
                upper: upper.clone(),
                lower_output: lower_output.clone(),
                upper_output,
            });
        }

        let mut shuffled = lower.clone();
        for i in (1..shuffled.len()).rev() {
            let j = rng.gen_range(0..=i);
            shuffled.swap(i, j);
        }
        let shuffled_output = f.evaluate(&shuffled).expect("nonempty");
        if shuffled_output != lower_output {
            report.axiom2_violations.push(AxiomViolation {
                lower,
                upper: shuffled,
                lower_output,
                upper_output: shuffled_output,
            });
        }
    }
    report
}

/// A game in which some observers have replaced their utility with proxy
/// payoffs for one hidden player. Lives on the full joint action space: each
/// proxy tensor is constant along the hidden coordinate, and the welfare
/// tensor is the base game's, untouched.
#[derive(Clone, Debug)]
pub struct ReducedGame<'a> {
    base: &'a Game,
    observers: BTreeSet<usize>,
    hidden: usize,
    evaluator_name: String,
    evaluator_bounded: bool,
    proxies: BTreeMap<usize, Vec<Rational>>,
}

impl<'a> ReducedGame<'a> {
    pub fn base(&self) -> &Game {
        self.base
    }

    pub fn observers(&self) -> &BTreeSet<usize> {
        &self.observers
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    pub fn evaluator_name(&self) -> &str {
        &self.evaluator_name
    }

    pub fn evaluator_bounded(&self) -> bool {
        self.evaluator_bounded
    }

    pub fn proxy_tensor(&self, observer: usize) -> Option<&[Rational]> {
        self.proxies.get(&observer).map(|t| t.as_slice())
    }
}

impl StrategicGame for ReducedGame<'_> {
    fn space(&self) -> &ProfileSpace {
        self.base.space()
    }

    fn utility(&self, player: usize, flat: usize) -> &Rational {
        match self.proxies.get(&player) {
            Some(proxy) => &proxy[flat],
            None => self.base.utility(player, flat),
        }
    }

    fn welfare(&self, flat: usize) -> &Rational {
        self.base.welfare(flat)
    }
}

fn check_reduction_players(
    g: &Game,
    observer: usize,
    hidden: usize,
) -> Result<(), ReductionError> {
    let n = g.num_players();
    for player in [observer, hidden] {
        if player >= n {
            return Err(ReductionError::PlayerOutOfRange { player, players: n });
        }
    }
    if observer == hidden {
        return Err(ReductionError::ObserverIsHidden(observer));
    }
    Ok(())
}

fn proxy_tensor_for(
    g: &Game,
    observer: usize,
    hidden: usize,
    f: &Evaluator,
) -> Result<Vec<Rational>, ReductionError> {
    let space = g.space();
    let hidden_count = space.counts()[hidden];
    let mut proxy = vec![Rational::from_integer(0.into()); space.len()];
    for flat in space.flats() {
        if space.coord(flat, hidden) != 0 {
            continue;
        }
        // One entry per hidden action: multiset semantics, duplicates kept.
        let row: Vec<Rational> = (0..hidden_count)
            .map(|h| g.utility(observer, space.with_coord(flat, hidden, h)).clone())
            .collect();
        let value = f.evaluate(&row)?;
        if f.is_bounded() {
            let min = row.iter().min().unwrap();
            let max = row.iter().max().unwrap();
            if &value < min || &value > max {
                return Err(ReductionError::BoundednessViolated {
                    value: value.to_string(),
                    min: min.to_string(),
                    max: max.to_string(),
                });
            }
        }
        for h in 0..hidden_count {
            proxy[space.with_coord(flat, hidden, h)] = value.clone();
        }
    }
    Ok(proxy)
}

/// Replace `observer`'s utility with the evaluator's proxy for `hidden`:
/// for each context, the proxy is `f` applied to the list of utilities the
/// observer could receive across the hidden player's actions. Everyone
/// else's utility and the welfare tensor are untouched.
pub fn reduce_game<'a>(
    g: &'a Game,
    observer: usize,
    hidden: usize,
    f: &Evaluator,
) -> Result<ReducedGame<'a>, ReductionError> {
    check_reduction_players(g, observer, hidden)?;
    let proxy = proxy_tensor_for(g, observer, hidden, f)?;
    Ok(ReducedGame {
        base: g,
        observers: BTreeSet::from([observer]),
        hidden,
        evaluator_name: f.name().to_string(),
        evaluator_bounded: f.is_bounded(),
        proxies: BTreeMap::from([(observer, proxy)]),
    })
}

/// Every player except `hidden` becomes an observer applying `f`; the hidden
/// player keeps its original utility and acts as a plain optimizer.
pub fn reduce_game_all<'a>(
    g: &'a Game,
    hidden: usize,
    f: &Evaluator,
) -> Result<ReducedGame<'a>, ReductionError> {
    let n = g.num_players();
    if hidden >= n {
        return Err(ReductionError::PlayerOutOfRange {
            player: hidden,
            players: n,
        });
    }
    let mut proxies = BTreeMap::new();
    let mut observers = BTreeSet::new();
    for observer in 0..n {
        if observer == hidden {
            continue;
        }
        proxies.insert(observer, proxy_tensor_for(g, observer, hidden, f)?);
        observers.insert(observer);
    }
    Ok(ReducedGame {
        base: g,
        observers,
        hidden,
        evaluator_name: f.name().to_string(),
        evaluator_bounded: f.is_bounded(),
        proxies,
    })
}

/// The welfare tensor with the max evaluator applied to the hidden player:
/// a tensor over the joint space of everyone except `hidden`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPotential {
    hidden: usize,
    space: ProfileSpace,
    values: Vec<Rational>,
}

impl ReducedPotential {
    pub fn hidden(&self) -> usize {
        self.hidden
    }

    /// Space over the remaining players, in original player order.
    pub fn space(&self) -> &ProfileSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, reduced_flat: usize) -> &Rational {
        &self.values[reduced_flat]
    }

    /// Value at a full-space profile offset (the hidden coordinate is
    /// ignored).
    pub fn value_at_full(&self, full_space: &ProfileSpace, full_flat: usize) -> &Rational {
        let reduced = full_space.project_without(full_flat, self.hidden, &self.space);
        &self.values[reduced]
    }

    /// Expand back to a full-space tensor, constant along the hidden
    /// coordinate. Handy as a candidate proxy for alignment certificates.
    pub fn extend_to_full(&self, full_space: &ProfileSpace) -> Vec<Rational> {
        full_space
            .flats()
            .map(|flat| self.value_at_full(full_space, flat).clone())
            .collect()
    }
}

/// Max of welfare over the hidden player's actions, per remaining context.
/// Requires the game to pass the potential check against its welfare tensor.
pub fn reduced_potential(g: &Game, hidden: usize) -> Result<ReducedPotential, ReductionError> {
    if hidden >= g.num_players() {
        return Err(ReductionError::PlayerOutOfRange {
            player: hidden,
            players: g.num_players(),
        });
    }
    let check = crate::game::verify_potential(g);
    if !check.holds {
        return Err(ReductionError::NotPotential {
            max_violation: check.max_violation.to_string(),
        });
    }
    let space = g.space();
    let sub = space.without(hidden);
    let mut values = vec![Rational::from_integer(0.into()); sub.len()];
    for flat in space.flats() {
        if space.coord(flat, hidden) != 0 {
            continue;
        }
        let best = (0..space.counts()[hidden])
            .map(|h| g.welfare(space.with_coord(flat, hidden, h)))
            .max()
            .unwrap()
            .clone();
        values[space.project_without(flat, hidden, &sub)] = best;
    }
    Ok(ReducedPotential {
        hidden,
        space: sub,
        values,
    })
}
