//! Quality metrics and claim checkers.
//!
//! The optimistic ratio compares the best equilibrium welfare of the reduced
//! game against the worst of the nominal game; the pessimistic ratio swaps
//! the roles. Both always evaluate the nominal welfare tensor, never the
//! proxies. The checkers at the bottom re-derive, in exact arithmetic, the
//! inequality each named result asserts on a concrete instance.

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::dynamics::{
    abr_transition_matrix, is_weakly_acyclic, recurrent_classes, stochastically_stable_exact,
};
use crate::evaluators::{
    reduce_game, reduce_game_all, reduced_potential, Evaluator, ReducedGame, ReductionError,
};
use crate::game::{
    inconsequentiality, is_identical_interest, pure_nash_equilibria, verify_potential, Game,
    GameError, StrategicGame,
};
use crate::paper_games::{
    block_count, block_escape_states, block_identical_interest_game, intro_game,
    staggered_level_count, staggered_potential_game, GeneratorError,
};
use crate::rational::{int, one, zero, Rational};
use crate::space::{ActionProfile, ProfileSpace};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("the {which} equilibrium set is empty")]
    EmptyEquilibriumSet { which: &'static str },
    #[error("nominal {extreme} welfare over the equilibrium set is zero; the ratio is undefined")]
    ZeroNominalWelfare { extreme: &'static str },
    #[error("games have different action spaces")]
    ShapeMismatch,
    #[error("reduction used unbounded evaluator '{0}'")]
    UnboundedEvaluator(String),
    #[error("game is not a potential game (max violation {0})")]
    NotPotential(String),
    #[error("game is not an identical-interest game")]
    NotIdenticalInterest,
    #[error("expected a unique pure Nash equilibrium, found {count}")]
    NonUniquePne { count: usize },
    #[error("need at least {needed} players, got {got}")]
    TooFewPlayers { needed: usize, got: usize },
    #[error("proxy tensor has {got} entries, expected {expected}")]
    ProxyLength { expected: usize, got: usize },
    #[error("proxy tensor varies along the hidden coordinate at profile {0:?}")]
    ProxyVariesAlongHidden(ActionProfile),
    #[error("observer and hidden player coincide at index {0}")]
    ObserverIsHidden(usize),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Which equilibrium set a quality report ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquilibriumConcept {
    Pne,
    Abr,
    Ss,
}

impl EquilibriumConcept {
    pub fn name(self) -> &'static str {
        match self {
            EquilibriumConcept::Pne => "pne",
            EquilibriumConcept::Abr => "abr",
            EquilibriumConcept::Ss => "ss",
        }
    }

    pub fn by_name(name: &str) -> Option<EquilibriumConcept> {
        match name {
            "pne" => Some(EquilibriumConcept::Pne),
            "abr" => Some(EquilibriumConcept::Abr),
            "ss" => Some(EquilibriumConcept::Ss),
            _ => None,
        }
    }
}

/// Member states of the chosen equilibrium concept. Recurrent classes are
/// flattened to their member states so welfare extremes are over states.
pub fn equilibrium_states<G: StrategicGame + ?Sized>(
    g: &G,
    concept: EquilibriumConcept,
) -> BTreeSet<usize> {
    match concept {
        EquilibriumConcept::Pne => pure_nash_equilibria(g),
        EquilibriumConcept::Abr => recurrent_classes(&abr_transition_matrix(g)).states(),
        EquilibriumConcept::Ss => stochastically_stable_exact(g).stable_states,
    }
}

/// Welfare extremes of both games' equilibrium sets plus the two quality
/// ratios. `q_minus` is reduced-best over nominal-worst; `q_plus` is
/// reduced-worst over nominal-best. A ratio is absent when its nominal
/// denominator is zero.
#[derive(Clone, Debug)]
pub struct QualityReport {
    pub concept: EquilibriumConcept,
    pub nominal_states: BTreeSet<usize>,
    pub reduced_states: BTreeSet<usize>,
    pub nominal_welfare_min: Rational,
    pub nominal_welfare_max: Rational,
    pub reduced_welfare_min: Rational,
    pub reduced_welfare_max: Rational,
    pub q_minus: Option<Rational>,
    pub q_plus: Option<Rational>,
}

fn welfare_extremes(g: &Game, states: &BTreeSet<usize>) -> (Rational, Rational) {
    let mut min: Option<&Rational> = None;
    let mut max: Option<&Rational> = None;
    for &s in states {
        let w = g.welfare(s);
        if min.map_or(true, |m| w < m) {
            min = Some(w);
        }
        if max.map_or(true, |m| w > m) {
            max = Some(w);
        }
    }
    (min.unwrap().clone(), max.unwrap().clone())
}

/// Build the full quality report for one (game, reduction, concept) triple.
pub fn quality_report(
    g: &Game,
    r: &ReducedGame<'_>,
    concept: EquilibriumConcept,
) -> Result<QualityReport, AnalysisError> {
    let nominal_states = equilibrium_states(g, concept);
    if nominal_states.is_empty() {
        return Err(AnalysisError::EmptyEquilibriumSet { which: "nominal" });
    }
    let reduced_states = equilibrium_states(r, concept);
    if reduced_states.is_empty() {
        return Err(AnalysisError::EmptyEquilibriumSet { which: "reduced" });
    }
    let (nominal_welfare_min, nominal_welfare_max) = welfare_extremes(g, &nominal_states);
    let (reduced_welfare_min, reduced_welfare_max) = welfare_extremes(g, &reduced_states);
    let q_minus = if nominal_welfare_min.is_zero() {
        None
    } else {
        Some(&reduced_welfare_max / &nominal_welfare_min)
    };
    let q_plus = if nominal_welfare_max.is_zero() {
        None
    } else {
        Some(&reduced_welfare_min / &nominal_welfare_max)
    };
    Ok(QualityReport {
        concept,
        nominal_states,
        reduced_states,
        nominal_welfare_min,
        nominal_welfare_max,
        reduced_welfare_min,
        reduced_welfare_max,
        q_minus,
        q_plus,
    })
}

/// Optimistic quality: best reduced equilibrium welfare over worst nominal.
/// Errors when the nominal minimum is zero rather than returning an
/// infinity.
pub fn quality_minus(
    g: &Game,
    r: &ReducedGame<'_>,
    concept: EquilibriumConcept,
) -> Result<QualityReport, AnalysisError> {
    let report = quality_report(g, r, concept)?;
    if report.q_minus.is_none() {
        return Err(AnalysisError::ZeroNominalWelfare { extreme: "minimum" });
    }
    Ok(report)
}

/// Pessimistic quality: worst reduced equilibrium welfare over best nominal.
pub fn quality_plus(
    g: &Game,
    r: &ReducedGame<'_>,
    concept: EquilibriumConcept,
) -> Result<QualityReport, AnalysisError> {
    let report = quality_report(g, r, concept)?;
    if report.q_plus.is_none() {
        return Err(AnalysisError::ZeroNominalWelfare { extreme: "maximum" });
    }
    Ok(report)
}

/// Maximum pairwise difference between two games on the same action space:
/// the largest discrepancy between corresponding unilateral utility
/// differences. A pseudometric; constant per-player shifts cancel.
pub fn max_pairwise_difference<G1, G2>(g1: &G1, g2: &G2) -> Result<Rational, AnalysisError>
where
    G1: StrategicGame + ?Sized,
    G2: StrategicGame + ?Sized,
{
    if g1.action_counts() != g2.action_counts() {
        return Err(AnalysisError::ShapeMismatch);
    }
    let space = g1.space();
    let mut worst = zero();
    for flat in space.flats() {
        for player in 0..space.num_players() {
            let u1 = g1.utility(player, flat);
            let u2 = g2.utility(player, flat);
            for action in 0..space.counts()[player] {
                let to = space.with_coord(flat, player, action);
                let d1 = g1.utility(player, to) - u1;
                let d2 = g2.utility(player, to) - u2;
                let gap = if d1 > d2 { d1 - d2 } else { d2 - d1 };
                if gap > worst {
                    worst = gap;
                }
            }
        }
    }
    Ok(worst)
}

/// Outcome of re-deriving one named claim on a concrete instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Pass,
    Fail,
    /// The game does not belong to the class the claim addresses.
    Skipped,
}

/// Exact verdict for one claim: the claimed bound, the measured value, and
/// the witness profiles behind the measurement.
#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub id: String,
    pub status: VerdictStatus,
    pub claimed: Option<Rational>,
    pub measured: Option<Rational>,
    pub witnesses: Vec<ActionProfile>,
    pub detail: String,
}

impl TheoremVerdict {
    pub fn passed(&self) -> bool {
        self.status == VerdictStatus::Pass
    }

    fn skipped(id: &str, detail: String) -> TheoremVerdict {
        TheoremVerdict {
            id: id.to_string(),
            status: VerdictStatus::Skipped,
            claimed: None,
            measured: None,
            witnesses: Vec::new(),
            detail,
        }
    }
}

fn verdict(
    id: &str,
    pass: bool,
    claimed: Option<Rational>,
    measured: Option<Rational>,
    witnesses: Vec<ActionProfile>,
    detail: String,
) -> TheoremVerdict {
    TheoremVerdict {
        id: id.to_string(),
        status: if pass {
            VerdictStatus::Pass
        } else {
            VerdictStatus::Fail
        },
        claimed,
        measured,
        witnesses,
        detail,
    }
}

fn welfare_argmax(g: &Game) -> BTreeSet<usize> {
    let best = g
        .space()
        .flats()
        .map(|f| g.welfare(f))
        .max()
        .expect("nonempty space")
        .clone();
    g.space().flats().filter(|&f| g.welfare(f) == &best).collect()
}

/// Bounded reductions of a potential game cannot push stochastically stable
/// welfare below `max(0, 1 - 8*eps*(|A|-1))`. The check verifies both the
/// closeness premise (pairwise difference at most `2*eps`) and the welfare
/// conclusion, with eps measured from the game as the observers' worst
/// inconsequentiality toward the hidden player.
pub fn candogan_bound_check(
    g: &Game,
    r: &ReducedGame<'_>,
) -> Result<TheoremVerdict, AnalysisError> {
    let check = verify_potential(g);
    if !check.holds {
        return Err(AnalysisError::NotPotential(check.max_violation.to_string()));
    }
    if !r.evaluator_bounded() {
        return Err(AnalysisError::UnboundedEvaluator(
            r.evaluator_name().to_string(),
        ));
    }
    let mut eps = zero();
    for &observer in r.observers() {
        let e = inconsequentiality(g, observer, r.hidden())?;
        if e > eps {
            eps = e;
        }
    }
    let k = int(g.space().len() as i64);
    let bound = {
        let raw = one() - int(8) * &eps * (&k - one());
        if raw < zero() {
            zero()
        } else {
            raw
        }
    };
    let mpd = max_pairwise_difference(g, r)?;
    let mpd_ok = mpd <= int(2) * &eps;
    let ss = stochastically_stable_exact(r);
    let mut min_welfare: Option<Rational> = None;
    let mut witnesses = Vec::new();
    for &s in &ss.stable_states {
        let w = g.welfare(s).clone();
        match &min_welfare {
            Some(current) if &w > current => {}
            Some(current) if &w == current => witnesses.push(g.space().unflatten(s)),
            _ => {
                min_welfare = Some(w);
                witnesses = vec![g.space().unflatten(s)];
            }
        }
    }
    let measured = min_welfare.expect("stable set nonempty");
    let pass = mpd_ok && measured >= bound;
    let vacuous = bound.is_zero();
    Ok(verdict(
        "thm-candogan",
        pass,
        Some(bound.clone()),
        Some(measured),
        witnesses,
        format!(
            "eps={eps}, |A|={}, mpd={mpd} (cap {}), bound={bound}{}",
            g.space().len(),
            int(2) * &eps,
            if vacuous { "; bound vacuous, no constraint imposed" } else { "" }
        ),
    ))
}

/// Result of the coarse-alignment certificate: the argmax-inclusion premise
/// checked context by context against the reduced potential, and, when the
/// premise holds, a direct verification of the conclusion on the reduced
/// game built from the candidate proxies.
#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub premise_holds: bool,
    /// A context (profile of everyone except observer and hidden, embedded
    /// in a full profile with zeros elsewhere) where the inclusion fails.
    pub failing_context: Option<ActionProfile>,
    pub conclusion_verified: Option<bool>,
    pub nominal_equilibrium: ActionProfile,
}

struct ProxyGame<'a> {
    base: &'a Game,
    observer: usize,
    proxy: &'a [Rational],
}

impl StrategicGame for ProxyGame<'_> {
    fn space(&self) -> &ProfileSpace {
        self.base.space()
    }

    fn utility(&self, player: usize, flat: usize) -> &Rational {
        if player == self.observer {
            &self.proxy[flat]
        } else {
            self.base.utility(player, flat)
        }
    }

    fn welfare(&self, flat: usize) -> &Rational {
        self.base.welfare(flat)
    }
}

/// Certify a candidate proxy tensor for player 1 (index 0) against the
/// reduced potential: wherever the proxy's per-context argmax set is
/// contained in the reduced potential's, the reduced game is weakly acyclic
/// with the nominal game's unique equilibrium. Both the premise and the
/// conclusion are checked directly.
pub fn coarse_alignment_certificate(
    g: &Game,
    proxy: &[Rational],
    hidden: usize,
) -> Result<CertificateReport, AnalysisError> {
    let observer = 0usize;
    let n = g.num_players();
    if n < 3 {
        return Err(AnalysisError::TooFewPlayers { needed: 3, got: n });
    }
    if hidden == observer {
        return Err(AnalysisError::ObserverIsHidden(observer));
    }
    let space = g.space();
    if proxy.len() != space.len() {
        return Err(AnalysisError::ProxyLength {
            expected: space.len(),
            got: proxy.len(),
        });
    }
    for flat in space.flats() {
        if proxy[flat] != proxy[space.with_coord(flat, hidden, 0)] {
            return Err(AnalysisError::ProxyVariesAlongHidden(space.unflatten(flat)));
        }
    }
    let check = verify_potential(g);
    if !check.holds {
        return Err(AnalysisError::NotPotential(check.max_violation.to_string()));
    }
    let pne = pure_nash_equilibria(g);
    if pne.len() != 1 {
        return Err(AnalysisError::NonUniquePne { count: pne.len() });
    }
    let nominal_equilibrium = space.unflatten(*pne.iter().next().unwrap());
    let reduced = reduced_potential(g, hidden)?;

    let argmax_along_observer = |values: &dyn Fn(usize) -> Rational, context: usize| {
        let mut best: Option<Rational> = None;
        let mut set = BTreeSet::new();
        for a in 0..space.counts()[observer] {
            let v = values(space.with_coord(context, observer, a));
            match &best {
                Some(b) if &v < b => {}
                Some(b) if &v == b => {
                    set.insert(a);
                }
                _ => {
                    best = Some(v);
                    set.clear();
                    set.insert(a);
                }
            }
        }
        set
    };

    let mut premise_holds = true;
    let mut failing_context = None;
    for context in space.flats() {
        if space.coord(context, observer) != 0 || space.coord(context, hidden) != 0 {
            continue;
        }
        let proxy_arg = argmax_along_observer(&|f| proxy[f].clone(), context);
        let potential_arg =
            argmax_along_observer(&|f| reduced.value_at_full(space, f).clone(), context);
        if !proxy_arg.is_subset(&potential_arg) {
            premise_holds = false;
            failing_context = Some(space.unflatten(context));
            break;
        }
    }

    let conclusion_verified = if premise_holds {
        let proxied = ProxyGame {
            base: g,
            observer,
            proxy,
        };
        let weakly_acyclic = is_weakly_acyclic(&proxied);
        let reduced_pne = pure_nash_equilibria(&proxied);
        Some(
            weakly_acyclic.holds
                && reduced_pne.len() == 1
                && space.unflatten(*reduced_pne.iter().next().unwrap()) == nominal_equilibrium,
        )
    } else {
        None
    };

    Ok(CertificateReport {
        premise_holds,
        failing_context,
        conclusion_verified,
        nominal_equilibrium,
    })
}

// ---------------------------------------------------------------------------
// Named claim checkers. Each rebuilds or inspects a concrete instance and
// re-derives the claimed inequality with exact arithmetic.
// ---------------------------------------------------------------------------

/// The motivating reduced-matrix flip: player 1's proxies make the second
/// row dominant under every built-in evaluator, so all best-reply paths lead
/// to the lower-right profile.
pub fn check_intro(delta: &Rational) -> Result<TheoremVerdict, AnalysisError> {
    let g = intro_game(delta)?;
    let space = g.space().clone();
    let upper_left = space.flatten(&[0, 0, 0]);
    let lower_right = space.flatten(&[1, 1, 1]);
    let mut failures = Vec::new();

    if pure_nash_equilibria(&g) != BTreeSet::from([upper_left]) {
        failures.push("nominal equilibrium is not the upper-left profile".to_string());
    }
    let nominal_abr = recurrent_classes(&abr_transition_matrix(&g));
    if nominal_abr.classes() != [BTreeSet::from([upper_left])] {
        failures.push("nominal best replies do not settle on the upper-left".to_string());
    }
    // The max evaluator reproduces the printed reduced matrix.
    let r = reduce_game(&g, 0, 1, &Evaluator::max())?;
    let expect = [
        ([0usize, 0, 0], one() - delta),
        ([1, 0, 0], one()),
        ([0, 0, 1], int(2) * delta),
        ([1, 0, 1], int(3) * delta),
    ];
    for (profile, value) in expect {
        if r.utility(0, space.flatten(&profile)) != &value {
            failures.push(format!("reduced matrix entry at {profile:?} is wrong"));
        }
    }
    for f in Evaluator::builtins() {
        let r = reduce_game(&g, 0, 1, &f)?;
        for a3 in 0..2 {
            let context = space.flatten(&[0, 0, a3]);
            let top = r.utility(0, space.with_coord(context, 0, 0));
            let bottom = r.utility(0, space.with_coord(context, 0, 1));
            if bottom <= top {
                failures.push(format!("{}: row B is not dominant", f.name()));
            }
        }
        let classes = recurrent_classes(&abr_transition_matrix(&r));
        if classes.classes() != [BTreeSet::from([lower_right])] {
            failures.push(format!("{}: reduced paths miss the lower-right", f.name()));
        }
    }
    let pass = failures.is_empty();
    Ok(verdict(
        "intro",
        pass,
        Some(zero()),
        Some(int(failures.len() as i64)),
        vec![space.unflatten(lower_right)],
        if pass {
            "reduced matrices and best-reply flow match the motivating example".to_string()
        } else {
            failures.join("; ")
        },
    ))
}

/// In the class of all games, no acceptable evaluator bounds the optimistic
/// quality away from zero: the intro construction pins it to
/// `5*delta / (3 - delta)` for every built-in evaluator.
pub fn check_prop_bad(
    delta: &Rational,
    evaluators: &[Evaluator],
) -> Result<TheoremVerdict, AnalysisError> {
    let g = intro_game(delta)?;
    let space = g.space().clone();
    let upper_left = space.flatten(&[0, 0, 0]);
    let lower_right = space.flatten(&[1, 1, 1]);
    let claimed = int(5) * delta / (int(3) - delta);
    let mut failures = Vec::new();
    let mut measured = zero();
    for f in evaluators {
        let r = reduce_game(&g, 0, 1, f)?;
        if pure_nash_equilibria(&r) != BTreeSet::from([lower_right]) {
            failures.push(format!("{}: reduced equilibrium moved", f.name()));
            continue;
        }
        let report = quality_minus(&g, &r, EquilibriumConcept::Abr)?;
        if report.nominal_states != BTreeSet::from([upper_left]) {
            failures.push(format!("{}: nominal recurrent set moved", f.name()));
        }
        if report.reduced_states != BTreeSet::from([lower_right]) {
            failures.push(format!("{}: reduced recurrent set moved", f.name()));
        }
        let q = report.q_minus.expect("nominal minimum is 1");
        if q != claimed {
            failures.push(format!("{}: quality ratio {q} differs", f.name()));
        }
        if q > measured {
            measured = q;
        }
    }
    let pass = failures.is_empty();
    Ok(verdict(
        "prop-bad",
        pass,
        Some(claimed),
        Some(measured),
        vec![space.unflatten(lower_right)],
        if pass {
            format!("{} evaluators all pinned to the ratio", evaluators.len())
        } else {
            failures.join("; ")
        },
    ))
}

fn staggered_expectations(
    eps: &Rational,
) -> Result<(Game, usize, usize, usize, Rational), AnalysisError> {
    let g = staggered_potential_game(eps)?;
    let m = staggered_level_count(eps);
    let space = g.space();
    let origin = space.flatten(&[0, 0, 0]);
    let corner = space.flatten(&[m + 1, 0, m]);
    let corner_welfare = one() - int(2) * eps - int(m as i64) * eps;
    Ok((g, m, origin, corner, corner_welfare))
}

/// Staggered potential game: every acceptable evaluator leaves a weakly
/// acyclic reduced game whose unique equilibrium has welfare exactly
/// `1 - 2*eps - M*eps`, at most the 6*eps inconsequentiality of the hidden
/// player.
pub fn check_thm_pgbad(
    eps: &Rational,
    evaluators: &[Evaluator],
) -> Result<TheoremVerdict, AnalysisError> {
    let (g, _m, origin, corner, corner_welfare) = staggered_expectations(eps)?;
    let space = g.space().clone();
    let claimed = int(6) * eps;
    let mut failures = Vec::new();
    let mut measured = zero();

    if !verify_potential(&g).holds {
        failures.push("construction is not a potential game".to_string());
    }
    if pure_nash_equilibria(&g) != BTreeSet::from([origin]) {
        failures.push("nominal equilibrium is not unique at the origin".to_string());
    }
    if g.welfare(origin) != &one() {
        failures.push("origin welfare is not 1".to_string());
    }
    let inc = inconsequentiality(&g, 0, 1)?;
    if inc != claimed {
        failures.push(format!("inconsequentiality {inc}, expected {claimed}"));
    }
    for f in evaluators {
        let r = reduce_game(&g, 0, 1, f)?;
        let acyclic = is_weakly_acyclic(&r);
        if !acyclic.holds {
            failures.push(format!("{}: reduced game is not weakly acyclic", f.name()));
        }
        if pure_nash_equilibria(&r) != BTreeSet::from([corner]) {
            failures.push(format!("{}: reduced equilibrium moved", f.name()));
            continue;
        }
        if g.welfare(corner) != &corner_welfare {
            failures.push(format!("{}: corner welfare differs", f.name()));
        }
        let report = quality_minus(&g, &r, EquilibriumConcept::Abr)?;
        let q = report.q_minus.expect("nominal minimum is 1");
        if q != corner_welfare {
            failures.push(format!("{}: quality ratio {q} differs", f.name()));
        }
        if q > claimed {
            failures.push(format!("{}: ratio {q} exceeds the bound", f.name()));
        }
        if q > measured {
            measured = q;
        }
    }
    let pass = failures.is_empty();
    Ok(verdict(
        "thm-pgbad",
        pass,
        Some(claimed),
        Some(measured),
        vec![space.unflatten(corner)],
        if pass {
            format!("reduced equilibrium welfare {corner_welfare} for every evaluator")
        } else {
            failures.join("; ")
        },
    ))
}

/// Same construction under log-linear learning: the stochastically stable
/// sets of nominal and reduced games are the origin and the staggered corner
/// respectively.
pub fn check_thm_sspg(
    eps: &Rational,
    evaluators: &[Evaluator],
) -> Result<TheoremVerdict, AnalysisError> {
    let (g, _m, origin, corner, corner_welfare) = staggered_expectations(eps)?;
    let space = g.space().clone();
    let claimed = int(6) * eps;
    let mut failures = Vec::new();
    let mut measured = zero();

    let nominal_ss = stochastically_stable_exact(&g);
    if nominal_ss.stable_states != BTreeSet::from([origin]) {
        failures.push("nominal stable set is not the origin".to_string());
    }
    for f in evaluators {
        let r = reduce_game(&g, 0, 1, f)?;
        let reduced_ss = stochastically_stable_exact(&r);
        if reduced_ss.stable_states != BTreeSet::from([corner]) {
            failures.push(format!("{}: reduced stable set moved", f.name()));
            continue;
        }
        let report = quality_minus(&g, &r, EquilibriumConcept::Ss)?;
        let q = report.q_minus.expect("nominal minimum is 1");
        if q != corner_welfare || q > claimed {
            failures.push(format!("{}: stable-set quality {q} is wrong", f.name()));
        }
        if q > measured {
            measured = q;
        }
    }
    let pass = failures.is_empty();
    Ok(verdict(
        "thm-sspg",
        pass,
        Some(claimed),
        Some(measured),
        vec![space.unflatten(corner)],
        if pass {
            "stable sets match the construction under every evaluator".to_string()
        } else {
            failures.join("; ")
        },
    ))
}

/// Identical-interest games under the max evaluator keep every welfare
/// maximizer as a reduced equilibrium and introduce no new equilibria.
pub fn check_prop_ii(g: &Game, hidden: usize) -> Result<TheoremVerdict, AnalysisError> {
    if !is_identical_interest(g) {
        return Err(AnalysisError::NotIdenticalInterest);
    }
    let r = reduce_game(g, 0, hidden, &Evaluator::max())?;
    let maximizers = welfare_argmax(g);
    let reduced_pne = pure_nash_equilibria(&r);
    let nominal_pne = pure_nash_equilibria(g);
    let mut violations = Vec::new();
    for &a in &maximizers {
        if !reduced_pne.contains(&a) {
            violations.push(g.space().unflatten(a));
        }
    }
    for &b in &reduced_pne {
        if !nominal_pne.contains(&b) {
            violations.push(g.space().unflatten(b));
        }
    }
    let pass = violations.is_empty();
    Ok(verdict(
        "prop-ii",
        pass,
        Some(zero()),
        Some(int(violations.len() as i64)),
        violations,
        format!(
            "{} maximizers kept, {} reduced equilibria all nominal",
            maximizers.len(),
            reduced_pne.len()
        ),
    ))
}

/// Block identical-interest game: every acceptable evaluator drives the
/// stochastically stable set into the terminal escape pair, whose welfare is
/// at most `2*eps`, while the nominal stable set keeps welfare 1.
pub fn check_thm_ss(
    eps: &Rational,
    evaluators: &[Evaluator],
) -> Result<TheoremVerdict, AnalysisError> {
    let g = block_identical_interest_game(eps)?;
    let m = block_count(eps);
    let space = g.space().clone();
    let claimed = int(2) * eps;
    let expected_nominal = BTreeSet::from([space.flatten(&[0, 0, 0]), space.flatten(&[1, 1, 0])]);
    let terminal = block_escape_states(&g, m);
    let mut failures = Vec::new();
    let mut measured = zero();

    let nominal_ss = stochastically_stable_exact(&g);
    if nominal_ss.stable_states != expected_nominal {
        failures.push("nominal stable set is not the top block pair".to_string());
    }
    for &s in &expected_nominal {
        if g.welfare(s) != &one() {
            failures.push("top block welfare is not 1".to_string());
        }
    }
    for f in evaluators {
        let r = reduce_game(&g, 0, 1, f)?;
        let reduced_ss = stochastically_stable_exact(&r);
        if !reduced_ss.stable_states.is_subset(&terminal) {
            failures.push(format!("{}: stable set escapes the terminal pair", f.name()));
            continue;
        }
        for &s in &reduced_ss.stable_states {
            if g.welfare(s) > &claimed {
                failures.push(format!("{}: stable welfare above 2*eps", f.name()));
            }
        }
        let report = quality_minus(&g, &r, EquilibriumConcept::Ss)?;
        let q = report.q_minus.expect("nominal minimum is 1");
        if q > claimed {
            failures.push(format!("{}: quality {q} above the bound", f.name()));
        }
        if q > measured {
            measured = q;
        }
    }
    let pass = failures.is_empty();
    let detail = if pass {
        format!("stable welfare capped at {claimed} under every evaluator")
    } else {
        failures.join("; ")
    };
    Ok(verdict(
        "thm-ss",
        pass,
        Some(claimed),
        Some(measured),
        terminal.iter().map(|&s| space.unflatten(s)).collect(),
        detail,
    ))
}

/// When every observer applies the max evaluator to the hidden player of an
/// identical-interest game, the pessimistic stable-set quality stays at
/// least one minus the hidden player's inconsequentiality.
pub fn check_thm_all(g: &Game, hidden: usize) -> Result<TheoremVerdict, AnalysisError> {
    if !is_identical_interest(g) {
        return Err(AnalysisError::NotIdenticalInterest);
    }
    let observer = (0..g.num_players()).find(|&p| p != hidden).expect("n >= 2");
    let eps = inconsequentiality(g, observer, hidden)?;
    let claimed = one() - &eps;
    let r = reduce_game_all(g, hidden, &Evaluator::max())?;
    let report = quality_plus(g, &r, EquilibriumConcept::Ss)?;
    let measured = report.q_plus.clone().expect("nonzero nominal maximum");
    let witnesses = report
        .reduced_states
        .iter()
        .filter(|&&s| g.welfare(s) == &report.reduced_welfare_min)
        .map(|&s| g.space().unflatten(s))
        .collect();
    let pass = measured >= claimed;
    Ok(verdict(
        "thm-all",
        pass,
        Some(claimed),
        Some(measured),
        witnesses,
        format!("eps={eps}, all observers apply max"),
    ))
}

/// Certificate wrapper: with the reduced potential itself as the proxy, the
/// premise holds by reflexivity and the conclusion must verify directly.
pub fn check_prop_coarse(g: &Game, hidden: usize) -> Result<TheoremVerdict, AnalysisError> {
    let reduced = reduced_potential(g, hidden)?;
    let proxy = reduced.extend_to_full(g.space());
    let report = coarse_alignment_certificate(g, &proxy, hidden)?;
    let pass = report.premise_holds && report.conclusion_verified == Some(true);
    Ok(verdict(
        "prop-coarse",
        pass,
        Some(one()),
        Some(if pass { one() } else { zero() }),
        vec![report.nominal_equilibrium.clone()],
        match (&report.premise_holds, &report.conclusion_verified) {
            (true, Some(true)) => "aligned proxies keep the unique equilibrium".to_string(),
            (true, _) => "premise held but the conclusion failed".to_string(),
            _ => format!("premise failed at context {:?}", report.failing_context),
        },
    ))
}

/// Knobs for [`theorem_suite`]: the constructions behind the existential
/// claims are rebuilt from these parameters when present; class-level claims
/// run directly on the supplied game when it belongs to the class.
#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub hidden: usize,
    pub intro_delta: Option<Rational>,
    pub staggered_eps: Option<Rational>,
    pub block_eps: Option<Rational>,
}

impl SuiteOptions {
    pub fn for_hidden(hidden: usize) -> SuiteOptions {
        SuiteOptions {
            hidden,
            ..SuiteOptions::default()
        }
    }
}

/// Run every claim checker applicable to `g` (plus the parameterized
/// constructions requested in `opts`), reporting one verdict per claim.
/// Claims whose class precondition fails are reported as skipped, never
/// silently dropped.
pub fn theorem_suite(
    g: &Game,
    evaluators: &[Evaluator],
    opts: &SuiteOptions,
) -> Vec<TheoremVerdict> {
    let hidden = if opts.hidden == 0 { 1 } else { opts.hidden };
    let mut verdicts = Vec::new();

    match &opts.intro_delta {
        Some(delta) => {
            verdicts.push(check_intro(delta).unwrap_or_else(|e| {
                verdict("intro", false, None, None, vec![], e.to_string())
            }));
            verdicts.push(check_prop_bad(delta, evaluators).unwrap_or_else(|e| {
                verdict("prop-bad", false, None, None, vec![], e.to_string())
            }));
        }
        None => {
            verdicts.push(TheoremVerdict::skipped(
                "prop-bad",
                "existential claim: supply the intro construction's delta".to_string(),
            ));
        }
    }

    match &opts.staggered_eps {
        Some(eps) => {
            verdicts.push(check_thm_pgbad(eps, evaluators).unwrap_or_else(|e| {
                verdict("thm-pgbad", false, None, None, vec![], e.to_string())
            }));
            verdicts.push(check_thm_sspg(eps, evaluators).unwrap_or_else(|e| {
                verdict("thm-sspg", false, None, None, vec![], e.to_string())
            }));
        }
        None => {
            verdicts.push(TheoremVerdict::skipped(
                "thm-pgbad",
                "existential claim: supply the staggered construction's eps".to_string(),
            ));
            verdicts.push(TheoremVerdict::skipped(
                "thm-sspg",
                "existential claim: supply the staggered construction's eps".to_string(),
            ));
        }
    }

    match &opts.block_eps {
        Some(eps) => {
            verdicts.push(check_thm_ss(eps, evaluators).unwrap_or_else(|e| {
                verdict("thm-ss", false, None, None, vec![], e.to_string())
            }));
        }
        None => {
            verdicts.push(TheoremVerdict::skipped(
                "thm-ss",
                "existential claim: supply the block construction's eps".to_string(),
            ));
        }
    }

    if is_identical_interest(g) {
        verdicts.push(check_prop_ii(g, hidden).unwrap_or_else(|e| {
            verdict("prop-ii", false, None, None, vec![], e.to_string())
        }));
        verdicts.push(check_thm_all(g, hidden).unwrap_or_else(|e| {
            verdict("thm-all", false, None, None, vec![], e.to_string())
        }));
    } else {
        verdicts.push(TheoremVerdict::skipped(
            "prop-ii",
            "game is not identical-interest".to_string(),
        ));
        verdicts.push(TheoremVerdict::skipped(
            "thm-all",
            "game is not identical-interest".to_string(),
        ));
    }

    if verify_potential(g).holds {
        let mut bounded_used = false;
        let mut all_pass = true;
        let mut parts = Vec::new();
        let mut claimed = None;
        let mut measured: Option<Rational> = None;
        for f in evaluators.iter().filter(|f| f.is_bounded()) {
            bounded_used = true;
            match reduce_game(g, 0, hidden, f).map_err(AnalysisError::from).and_then(|r| candogan_bound_check(g, &r)) {
                Ok(v) => {
                    all_pass &= v.passed();
                    claimed = v.claimed.clone();
                    measured = match measured {
                        Some(current) => Some(current.min(v.measured.clone().unwrap())),
                        None => v.measured.clone(),
                    };
                    parts.push(format!("{}: {}", f.name(), if v.passed() { "ok" } else { "fail" }));
                }
                Err(e) => {
                    all_pass = false;
                    parts.push(format!("{}: {e}", f.name()));
                }
            }
        }
        if bounded_used {
            verdicts.push(verdict(
                "thm-candogan",
                all_pass,
                claimed,
                measured,
                vec![],
                parts.join(", "),
            ));
        } else {
            verdicts.push(TheoremVerdict::skipped(
                "thm-candogan",
                "no bounded evaluator supplied".to_string(),
            ));
        }

        let unique = pure_nash_equilibria(g).len() == 1;
        if unique && g.num_players() >= 3 {
            verdicts.push(check_prop_coarse(g, hidden).unwrap_or_else(|e| {
                verdict("prop-coarse", false, None, None, vec![], e.to_string())
            }));
        } else {
            verdicts.push(TheoremVerdict::skipped(
                "prop-coarse",
                "needs a potential game with at least 3 players and a unique equilibrium"
                    .to_string(),
            ));
        }
    } else {
        for id in ["thm-candogan", "prop-coarse"] {
            verdicts.push(TheoremVerdict::skipped(
                id,
                "game is not a potential game".to_string(),
            ));
        }
    }

    verdicts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper_games::{random_identical_interest_game, random_potential_game};
    use crate::rational::rat;
    use rand::{Rng, SeedableRng};

    #[test]
    fn intro_quality_ratio_is_five_twentyninths() {
        let delta = rat(1, 10);
        let g = intro_game(&delta).unwrap();
        for f in Evaluator::builtins() {
            let r = reduce_game(&g, 0, 1, &f).unwrap();
            let report = quality_minus(&g, &r, EquilibriumConcept::Abr).unwrap();
            assert_eq!(report.q_minus.as_ref(), Some(&rat(5, 29)), "{}", f.name());
        }
    }

    #[test]
    fn staggered_quality_matches_inconsequentiality_level() {
        let eps = rat(1, 10);
        let g = staggered_potential_game(&eps).unwrap();
        let r = reduce_game(&g, 0, 1, &Evaluator::mean()).unwrap();
        let report = quality_minus(&g, &r, EquilibriumConcept::Abr).unwrap();
        assert_eq!(report.q_minus.as_ref(), Some(&rat(3, 5)));
        assert_eq!(inconsequentiality(&g, 0, 1).unwrap(), rat(3, 5));
    }

    #[test]
    fn one_action_hidden_player_gives_ratio_one() {
        let g = random_potential_game(3, &[3, 1, 3], &zero(), 4).unwrap();
        let r = reduce_game(&g, 0, 1, &Evaluator::min()).unwrap();
        for concept in [
            EquilibriumConcept::Pne,
            EquilibriumConcept::Abr,
            EquilibriumConcept::Ss,
        ] {
            let report = quality_report(&g, &r, concept).unwrap();
            assert_eq!(report.q_minus.as_ref(), Some(&one()));
            assert_eq!(report.q_plus.as_ref(), Some(&one()));
        }
    }

    #[test]
    fn q_plus_never_exceeds_q_minus() {
        for seed in 0..10u64 {
            let g = random_identical_interest_game(3, &[3, 2, 2], &rat(1, 5), seed).unwrap();
            for f in Evaluator::builtins() {
                let r = reduce_game(&g, 0, 1, &f).unwrap();
                for concept in [
                    EquilibriumConcept::Pne,
                    EquilibriumConcept::Abr,
                    EquilibriumConcept::Ss,
                ] {
                    let report = quality_report(&g, &r, concept).unwrap();
                    if let (Some(plus), Some(minus)) = (&report.q_plus, &report.q_minus) {
                        assert!(plus <= minus);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_nominal_minimum_is_an_explicit_error() {
        // Identical-interest game whose unique equilibrium has welfare 0 on
        // some state cannot happen with argmax containment; instead build a
        // game whose nominal equilibrium set includes a zero-welfare state.
        let u = vec![int(1), int(1), int(0), int(0)];
        let w = vec![zero(), one(), zero(), one()];
        let g = Game::new(&[2, 2], vec![u.clone(), vec![zero(); 4]], w, true).unwrap();
        // PNE: player 0 prefers action 0 everywhere; player 1 indifferent.
        // States (0,0) and (0,1) are equilibria; welfare 0 and 1.
        let r = reduce_game(&g, 0, 1, &Evaluator::max()).unwrap();
        let err = quality_minus(&g, &r, EquilibriumConcept::Pne).unwrap_err();
        assert!(matches!(
            err,
            AnalysisError::ZeroNominalWelfare { extreme: "minimum" }
        ));
        // The pessimistic ratio is still defined (nominal max is 1).
        assert!(quality_plus(&g, &r, EquilibriumConcept::Pne).is_ok());
    }

    #[test]
    fn mpd_is_zero_on_identical_games_and_constant_shifts() {
        let g = random_potential_game(3, &[2, 2, 3], &rat(1, 8), 7).unwrap();
        assert_eq!(max_pairwise_difference(&g, &g).unwrap(), zero());
        // Shift player 0's utility by a constant.
        let mut shifted = g.utilities().to_vec();
        for v in shifted[0].iter_mut() {
            *v += rat(7, 3);
        }
        let g2 = Game::new(
            g.action_counts(),
            shifted,
            g.welfare_tensor().to_vec(),
            g.normalized(),
        )
        .unwrap();
        assert_eq!(max_pairwise_difference(&g, &g2).unwrap(), zero());
        let small = random_potential_game(3, &[2, 2, 2], &zero(), 1).unwrap();
        assert!(matches!(
            max_pairwise_difference(&g, &small),
            Err(AnalysisError::ShapeMismatch)
        ));
    }

    #[test]
    fn mpd_of_bounded_reductions_is_at_most_two_eps() {
        let eps = rat(1, 20);
        for seed in 0..10u64 {
            let g = random_potential_game(3, &[3, 2, 2], &eps, seed).unwrap();
            let measured = inconsequentiality(&g, 0, 1).unwrap();
            for f in [Evaluator::max(), Evaluator::min(), Evaluator::mean()] {
                let r = reduce_game(&g, 0, 1, &f).unwrap();
                let d = max_pairwise_difference(&g, &r).unwrap();
                assert!(d <= int(2) * &measured, "{} seed {seed}", f.name());
            }
        }
    }

    #[test]
    fn mpd_is_a_pseudometric_on_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let counts = [2usize, 2, 2];
        let space = ProfileSpace::new(&counts);
        let mut game = |rng: &mut rand_chacha::ChaCha8Rng| {
            let tensor = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Rational> {
                (0..space.len())
                    .map(|_| rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3)))
                    .collect()
            };
            Game::new(
                &counts,
                vec![tensor(rng), tensor(rng), tensor(rng)],
                vec![zero(); space.len()],
                false,
            )
            .unwrap()
        };
        for _ in 0..12 {
            let a = game(&mut rng);
            let b = game(&mut rng);
            let c = game(&mut rng);
            let dab = max_pairwise_difference(&a, &b).unwrap();
            let dba = max_pairwise_difference(&b, &a).unwrap();
            let dac = max_pairwise_difference(&a, &c).unwrap();
            let dcb = max_pairwise_difference(&c, &b).unwrap();
            assert_eq!(dab, dba);
            assert!(dab <= dac + dcb);
            assert_eq!(max_pairwise_difference(&a, &a).unwrap(), zero());
        }
    }

    #[test]
    fn candogan_check_passes_on_small_perturbation_reductions() {
        let eps = rat(1, 200);
        for seed in 0..8u64 {
            let g = random_potential_game(3, &[3, 2, 2], &eps, seed).unwrap();
            for f in [Evaluator::max(), Evaluator::min(), Evaluator::mean()] {
                let r = reduce_game(&g, 0, 1, &f).unwrap();
                let v = candogan_bound_check(&g, &r).unwrap();
                assert!(v.passed(), "{} seed {seed}: {}", f.name(), v.detail);
            }
        }
    }

    #[test]
    fn candogan_check_rejects_unbounded_evaluators_and_nonpotential_games() {
        let g = random_potential_game(3, &[2, 2, 2], &rat(1, 100), 0).unwrap();
        let r = reduce_game(&g, 0, 1, &Evaluator::sum()).unwrap();
        assert!(matches!(
            candogan_bound_check(&g, &r),
            Err(AnalysisError::UnboundedEvaluator(_))
        ));
        let intro = intro_game(&rat(1, 10)).unwrap();
        let ri = reduce_game(&intro, 0, 1, &Evaluator::max()).unwrap();
        assert!(matches!(
            candogan_bound_check(&intro, &ri),
            Err(AnalysisError::NotPotential(_))
        ));
    }

    #[test]
    fn candogan_bound_is_vacuous_on_the_staggered_game() {
        let eps = rat(1, 10);
        let g = staggered_potential_game(&eps).unwrap();
        let r = reduce_game(&g, 0, 1, &Evaluator::max()).unwrap();
        let v = candogan_bound_check(&g, &r).unwrap();
        // 1 - 8*(6/10)*35 is far below zero: the bound imposes nothing and
        // the observed stable welfare 3/5 satisfies it.
        assert_eq!(v.claimed.as_ref(), Some(&zero()));
        assert_eq!(v.measured.as_ref(), Some(&rat(3, 5)));
        assert!(v.passed());
        assert!(v.detail.contains("vacuous"));
    }

    #[test]
    fn certificate_accepts_the_reduced_potential_itself() {
        for seed in [11u64, 19, 40] {
            let g = random_potential_game(3, &[3, 2, 3], &rat(1, 8), seed).unwrap();
            if pure_nash_equilibria(&g).len() != 1 {
                continue;
            }
            let v = check_prop_coarse(&g, 1).unwrap();
            assert!(v.passed(), "seed {seed}: {}", v.detail);
        }
    }

    #[test]
    fn certificate_flags_the_staggered_max_reduction() {
        let eps = rat(1, 10);
        let g = staggered_potential_game(&eps).unwrap();
        let r = reduce_game(&g, 0, 1, &Evaluator::max()).unwrap();
        let proxy: Vec<Rational> = g
            .space()
            .flats()
            .map(|f| r.utility(0, f).clone())
            .collect();
        let report = coarse_alignment_certificate(&g, &proxy, 1).unwrap();
        assert!(!report.premise_holds);
        assert!(report.failing_context.is_some());
        assert_eq!(report.conclusion_verified, None);
    }

    #[test]
    fn certificate_validates_its_preconditions() {
        let intro = intro_game(&rat(1, 10)).unwrap();
        let proxy = vec![zero(); intro.space().len()];
        assert!(matches!(
            coarse_alignment_certificate(&intro, &proxy, 1),
            Err(AnalysisError::NotPotential(_))
        ));
        let g = random_potential_game(3, &[3, 2, 3], &rat(1, 8), 11).unwrap();
        let bad = vec![zero(); 3];
        assert!(matches!(
            coarse_alignment_certificate(&g, &bad, 1),
            Err(AnalysisError::ProxyLength { .. })
        ));
        assert!(matches!(
            coarse_alignment_certificate(&g, &vec![zero(); g.space().len()], 0),
            Err(AnalysisError::ObserverIsHidden(0))
        ));
    }

    #[test]
    fn certificate_premise_implies_conclusion_on_aligned_perturbations() {
        // Perturb the reduced potential without changing any per-context
        // argmax: scale by 3 and shift per context.
        let mut checked = 0;
        for seed in 0..40u64 {
            let g = random_potential_game(3, &[3, 2, 3], &rat(1, 8), seed).unwrap();
            if pure_nash_equilibria(&g).len() != 1 {
                continue;
            }
            checked += 1;
            let reduced = reduced_potential(&g, 1).unwrap();
            let space = g.space();
            let proxy: Vec<Rational> = space
                .flats()
                .map(|f| {
                    let context_shift = int(space.coord(f, 2) as i64) * rat(1, 7);
                    int(3) * reduced.value_at_full(space, f) + context_shift
                })
                .collect();
            let report = coarse_alignment_certificate(&g, &proxy, 1).unwrap();
            assert!(report.premise_holds, "seed {seed}");
            assert_eq!(report.conclusion_verified, Some(true), "seed {seed}");
        }
        assert!(checked >= 5, "not enough unique-equilibrium samples");
    }

    #[test]
    fn prop_ii_holds_on_random_identical_interest_games() {
        for seed in 0..25u64 {
            let g = random_identical_interest_game(3, &[3, 2, 2], &rat(1, 5), seed).unwrap();
            let v = check_prop_ii(&g, 1).unwrap();
            assert!(v.passed(), "seed {seed}: {}", v.detail);
        }
        let not_ii = intro_game(&rat(1, 10)).unwrap();
        assert!(matches!(
            check_prop_ii(&not_ii, 1),
            Err(AnalysisError::NotIdenticalInterest)
        ));
    }

    #[test]
    fn thm_all_gives_quality_one_at_zero_eps() {
        let g = random_identical_interest_game(3, &[3, 2, 2], &zero(), 9).unwrap();
        let v = check_thm_all(&g, 1).unwrap();
        assert!(v.passed());
        assert_eq!(v.claimed.as_ref(), Some(&one()));
        assert_eq!(v.measured.as_ref(), Some(&one()));
    }

    #[test]
    fn suite_reports_skips_and_passes_coherently() {
        let g = random_identical_interest_game(3, &[3, 2, 2], &rat(1, 5), 2).unwrap();
        let suite = theorem_suite(&g, &Evaluator::builtins(), &SuiteOptions::for_hidden(1));
        let by_id = |id: &str| suite.iter().find(|v| v.id == id).unwrap();
        assert_eq!(by_id("prop-bad").status, VerdictStatus::Skipped);
        assert_eq!(by_id("thm-pgbad").status, VerdictStatus::Skipped);
        assert!(by_id("prop-ii").passed());
        assert!(by_id("thm-all").passed());
        assert!(by_id("thm-candogan").passed());

        let opts = SuiteOptions {
            hidden: 1,
            intro_delta: Some(rat(1, 10)),
            staggered_eps: Some(rat(1, 10)),
            block_eps: Some(rat(1, 4)),
        };
        let full = theorem_suite(&g, &Evaluator::builtins(), &opts);
        for id in ["intro", "prop-bad", "thm-pgbad", "thm-sspg", "thm-ss"] {
            assert!(full.iter().find(|v| v.id == id).unwrap().passed(), "{id}");
        }
    }
}
