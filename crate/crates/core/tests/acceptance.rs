//! Acceptance suite: one test per criterion, each ending with a PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;

use proxygames_core::analysis::{
    candogan_bound_check, check_prop_coarse, check_prop_ii, check_thm_all,
    max_pairwise_difference, quality_minus, quality_plus, EquilibriumConcept,
};
use proxygames_core::dynamics::{
    abr_transition_matrix, is_weakly_acyclic, lll_transition_matrix, recurrent_classes,
    stationary_distribution, stochastically_stable_exact, stochastically_stable_sweep,
};
use proxygames_core::evaluators::{
    check_acceptability, reduce_game, reduce_game_all, Evaluator,
};
use proxygames_core::game::{
    inconsequentiality, pure_nash_equilibria, verify_potential, Game, StrategicGame,
};
use proxygames_core::paper_games::{
    block_count, block_escape_states, block_identical_interest_game, intro_game,
    random_identical_interest_game, random_potential_game, staggered_level_count,
    staggered_potential_game,
};
use proxygames_core::rational::{int, one, rat, zero, Rational};

fn argmax_welfare(g: &Game) -> BTreeSet<usize> {
    let best = g
        .space()
        .flats()
        .map(|f| g.welfare(f))
        .max()
        .unwrap()
        .clone();
    g.space().flats().filter(|&f| g.welfare(f) == &best).collect()
}

/// Criterion 1: for delta = 1/10 and every built-in evaluator, the nominal
/// equilibrium is the upper-left profile while the reduced equilibria and
/// recurrent set collapse to the lower-right, with optimistic quality
/// exactly 5*delta/(3 - delta) = 5/29.
#[test]
fn criterion_01_intro_pathology() {
    let delta = rat(1, 10);
    let g = intro_game(&delta).unwrap();
    let upper_left = g.space().flatten(&[0, 0, 0]);
    let lower_right = g.space().flatten(&[1, 1, 1]);
    assert_eq!(pure_nash_equilibria(&g), BTreeSet::from([upper_left]));
    let expected_q = int(5) * &delta / (int(3) - &delta);
    assert_eq!(expected_q, rat(5, 29));
    for f in Evaluator::builtins() {
        let r = reduce_game(&g, 0, 1, &f).unwrap();
        assert_eq!(
            pure_nash_equilibria(&r),
            BTreeSet::from([lower_right]),
            "{}: reduced PNE",
            f.name()
        );
        let classes = recurrent_classes(&abr_transition_matrix(&r));
        assert_eq!(
            classes.classes(),
            &[BTreeSet::from([lower_right])],
            "{}: reduced ABR",
            f.name()
        );
        let report = quality_minus(&g, &r, EquilibriumConcept::Abr).unwrap();
        assert_eq!(report.q_minus.as_ref(), Some(&expected_q), "{}", f.name());
    }
    println!("criterion 01 PASS: intro pathology exact for all four evaluators (Q- = 5/29)");
}

fn staggered_structure_checks(eps: &Rational) {
    let g = staggered_potential_game(eps).unwrap();
    let m = staggered_level_count(eps);
    let origin = g.space().flatten(&[0, 0, 0]);
    let corner = g.space().flatten(&[m + 1, 0, m]);
    let corner_welfare = one() - int(2) * eps - int(m as i64) * eps;
    assert_eq!(corner_welfare, int(6) * eps, "6*eps identity at eps={eps}");

    assert!(verify_potential(&g).holds);
    assert_eq!(pure_nash_equilibria(&g), BTreeSet::from([origin]));
    assert_eq!(g.welfare(origin), &one());
    assert_eq!(inconsequentiality(&g, 0, 1).unwrap(), int(6) * eps);
    for f in Evaluator::builtins() {
        let r = reduce_game(&g, 0, 1, &f).unwrap();
        assert!(is_weakly_acyclic(&r).holds, "{}", f.name());
        assert_eq!(
            pure_nash_equilibria(&r),
            BTreeSet::from([corner]),
            "{}",
            f.name()
        );
        assert_eq!(g.welfare(corner), &corner_welfare, "{}", f.name());
    }
}

/// Criterion 2: the staggered construction at eps in {1/10, 1/20} has the
/// origin as unique nominal equilibrium and, for each evaluator, a weakly
/// acyclic reduced game with unique equilibrium at the staggered corner of
/// welfare exactly 6*eps; the hidden player is exactly 6*eps-inconsequential.
#[test]
fn criterion_02_staggered_reduced_equilibria() {
    let start = std::time::Instant::now();
    staggered_structure_checks(&rat(1, 10));
    staggered_structure_checks(&rat(1, 20));
    let g = staggered_potential_game(&rat(1, 20)).unwrap();
    assert_eq!(g.space().len(), 546);
    println!(
        "criterion 02 PASS: staggered equilibria exact at eps=1/10 and 1/20 ({:.2?})",
        start.elapsed()
    );
}

/// Criterion 3: exact stochastic stability on the same games: the nominal
/// stable set is the origin, the reduced stable set is the staggered corner.
#[test]
fn criterion_03_staggered_stochastic_stability() {
    let start = std::time::Instant::now();
    for eps in [rat(1, 10), rat(1, 20)] {
        let g = staggered_potential_game(&eps).unwrap();
        let m = staggered_level_count(&eps);
        let origin = g.space().flatten(&[0, 0, 0]);
        let corner = g.space().flatten(&[m + 1, 0, m]);
        let nominal = stochastically_stable_exact(&g);
        assert_eq!(nominal.stable_states, BTreeSet::from([origin]));
        for f in Evaluator::builtins() {
            let r = reduce_game(&g, 0, 1, &f).unwrap();
            let reduced = stochastically_stable_exact(&r);
            assert_eq!(
                reduced.stable_states,
                BTreeSet::from([corner]),
                "{} at eps={eps}",
                f.name()
            );
        }
    }
    println!(
        "criterion 03 PASS: stable sets exact for nominal and reduced staggered games ({:.2?})",
        start.elapsed()
    );
}

/// Criterion 4: on 100 random potential games with at most 27 profiles, the
/// exact stable set equals the welfare argmax, is contained in the
/// best-reply recurrent states, agrees with the beta sweep, and the
/// stationary mass at beta = 100 on the argmax exceeds 0.99.
#[test]
fn criterion_04_potential_game_stability_suite() {
    let start = std::time::Instant::now();
    let shapes: [&[usize]; 5] = [
        &[3, 3, 3],
        &[3, 2, 4],
        &[4, 2, 3],
        &[2, 3, 3],
        &[3, 2, 2],
    ];
    for seed in 0..100u64 {
        let shape = shapes[(seed % 5) as usize];
        let g = random_potential_game(3, shape, &zero(), seed).unwrap();
        assert!(g.space().len() <= 27);
        let argmax = argmax_welfare(&g);
        let ss = stochastically_stable_exact(&g);
        assert_eq!(ss.stable_states, argmax, "seed {seed}: SS = argmax W");
        let abr = recurrent_classes(&abr_transition_matrix(&g));
        assert!(
            ss.stable_states.is_subset(&abr.states()),
            "seed {seed}: SS within ABR"
        );
        let sweep = stochastically_stable_sweep(&g, &[1.0, 5.0, 20.0, 60.0, 100.0], 0.5)
            .unwrap_or_else(|e| panic!("seed {seed}: sweep failed: {e}"));
        assert_eq!(sweep, argmax, "seed {seed}: sweep agreement");
        let pi = stationary_distribution(&lll_transition_matrix(&g, 100.0)).unwrap();
        let mass: f64 = argmax.iter().map(|&s| pi[s]).sum();
        assert!(mass >= 0.99, "seed {seed}: argmax mass {mass}");
    }
    println!(
        "criterion 04 PASS: 100 potential games, SS = argmax W, sweep agrees, mass >= 0.99 ({:.2?})",
        start.elapsed()
    );
}

/// Criterion 5: on 200 random identical-interest games under the max
/// evaluator, every welfare maximizer stays a reduced equilibrium and every
/// reduced equilibrium is nominal.
#[test]
fn criterion_05_identical_interest_equilibrium_retention() {
    let start = std::time::Instant::now();
    for seed in 0..200u64 {
        let g = random_identical_interest_game(3, &[3, 2, 2], &rat(1, 5), seed).unwrap();
        let v = check_prop_ii(&g, 1).unwrap();
        assert!(v.passed(), "seed {seed}: {}", v.detail);
    }
    println!(
        "criterion 05 PASS: 200 identical-interest games, zero retention violations ({:.2?})",
        start.elapsed()
    );
}

/// Criterion 6: the block construction at eps = 1/4 validates its structural
/// properties, keeps the nominal stable set at the two welfare-1 states, and
/// under each evaluator confines the reduced stable set to the terminal
/// escape pair with welfare at most 1/2.
#[test]
fn criterion_06_block_game_stability() {
    let start = std::time::Instant::now();
    let eps = rat(1, 4);
    // Construction validates properties (a)-(g) internally or refuses.
    let g = block_identical_interest_game(&eps).unwrap();
    let m = block_count(&eps);
    assert_eq!(m, 1);
    let expected_nominal = BTreeSet::from([
        g.space().flatten(&[0, 0, 0]),
        g.space().flatten(&[1, 1, 0]),
    ]);
    let nominal = stochastically_stable_exact(&g);
    assert_eq!(nominal.stable_states, expected_nominal);
    for &s in &expected_nominal {
        assert_eq!(g.welfare(s), &one());
    }
    let terminal = block_escape_states(&g, m);
    let cap = int(2) * &eps;
    for f in Evaluator::builtins() {
        let r = reduce_game(&g, 0, 1, &f).unwrap();
        let reduced = stochastically_stable_exact(&r);
        assert!(
            reduced.stable_states.is_subset(&terminal),
            "{}: stable set not in the terminal pair",
            f.name()
        );
        for &s in &reduced.stable_states {
            assert!(g.welfare(s) <= &cap, "{}: welfare above 2*eps", f.name());
        }
    }
    println!(
        "criterion 06 PASS: block construction validated; reduced stability confined to welfare <= 1/2 ({:.2?})",
        start.elapsed()
    );
}

/// Criterion 7: 50 random identical-interest games at eps = 1/5 with every
/// observer applying max keep all stable states at welfare at least 4/5; the
/// block construction at half the parameter attains the bound exactly.
#[test]
fn criterion_07_all_observer_reduction_bound() {
    let start = std::time::Instant::now();
    let eps = rat(1, 5);
    let floor = one() - &eps;
    for seed in 0..50u64 {
        let g = random_identical_interest_game(3, &[3, 2, 2], &eps, seed).unwrap();
        let r = reduce_game_all(&g, 1, &Evaluator::max()).unwrap();
        let ss = stochastically_stable_exact(&r);
        for &s in &ss.stable_states {
            assert!(
                g.welfare(s) >= &floor,
                "seed {seed}: stable welfare below 1 - eps"
            );
        }
        let v = check_thm_all(&g, 1).unwrap();
        assert!(v.passed(), "seed {seed}: {}", v.detail);
    }
    // Tightness witness: inconsequentiality of the block game at eps/2 is
    // exactly eps, and the pessimistic quality meets 1 - eps with equality.
    let block = block_identical_interest_game(&(&eps / int(2))).unwrap();
    assert_eq!(inconsequentiality(&block, 0, 1).unwrap(), eps);
    let r = reduce_game_all(&block, 1, &Evaluator::max()).unwrap();
    let report = quality_plus(&block, &r, EquilibriumConcept::Ss).unwrap();
    assert_eq!(report.q_plus.as_ref(), Some(&floor));
    println!(
        "criterion 07 PASS: 50 all-observer reductions above 4/5; block witness exactly 4/5 ({:.2?})",
        start.elapsed()
    );
}

/// Criterion 8: 50 random potential games with eps = 1/200 on 12 profiles:
/// bounded reductions stay within pairwise difference 1/100 and keep every
/// stable state's welfare at least 1 - 8*eps*11 = 14/25.
#[test]
fn criterion_08_size_bound() {
    let start = std::time::Instant::now();
    let eps = rat(1, 200);
    let class_bound = one() - int(8) * &eps * int(11);
    assert_eq!(class_bound, rat(14, 25));
    let mpd_cap = int(2) * &eps;
    assert_eq!(mpd_cap, rat(1, 100));
    for seed in 0..50u64 {
        let g = random_potential_game(3, &[3, 2, 2], &eps, seed).unwrap();
        assert_eq!(g.space().len(), 12);
        for f in [Evaluator::max(), Evaluator::min(), Evaluator::mean()] {
            let r = reduce_game(&g, 0, 1, &f).unwrap();
            let mpd = max_pairwise_difference(&g, &r).unwrap();
            assert!(mpd <= mpd_cap, "seed {seed} {}: mpd {mpd}", f.name());
            let ss = stochastically_stable_exact(&r);
            for &s in &ss.stable_states {
                assert!(
                    g.welfare(s) >= &class_bound,
                    "seed {seed} {}: welfare below 14/25",
                    f.name()
                );
            }
            let v = candogan_bound_check(&g, &r).unwrap();
            assert!(v.passed(), "seed {seed} {}: {}", f.name(), v.detail);
        }
    }
    println!(
        "criterion 08 PASS: 50 games, pairwise difference <= 1/100, stable welfare >= 14/25 ({:.2?})",
        start.elapsed()
    );
}

/// Criterion 9: 50 random potential games with a unique equilibrium certify
/// the reduced potential as aligned proxies and verify the conclusion
/// directly.
#[test]
fn criterion_09_alignment_certificate() {
    let start = std::time::Instant::now();
    let mut passed = 0;
    let mut seed = 0u64;
    while passed < 50 && seed < 20_000 {
        let g = random_potential_game(3, &[3, 3, 3], &rat(1, 8), seed).unwrap();
        seed += 1;
        if pure_nash_equilibria(&g).len() != 1 {
            continue;
        }
        let v = check_prop_coarse(&g, 1).unwrap();
        assert!(v.passed(), "seed {}: {}", seed - 1, v.detail);
        passed += 1;
    }
    assert_eq!(passed, 50, "not enough unique-equilibrium games found");
    println!(
        "criterion 09 PASS: 50 unique-equilibrium games certified with proxy = reduced potential ({:.2?})",
        start.elapsed()
    );
}

/// Criterion 10: with a 0-inconsequential hidden player, every built-in
/// evaluator leaves the best-reply recurrent classes unchanged.
#[test]
fn criterion_10_zero_eps_preserves_recurrence() {
    let start = std::time::Instant::now();
    let shapes: [&[usize]; 2] = [&[3, 3, 3], &[3, 2, 4]];
    for seed in 0..50u64 {
        let shape = shapes[(seed % 2) as usize];
        let g = random_potential_game(3, shape, &zero(), seed).unwrap();
        assert_eq!(inconsequentiality(&g, 0, 1).unwrap(), zero());
        let nominal = recurrent_classes(&abr_transition_matrix(&g));
        for f in Evaluator::builtins() {
            let r = reduce_game(&g, 0, 1, &f).unwrap();
            let reduced = recurrent_classes(&abr_transition_matrix(&r));
            assert_eq!(
                nominal.classes(),
                reduced.classes(),
                "seed {seed} {}",
                f.name()
            );
        }
    }
    println!(
        "criterion 10 PASS: 50 games with zero coupling keep identical recurrent classes ({:.2?})",
        start.elapsed()
    );
}

/// Criterion 11: 10^4 sampled sorted-list pairs per built-in evaluator show
/// no axiom violations; max, min, and mean stay within the input range while
/// sum leaves it on a two-element witness.
#[test]
fn criterion_11_evaluator_axioms() {
    let start = std::time::Instant::now();
    for f in Evaluator::builtins() {
        let report = check_acceptability(&f, 10_000, 2024);
        assert!(
            report.clean(),
            "{}: {} axiom-1 and {} axiom-2 violations",
            f.name(),
            report.axiom1_violations.len(),
            report.axiom2_violations.len()
        );
    }
    // Boundedness: the three bounded evaluators stay within [min, max] on
    // random lists; sum escapes on {1, 1}.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for _ in 0..2_000 {
        let len = rng.gen_range(1..=6);
        let values: Vec<Rational> = (0..len)
            .map(|_| rat(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=9)))
            .collect();
        let lo = values.iter().min().unwrap();
        let hi = values.iter().max().unwrap();
        for f in [Evaluator::max(), Evaluator::min(), Evaluator::mean()] {
            let out = f.evaluate(&values).unwrap();
            assert!(&out >= lo && &out <= hi, "{} left the range", f.name());
        }
    }
    let witness = vec![one(), one()];
    let out = Evaluator::sum().evaluate(&witness).unwrap();
    assert!(out > one(), "sum should exceed the max of {{1, 1}}");
    assert!(!Evaluator::sum().is_bounded());
    println!(
        "criterion 11 PASS: evaluator axioms clean over 10^4 pairs; boundedness as claimed ({:.2?})",
        start.elapsed()
    );
}
