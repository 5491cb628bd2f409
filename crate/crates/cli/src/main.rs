//! Batch front-end: load and save exact game files, analyze a game under a
//! proxy-payoff reduction, reproduce the named pathology and bound
//! experiments, and generate the built-in game families.
//!
//! Exit codes: 0 when every check passes, 1 when any verdict fails, 2 on
//! usage or parse errors.

use proxygames_cli::{gamefile, report, reproduce};

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use proxygames_core::analysis::{quality_report, EquilibriumConcept};
use proxygames_core::dynamics::stochastically_stable_sweep;
use proxygames_core::evaluators::{
    check_acceptability, reduce_game, reduce_game_all, Evaluator, ReducedGame,
};
use proxygames_core::game::{Game, StrategicGame};
use proxygames_core::paper_games::{
    block_identical_interest_game, intro_game, random_identical_interest_game,
    random_potential_game, staggered_potential_game,
};
use proxygames_core::rational::{parse_rational, Rational};

#[derive(Parser)]
#[command(
    name = "proxygames",
    about = "Exact analysis of proxy-payoff reductions in finite games",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a game file: equilibria, recurrent classes, stable states,
    /// inconsequentiality, and quality ratios under a reduction.
    Analyze(AnalyzeArgs),
    /// Re-run one named experiment and report exact verdicts.
    Reproduce(ReproduceArgs),
    /// Emit one of the built-in game families as a game file.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Path to a JSON game file.
    #[arg(long)]
    game: PathBuf,
    /// Evaluator: sum, max, min, mean, or custom:PATH for a table file.
    #[arg(long)]
    evaluator: Option<String>,
    /// Observer (1-based player index) applying the evaluator.
    #[arg(long, default_value_t = 1)]
    observer: usize,
    /// Hidden player (1-based index).
    #[arg(long, default_value_t = 2)]
    hidden: usize,
    /// Every player except the hidden one applies the evaluator.
    #[arg(long, default_value_t = false)]
    all_observers: bool,
    /// Restrict quality reports to one concept (pne, abr, ss).
    #[arg(long)]
    concept: Option<String>,
    /// Comma-separated strictly increasing beta values for the numeric
    /// stability sweep.
    #[arg(long)]
    beta_schedule: Option<String>,
    /// Seed for the evaluator acceptability sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format: json or csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Experiment id: intro, prop-bad, thm-pgbad, thm-sspg, prop-ii,
    /// thm-ss, thm-all, thm-candogan, prop-coarse.
    id: String,
    /// Construction parameter eps, as a rational or decimal string.
    #[arg(long)]
    eps: Option<String>,
    /// Construction parameter delta, as a rational or decimal string.
    #[arg(long)]
    delta: Option<String>,
    /// Base seed for sampled experiments.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled games (0 = the experiment's default).
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Target number of joint action profiles (0 = default).
    #[arg(long, default_value_t = 0)]
    states: usize,
    /// Output format for --out: json or csv.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write the verdict table here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Family: intro, staggered, block, random-pg, random-ii.
    family: String,
    /// Parameter eps for the eps-indexed families.
    #[arg(long)]
    eps: Option<String>,
    /// Parameter delta for the intro family.
    #[arg(long)]
    delta: Option<String>,
    /// Player count for the random families.
    #[arg(long, default_value_t = 3)]
    players: usize,
    /// Comma-separated action counts for the random families.
    #[arg(long, default_value = "3,2,2")]
    actions: String,
    /// Seed for the random families.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the game file here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Generate(args) => cmd_generate(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// PROXYGAMES_THREADS caps worker parallelism for sampled experiments.
fn configure_threads() {
    if let Ok(value) = std::env::var("PROXYGAMES_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn parse_rational_arg(text: &str, what: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("{what} '{text}' is not a rational"))
}

fn write_output(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn player_index(one_based: usize, players: usize, what: &str) -> Result<usize> {
    if one_based == 0 || one_based > players {
        bail!("{what} must be a 1-based player index at most {players}");
    }
    Ok(one_based - 1)
}

enum LoadedEvaluator {
    Builtin(Evaluator),
    Custom(Evaluator),
}

fn load_evaluator(spec: &str) -> Result<LoadedEvaluator> {
    if let Some(path) = spec.strip_prefix("custom:") {
        return Ok(LoadedEvaluator::Custom(gamefile::load_custom_evaluator(
            std::path::Path::new(path),
        )?));
    }
    match Evaluator::by_name(spec) {
        Some(f) => Ok(LoadedEvaluator::Builtin(f)),
        None => bail!("unknown evaluator '{spec}'; expected sum, max, min, mean, or custom:PATH"),
    }
}

fn parse_beta_schedule(text: &str) -> Result<Vec<f64>> {
    let schedule: Result<Vec<f64>> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .with_context(|| format!("beta value '{s}' is not a float"))
        })
        .collect();
    let schedule = schedule?;
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        bail!("beta schedule must be nonempty and strictly increasing");
    }
    Ok(schedule)
}

fn concepts_for(selection: Option<&str>) -> Result<Vec<EquilibriumConcept>> {
    match selection {
        None => Ok(vec![
            EquilibriumConcept::Pne,
            EquilibriumConcept::Abr,
            EquilibriumConcept::Ss,
        ]),
        Some(name) => match EquilibriumConcept::by_name(name) {
            Some(c) => Ok(vec![c]),
            None => bail!("unknown concept '{name}'; expected pne, abr, or ss"),
        },
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<bool> {
    let loaded = gamefile::load_game(&args.game)?;
    let game = &loaded.game;
    let labels = loaded.labels.as_ref();
    let concepts = concepts_for(args.concept.as_deref())?;

    let mut body = serde_json::Map::new();
    body.insert(
        "game".to_string(),
        json!({
            "players": game.num_players(),
            "actions": game.action_counts(),
            "normalized": game.normalized(),
            "source": args.game.display().to_string(),
        }),
    );
    body.insert(
        "nominal".to_string(),
        report::solution_summary(game, game, labels),
    );
    body.insert(
        "inconsequentiality".to_string(),
        report::inconsequentiality_matrix(game),
    );

    let mut all_ok = true;
    if let Some(spec) = &args.evaluator {
        let evaluator = load_evaluator(spec)?;
        let (f, acceptability) = match evaluator {
            LoadedEvaluator::Builtin(f) => (f, None),
            LoadedEvaluator::Custom(f) => {
                // Acceptability is a precondition of the reduction; sampled
                // violations fail the run rather than being tolerated.
                let report = check_acceptability(&f, 10_000, args.seed);
                all_ok &= report.clean();
                (f, Some(report))
            }
        };
        let hidden = player_index(args.hidden, game.num_players(), "--hidden")?;
        let reduced: ReducedGame = if args.all_observers {
            reduce_game_all(game, hidden, &f)?
        } else {
            let observer = player_index(args.observer, game.num_players(), "--observer")?;
            reduce_game(game, observer, hidden, &f)?
        };
        let mut section = serde_json::Map::new();
        section.insert("evaluator".to_string(), json!(f.name()));
        section.insert("bounded".to_string(), json!(f.is_bounded()));
        section.insert(
            "observers".to_string(),
            json!(reduced
                .observers()
                .iter()
                .map(|&p| p + 1)
                .collect::<Vec<_>>()),
        );
        section.insert("hidden".to_string(), json!(args.hidden));
        if let Some(acc) = acceptability {
            section.insert(
                "acceptability".to_string(),
                json!({
                    "trials": acc.trials_run,
                    "axiom1_violations": acc.axiom1_violations.len(),
                    "axiom2_violations": acc.axiom2_violations.len(),
                }),
            );
        }
        section.insert(
            "solution".to_string(),
            report::solution_summary(&reduced, game, labels),
        );
        let mut quality = serde_json::Map::new();
        for concept in &concepts {
            let q = quality_report(game, &reduced, *concept)?;
            quality.insert(concept.name().to_string(), report::quality_value(&q));
        }
        section.insert("quality".to_string(), Value::Object(quality));

        if let Some(schedule_text) = &args.beta_schedule {
            let schedule = parse_beta_schedule(schedule_text)?;
            let sweep = stochastically_stable_sweep(&reduced, &schedule, 0.5)?;
            section.insert(
                "beta_sweep".to_string(),
                json!({
                    "schedule": schedule,
                    "stable": report::profiles_value(game, &sweep, labels),
                }),
            );
        }
        body.insert("reduction".to_string(), Value::Object(section));
    } else if let Some(schedule_text) = &args.beta_schedule {
        let schedule = parse_beta_schedule(schedule_text)?;
        let sweep = stochastically_stable_sweep(game, &schedule, 0.5)?;
        body.insert(
            "beta_sweep".to_string(),
            json!({
                "schedule": schedule,
                "stable": report::profiles_value(game, &sweep, labels),
            }),
        );
    }

    let value = Value::Object(body);
    let text = match args.format.as_str() {
        "json" => format!("{}\n", serde_json::to_string_pretty(&value)?),
        "csv" => report::json_to_csv(&value),
        other => bail!("unknown format '{other}'; expected json or csv"),
    };
    write_output(&text, args.out.as_ref())?;
    Ok(all_ok)
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<bool> {
    let params = reproduce::ExperimentParams {
        eps: args
            .eps
            .as_deref()
            .map(|t| parse_rational_arg(t, "--eps"))
            .transpose()?,
        delta: args
            .delta
            .as_deref()
            .map(|t| parse_rational_arg(t, "--delta"))
            .transpose()?,
        seed: args.seed,
        samples: args.samples,
        states: args.states,
    };
    let rows = reproduce::run_experiment(&args.id, &params)?;
    let failures = rows.iter().filter(|r| r.failed()).count();
    for row in &rows {
        println!(
            "[{}] {} {} claimed={} measured={} {}",
            row.status, row.id, row.case, row.claimed, row.measured, row.detail
        );
    }
    println!(
        "{}: {} checks, {} failed",
        args.id,
        rows.len(),
        failures
    );
    if let Some(out) = &args.out {
        let text = match args.format.as_str() {
            "csv" => reproduce::rows_to_csv(&rows),
            "json" => format!(
                "{}\n",
                serde_json::to_string_pretty(&reproduce::rows_to_json(&rows))?
            ),
            other => bail!("unknown format '{other}'; expected json or csv"),
        };
        write_output(&text, Some(out))?;
    }
    Ok(failures == 0)
}

fn parse_actions(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .with_context(|| format!("action count '{s}' is not a positive integer"))
        })
        .collect()
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let eps = args
        .eps
        .as_deref()
        .map(|t| parse_rational_arg(t, "--eps"))
        .transpose()?;
    let delta = args
        .delta
        .as_deref()
        .map(|t| parse_rational_arg(t, "--delta"))
        .transpose()?;
    let (game, labels): (Game, Option<Vec<Vec<String>>>) = match args.family.as_str() {
        "intro" => {
            let delta = delta.unwrap_or_else(|| parse_rational("1/10").unwrap());
            let labels = vec![
                vec!["A".to_string(), "B".to_string()],
                vec!["A".to_string(), "B".to_string()],
                vec!["left".to_string(), "right".to_string()],
            ];
            (intro_game(&delta)?, Some(labels))
        }
        "staggered" => {
            let eps = eps.context("--eps required for the staggered family")?;
            (staggered_potential_game(&eps)?, None)
        }
        "block" => {
            let eps = eps.context("--eps required for the block family")?;
            (block_identical_interest_game(&eps)?, None)
        }
        "random-pg" => {
            let eps = eps.context("--eps required for random-pg")?;
            let actions = parse_actions(&args.actions)?;
            (
                random_potential_game(args.players, &actions, &eps, args.seed)?,
                None,
            )
        }
        "random-ii" => {
            let eps = eps.context("--eps required for random-ii")?;
            let actions = parse_actions(&args.actions)?;
            (
                random_identical_interest_game(args.players, &actions, &eps, args.seed)?,
                None,
            )
        }
        other => bail!(
            "unknown family '{other}'; expected intro, staggered, block, random-pg, random-ii"
        ),
    };
    match &args.out {
        Some(path) => gamefile::save_game(&game, labels.as_ref(), path)?,
        None => {
            let mut text = gamefile::game_to_json(&game, labels.as_ref());
            text.push('\n');
            print!("{text}");
        }
    }
    Ok(())
}
