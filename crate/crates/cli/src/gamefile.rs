//! Game file format: UTF-8 JSON with exact rational numbers as strings.
//!
//! Numbers are written as `"p/q"` (or a bare integer string) and accepted in
//! either that form or as exact decimal strings such as `"0.25"`. A loaded
//! file round-trips bit-identically: save(load(path)) reproduces the same
//! rationals.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use proxygames_core::game::{Game, StrategicGame};
use proxygames_core::rational::{format_rational, parse_rational, Rational};

#[derive(Serialize, Deserialize)]
struct GameFileJson {
    players: usize,
    actions: Vec<usize>,
    utilities: Vec<Vec<String>>,
    welfare: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<String>>>,
}

/// A game plus the optional per-action labels carried by its file.
pub struct LoadedGame {
    pub game: Game,
    pub labels: Option<Vec<Vec<String>>>,
}

fn parse_tensor(field: &str, raw: &[String]) -> Result<Vec<Rational>> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| {
            parse_rational(s)
                .with_context(|| format!("field '{field}', entry {i}: '{s}' is not a rational"))
        })
        .collect()
}

pub fn load_game(path: &Path) -> Result<LoadedGame> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read game file {}", path.display()))?;
    let parsed: GameFileJson = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse game file {}", path.display()))?;
    if parsed.actions.len() != parsed.players {
        bail!(
            "field 'actions' has {} entries for {} players",
            parsed.actions.len(),
            parsed.players
        );
    }
    if parsed.utilities.len() != parsed.players {
        bail!(
            "field 'utilities' has {} tensors for {} players",
            parsed.utilities.len(),
            parsed.players
        );
    }
    let expected: usize = parsed.actions.iter().product();
    for (player, tensor) in parsed.utilities.iter().enumerate() {
        if tensor.len() != expected {
            bail!(
                "utility tensor for player {} has {} entries, expected {}",
                player + 1,
                tensor.len(),
                expected
            );
        }
    }
    if parsed.welfare.len() != expected {
        bail!(
            "welfare tensor has {} entries, expected {}",
            parsed.welfare.len(),
            expected
        );
    }
    if let Some(labels) = &parsed.labels {
        if labels.len() != parsed.players {
            bail!("field 'labels' must hold one list per player");
        }
        for (player, list) in labels.iter().enumerate() {
            if list.len() != parsed.actions[player] {
                bail!(
                    "labels for player {} list {} actions, expected {}",
                    player + 1,
                    list.len(),
                    parsed.actions[player]
                );
            }
        }
    }

    let mut utilities = Vec::with_capacity(parsed.players);
    for (player, tensor) in parsed.utilities.iter().enumerate() {
        utilities.push(parse_tensor(&format!("utilities[{}]", player + 1), tensor)?);
    }
    let welfare = parse_tensor("welfare", &parsed.welfare)?;

    // The normalization flag is declared from what the file actually
    // contains, verified exactly by the constructor.
    let min = welfare.iter().min().context("empty welfare")?;
    let max = welfare.iter().max().context("empty welfare")?;
    let normalized = min >= &Rational::from_integer(0.into())
        && max == &Rational::from_integer(1.into());
    let game = Game::new(&parsed.actions, utilities, welfare, normalized)
        .context("game file violates a construction invariant")?;
    Ok(LoadedGame {
        game,
        labels: parsed.labels,
    })
}

pub fn game_to_json(game: &Game, labels: Option<&Vec<Vec<String>>>) -> String {
    let file = GameFileJson {
        players: game.num_players(),
        actions: game.action_counts().to_vec(),
        utilities: game
            .utilities()
            .iter()
            .map(|tensor| tensor.iter().map(format_rational).collect())
            .collect(),
        welfare: game.welfare_tensor().iter().map(format_rational).collect(),
        labels: labels.cloned(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn save_game(game: &Game, labels: Option<&Vec<Vec<String>>>, path: &Path) -> Result<()> {
    let mut text = game_to_json(game, labels);
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// Companion format for table-backed evaluators.
#[derive(Deserialize)]
struct CustomEvaluatorJson {
    bounded: bool,
    entries: Vec<CustomEntryJson>,
}

#[derive(Deserialize)]
struct CustomEntryJson {
    inputs: Vec<String>,
    output: String,
}

pub fn load_custom_evaluator(path: &Path) -> Result<proxygames_core::evaluators::Evaluator> {
    use proxygames_core::evaluators::{CustomTable, Evaluator};
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read evaluator file {}", path.display()))?;
    let parsed: CustomEvaluatorJson = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse evaluator file {}", path.display()))?;
    let mut entries = Vec::with_capacity(parsed.entries.len());
    for (i, entry) in parsed.entries.iter().enumerate() {
        let inputs: Result<Vec<Rational>> = entry
            .inputs
            .iter()
            .map(|s| {
                parse_rational(s)
                    .with_context(|| format!("entry {i}: input '{s}' is not a rational"))
            })
            .collect();
        let output = parse_rational(&entry.output)
            .with_context(|| format!("entry {i}: output '{}' is not a rational", entry.output))?;
        entries.push((inputs?, output));
    }
    Ok(Evaluator::custom(CustomTable::new(entries), parsed.bounded))
}
