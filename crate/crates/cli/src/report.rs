//! Report rendering for the analyze command: JSON (default) or key/value CSV.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use proxygames_core::analysis::QualityReport;
use proxygames_core::game::{inconsequentiality, Game, StrategicGame};
use proxygames_core::rational::format_rational;

/// Render a profile with the file's action labels when present, 1-based
/// player order either way.
pub fn profile_string(profile: &[usize], labels: Option<&Vec<Vec<String>>>) -> String {
    match labels {
        Some(labels) => profile
            .iter()
            .enumerate()
            .map(|(player, &a)| labels[player][a].clone())
            .collect::<Vec<_>>()
            .join("-"),
        None => profile
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join("-"),
    }
}

pub fn profiles_value(
    game: &Game,
    states: &BTreeSet<usize>,
    labels: Option<&Vec<Vec<String>>>,
) -> Value {
    Value::Array(
        states
            .iter()
            .map(|&s| Value::String(profile_string(&game.space().unflatten(s), labels)))
            .collect(),
    )
}

pub fn quality_value(report: &QualityReport) -> Value {
    json!({
        "concept": report.concept.name(),
        "nominal_welfare_min": format_rational(&report.nominal_welfare_min),
        "nominal_welfare_max": format_rational(&report.nominal_welfare_max),
        "reduced_welfare_min": format_rational(&report.reduced_welfare_min),
        "reduced_welfare_max": format_rational(&report.reduced_welfare_max),
        "q_minus": report.q_minus.as_ref().map(format_rational),
        "q_plus": report.q_plus.as_ref().map(format_rational),
    })
}

/// Equilibrium summary of one game: pure equilibria, recurrent classes of
/// the best-reply chain, and the exact stochastically stable set.
pub fn solution_summary<G: StrategicGame>(
    g: &G,
    base: &Game,
    labels: Option<&Vec<Vec<String>>>,
) -> Value {
    use proxygames_core::dynamics::{
        abr_transition_matrix, recurrent_classes, stochastically_stable_exact,
    };
    let pne = proxygames_core::game::pure_nash_equilibria(g);
    let classes = recurrent_classes(&abr_transition_matrix(g));
    let ss = stochastically_stable_exact(g);
    json!({
        "pne": profiles_value(base, &pne, labels),
        "abr_classes": Value::Array(
            classes
                .classes()
                .iter()
                .map(|class| profiles_value(base, class, labels))
                .collect()
        ),
        "ss": profiles_value(base, &ss.stable_states, labels),
    })
}

pub fn inconsequentiality_matrix(game: &Game) -> Value {
    let n = game.num_players();
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            if i == j {
                row.push(Value::Null);
            } else {
                let eps = inconsequentiality(game, i, j).expect("distinct players");
                row.push(Value::String(format_rational(&eps)));
            }
        }
        rows.push(json!({
            // 1-based labels: entry [j][i] answers how consequential player
            // j+1 is to player i+1.
            "of_player": j + 1,
            "to_players": Value::Array(row),
        }));
    }
    Value::Array(rows)
}

/// Flatten a JSON report into `path,value` CSV rows (deterministic order).
pub fn json_to_csv(value: &Value) -> String {
    fn escape(field: &str) -> String {
        if field.contains(',') || field.contains('"') || field.contains('\n') {
            format!("\"{}\"", field.replace('"', "\"\""))
        } else {
            field.to_string()
        }
    }
    fn walk(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
        match value {
            Value::Object(map) => {
                for (key, child) in map {
                    let next = if prefix.is_empty() {
                        key.clone()
                    } else {
                        format!("{prefix}.{key}")
                    };
                    walk(&next, child, rows);
                }
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), child, rows);
                }
            }
            Value::Null => rows.push((prefix.to_string(), String::new())),
            Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
            Value::Number(n) => rows.push((prefix.to_string(), n.to_string())),
            Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    let mut out = String::from("path,value\n");
    for (path, val) in rows {
        out.push_str(&format!("{},{}\n", escape(&path), escape(&val)));
    }
    out
}

